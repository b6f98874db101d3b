"""Occupancy-vector combinatorics: Maxwell-Boltzmann, Bose-Einstein and
Fermi-Dirac counts of N particles over n labeled boxes.

All weights are exact Python integers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .axioms import difference, power_qset
from .errors import InvalidShape, NotAQSet
from .values import QSet

MODELS = ("MB", "BE", "FD")


@dataclass(frozen=True, order=True)
class OccupancyVector:
    counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(self.counts)
        if not counts:
            raise InvalidShape("an occupancy vector needs at least one box")
        if any(not isinstance(c, int) or c < 0 for c in counts):
            raise InvalidShape(f"occupancies must be non-negative integers: {counts}")
        object.__setattr__(self, "counts", counts)

    @property
    def n(self) -> int:
        return len(self.counts)

    @property
    def N(self) -> int:
        return sum(self.counts)

    def __iter__(self):
        return iter(self.counts)

    def __repr__(self):
        return f"OccupancyVector{self.counts}"


def _check_shape(n: int, N: int):
    if not isinstance(n, int) or n < 1:
        raise InvalidShape(f"need at least one box, got n={n!r}")
    if not isinstance(N, int) or N < 0:
        raise InvalidShape(f"particle count must be non-negative, got N={N!r}")


def _compositions(n: int, N: int) -> Iterator[tuple[int, ...]]:
    if n == 1:
        yield (N,)
        return
    for first in range(N + 1):
        for rest in _compositions(n - 1, N - first):
            yield (first,) + rest


def enumerate_occupancies(n: int, N: int) -> list[OccupancyVector]:
    """All weak compositions of N into n parts, in lexicographic order."""
    _check_shape(n, N)
    return [OccupancyVector(c) for c in _compositions(n, N)]


def multinomial_weight(v: OccupancyVector) -> int:
    """N! / prod(n_i!), built from binomials to stay exact."""
    weight, placed = 1, 0
    for c in v.counts:
        placed += c
        weight *= math.comb(placed, c)
    return weight


@dataclass
class DistributionReport:
    model: str
    n: int
    N: int
    total: int
    per_occupancy: list[tuple[OccupancyVector, int]]
    most_probable: list[OccupancyVector]
    tuples: list | None = field(default=None, repr=False)

    def probability(self, weight: int) -> Fraction:
        return Fraction(weight, self.total) if self.total else Fraction(0)

    def to_json(self) -> dict:
        doc = {
            "model": self.model,
            "n": self.n,
            "N": self.N,
            "total": str(self.total),
            "occupancies": [
                {
                    "counts": list(v.counts),
                    "weight": str(w),
                    "probability": str(self.probability(w)),
                }
                for v, w in self.per_occupancy
            ],
            "most_probable": [list(v.counts) for v in self.most_probable],
        }
        return doc


def _argmax(rows: list[tuple[OccupancyVector, int]]) -> list[OccupancyVector]:
    best = max((w for _, w in rows), default=0)
    if best == 0:
        return []
    return [v for v, w in rows if w == best]


def mb_report(n: int, N: int) -> DistributionReport:
    rows = [(v, multinomial_weight(v)) for v in enumerate_occupancies(n, N)]
    total = sum(w for _, w in rows)
    if total != n**N:
        raise ArithmeticError(f"multinomial weights sum to {total}, expected {n}**{N}")
    return DistributionReport("MB", n, N, total, rows, _argmax(rows))


def be_report(n: int, N: int) -> DistributionReport:
    """Only distinguishable configurations count: one per occupancy vector."""
    rows = [(v, 1) for v in enumerate_occupancies(n, N)]
    total = len(rows)
    if total != math.comb(N + n - 1, n - 1):
        raise ArithmeticError("occupancy enumeration disagrees with C(N+n-1, n-1)")
    return DistributionReport("BE", n, N, total, rows, _argmax(rows))


def fd_report(n: int, N: int) -> DistributionReport:
    """As BE, but a box holds at most one particle; excluded vectors weigh 0."""
    rows = [(v, int(max(v.counts) <= 1)) for v in enumerate_occupancies(n, N)]
    total = sum(w for _, w in rows)
    if total != math.comb(n, N):
        raise ArithmeticError("exclusion count disagrees with C(n, N)")
    return DistributionReport("FD", n, N, total, rows, _argmax(rows))


REPORTS = {"MB": mb_report, "BE": be_report, "FD": fd_report}


def report(model: str, n: int, N: int) -> DistributionReport:
    try:
        return REPORTS[model.upper()](n, N)
    except KeyError:
        raise ValueError(f"unknown model {model!r}; expected one of {MODELS}") from None


def most_probable(n: int, N: int) -> list[OccupancyVector]:
    """Exact maximizers of the multinomial weight, lexicographic."""
    rows = [(v, multinomial_weight(v)) for v in enumerate_occupancies(n, N)]
    return _argmax(rows)


def distributions_of_qset(x: QSet, n: int) -> DistributionReport:
    """Ordered n-tuples of sub-qsets that partition ``x``.

    Box i takes a sub-qset of whatever boxes 1..i-1 left over; the last box
    takes the rest.  Tuples are listed up to ≡ with their multiplicities,
    which add up to n**qc(x).  ``per_occupancy`` aggregates them by the
    vector of box quasi-cardinals.
    """
    if not isinstance(x, QSet):
        raise NotAQSet(f"expected a qset, got {x!r}")
    _check_shape(n, 0)
    tuples: list[tuple[tuple[QSet, ...], int]] = []

    def fill(rest: QSet, boxes: tuple[QSet, ...], weight: int):
        if len(boxes) == n - 1:
            tuples.append((boxes + (rest,), weight))
            return
        for sub, mult in power_qset(rest):
            fill(difference(rest, sub), boxes + (sub,), weight * mult)

    fill(x, (), 1)
    tuples.sort(key=lambda t: (tuple(len(b) for b in t[0]), tuple(b.view for b in t[0])))
    by_vector: dict[OccupancyVector, int] = {}
    for boxes, w in tuples:
        v = OccupancyVector(tuple(len(b) for b in boxes))
        by_vector[v] = by_vector.get(v, 0) + w
    rows = sorted(by_vector.items())
    total = sum(w for _, w in tuples)
    if total != n ** len(x):
        raise ArithmeticError(f"tuple multiplicities sum to {total}, expected {n}**{len(x)}")
    return DistributionReport("MB", n, len(x), total, rows, _argmax(rows), tuples)
