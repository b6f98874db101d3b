"""Invariant suite behind ``quasiset selftest``."""
from __future__ import annotations

import itertools
import math
import random
import sys

from . import axioms as ax
from . import stat
from .sampling import random_classical, random_qset, random_subset
from .universe import Universe
from .values import QSet, m, pure, retag


def _equivalence(rng):
    xs = [random_qset(rng, 6) for _ in range(40)]
    for x, y, z in itertools.product(xs[:12], repeat=3):
        if not ax.indistinguishable(x, x):
            return False
        if ax.indistinguishable(x, y) != ax.indistinguishable(y, x):
            return False
        if ax.indistinguishable(x, y) and ax.indistinguishable(y, z) and not ax.indistinguishable(x, z):
            return False
    return True


def _dinge(rng):
    xs = [random_classical(rng) for _ in range(60)]
    return all(
        ax.indistinguishable(x, y) == ax.extensional_eq(x, y) for x, y in itertools.product(xs, repeat=2)
    )


def _power_total(rng):
    return all(
        ax.power_total(x) == 2 ** len(x) for x in (random_qset(rng, 12) for _ in range(50))
    )


def _qc_laws(rng):
    for _ in range(100):
        x = random_qset(rng, 10)
        y = random_subset(rng, x)
        if len(ax.difference(x, y)) != len(x) - len(y):
            return False
        if not len(y) <= len(x):
            return False
        if y != x and not len(y) < len(x):
            return False
        if x and len(x) == 0:
            return False
        d = ax.difference(x, y)
        if len(ax.union(d, y)) != len(d) + len(y):
            return False
    return True


def _swap(rng):
    for _ in range(100):
        x = random_qset(rng, 8)
        atoms = [o for o in x if o.is_matom]
        if not atoms:
            continue
        z = rng.choice(atoms)
        w = m(z.descriptor, 1000 + rng.randrange(1000))
        y = ax.swap_indistinguishable(x, z, w)
        if not ax.indistinguishable(x, y) or len(x) != len(y):
            return False
    return True


def _witness_opacity(rng):
    for _ in range(60):
        x = random_qset(rng, 8)
        shift = rng.randrange(1, 50)
        y = retag(x, lambda s, t: t + shift)
        if x.view != y.view or not ax.indistinguishable(x, y):
            return False
        if ax.power_total(x) != ax.power_total(y):
            return False
    return True


def _strong_singletons(rng):
    u = Universe({"s": 3})
    a = ax.strong_singleton(m("s", 0), u)
    b = ax.strong_singleton(m("s", 1), u)
    return len(a) == len(b) == 1 and ax.indistinguishable(a, b) and not ax.extensional_eq(a, b)


def _pair_collapse(rng):
    u = Universe({"s": 2, "t": 1})
    x, y = m("s", 0), m("s", 1)
    return ax.extensional_eq(ax.ordered_pair(x, y, u), ax.ordered_pair(y, x, u)) is True


def _leibniz(rng):
    return all(
        sum(stat.multinomial_weight(v) for v in stat.enumerate_occupancies(n, N)) == n**N
        for n in range(1, 5)
        for N in range(0, 11)
    )


def _layers(rng):
    return all(
        stat.distributions_of_qset(pure("s", N), n).total == stat.mb_report(n, N).total
        for n in range(1, 4)
        for N in range(0, 5)
    )


def _quantum_counts(rng):
    return all(
        stat.be_report(n, N).total == math.comb(N + n - 1, n - 1)
        and stat.fd_report(n, N).total == math.comb(n, N)
        for n in range(1, 5)
        for N in range(0, 9)
    )


def _two_qfunctions(rng):
    two = QSet([QSet(), QSet([QSet()])])
    return len(ax.enumerate_qfunctions(pure("s", 3), two)) == 2


CHECKS = [
    ("equivalence relation", _equivalence),
    ("Dinge: indistinguishable iff identical", _dinge),
    ("power total is 2^qc", _power_total),
    ("quasi-cardinal laws", _qc_laws),
    ("permutations are not observable", _swap),
    ("witness opacity", _witness_opacity),
    ("strong singletons", _strong_singletons),
    ("ordered pair collapse", _pair_collapse),
    ("Leibniz identity", _leibniz),
    ("qset distributions match MB", _layers),
    ("BE and FD totals", _quantum_counts),
    ("two quasi-functions into 2", _two_qfunctions),
]


def run(seed: int = 0, out=sys.stdout) -> bool:
    failures = 0
    for name, check in CHECKS:
        try:
            ok = bool(check(random.Random(seed)))
        except Exception as exc:  # reported, not raised
            ok = False
            name = f"{name} ({type(exc).__name__}: {exc})"
        failures += not ok
        print(f"{'PASS' if ok else 'FAIL'}  {name}", file=out)
    print(f"{len(CHECKS) - failures}/{len(CHECKS)} checks passed", file=out)
    return failures == 0
