"""Axiom-level operations of quasi-set theory over the finite model.

Conventions:

* membership, ``subset`` and ``union`` work on raw occurrences;
* ``intersection`` and ``difference`` work per ≡-class: they take
  ``min(count_x, count_y)`` occurrences of each class, preferring the
  occurrences the two arguments literally share, so ``(x - y) | y == x``
  whenever ``y`` is a subset of ``x``;
* predicates and class maps handed to :func:`separation` and
  :func:`replacement_image` only ever see :class:`~quasiset.values.View`
  objects, and are called once per ≡-class.
"""
from __future__ import annotations

import functools
import itertools
import math
import random
from dataclasses import dataclass
from typing import Callable, NamedTuple

from .errors import (
    AlreadyMember,
    EmptyCodomain,
    EmptyMember,
    NotAQSet,
    NotDisjoint,
    NotIndistinguishable,
    NotMember,
)
from .universe import Universe
from .values import MacroAtom, Occurrence, QSet, View, as_occurrence, view_of


class _Undefined:
    """Result of ``x =_E y`` when an m-atom is involved; it has no truth value."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Undefined"

    def __bool__(self):
        raise TypeError("extensional identity is not defined for m-atoms")

    def __reduce__(self):
        return (_Undefined, ())


UNDEFINED = _Undefined()


def _value(x):
    if isinstance(x, Occurrence) and not x.is_matom:
        return x.descriptor
    if isinstance(x, (Occurrence, MacroAtom, QSet)):
        return x
    raise TypeError(f"not a quasi-set value: {x!r}")


def _is_matom(x) -> bool:
    return isinstance(x, Occurrence) and x.is_matom


def _require_qset(*xs):
    for x in xs:
        if not isinstance(x, QSet):
            raise NotAQSet(f"expected a qset, got {x!r}")


def _group(x: QSet) -> dict[View, list[Occurrence]]:
    groups: dict[View, list[Occurrence]] = {}
    for o in x:
        groups.setdefault(o.view, []).append(o)
    return groups


# -- predicates ------------------------------------------------------------------


@dataclass(frozen=True)
class Flags:
    m: bool = False
    M: bool = False
    Q: bool = False
    Z: bool = False
    D: bool = False
    E: bool = False
    pure: bool = False

    def names(self) -> list[str]:
        return [k for k in ("m", "M", "Q", "Z", "D", "E", "pure") if getattr(self, k)]


def classify(x) -> Flags:
    x = _value(x)
    if _is_matom(x):
        return Flags(m=True)
    if isinstance(x, MacroAtom):
        return Flags(M=True, D=True)
    z = x.is_classical
    elems = x.occurrences
    pure = bool(elems) and all(o.is_matom for o in elems) and all(
        indistinguishable(a, b) for a, b in itertools.combinations(elems, 2)
    )
    return Flags(
        Q=True,
        Z=z,
        D=z,
        E=all(isinstance(o.descriptor, QSet) for o in elems),
        pure=pure,
    )


def indistinguishable(x, y) -> bool:
    """x ≡ y.

    Atoms compare by species or label.  Two qsets are ≡ when their quotients
    by ≡ match class for class, each matched pair being Q-similar.
    """
    x, y = _value(x), _value(y)
    if _is_matom(x) or _is_matom(y):
        return _is_matom(x) and _is_matom(y) and x.descriptor == y.descriptor
    if isinstance(x, MacroAtom) or isinstance(y, MacroAtom):
        return x == y
    return _qsets_indistinguishable(x, y)


def _qsets_indistinguishable(x: QSet, y: QSet) -> bool:
    if x == y:
        return True
    if len(x) != len(y):
        return False
    return _weak_extensional(x, y)


@functools.lru_cache(maxsize=65536)
def _weak_extensional(x: QSet, y: QSet) -> bool:
    cx, cy = quotient(x), quotient(y)
    return all(any(qsimilar(z, t) for t in cy) for z in cx) and all(
        any(qsimilar(t, z) for z in cx) for t in cy
    )


def quotient(x: QSet) -> list[QSet]:
    """x/≡ as a list of sub-qsets, one per class, in canonical order."""
    _require_qset(x)
    classes: list[list[Occurrence]] = []
    for o in x:
        for c in classes:
            if indistinguishable(c[0], o):
                c.append(o)
                break
        else:
            classes.append([o])
    return [QSet(c) for c in classes]


def similar(x: QSet, y: QSet) -> bool:
    return all(indistinguishable(a, b) for a in x for b in y)


def qsimilar(x: QSet, y: QSet) -> bool:
    return similar(x, y) and len(x) == len(y)


def extensional_eq(x, y):
    """x =_E y, or ``UNDEFINED`` when either side is an m-atom."""
    x, y = _value(x), _value(y)
    if _is_matom(x) or _is_matom(y):
        return UNDEFINED
    if isinstance(x, QSet) and isinstance(y, QSet):
        return x == y
    return isinstance(x, MacroAtom) and x == y


def quasi_cardinal(x) -> int:
    x = _value(x)
    return len(x) if isinstance(x, QSet) else 0


def member(a, x: QSet) -> bool:
    _require_qset(x)
    return a in x


def subset(x: QSet, y: QSet) -> bool:
    _require_qset(x, y)
    return all(o in y for o in x)


# -- boolean operations ---------------------------------------------------------


def union(x: QSet, y: QSet) -> QSet:
    _require_qset(x, y)
    return QSet(x.occurrences + y.occurrences)


def big_union(x: QSet) -> QSet:
    """The union of the members of ``x``; atoms contribute nothing."""
    _require_qset(x)
    occs = []
    for o in x:
        if isinstance(o.descriptor, QSet):
            occs.extend(o.descriptor.occurrences)
    return QSet(occs)


def _split(x: QSet, y: QSet) -> tuple[list[Occurrence], list[Occurrence]]:
    """Partition x into (shared with y per class, rest)."""
    gy = _group(y)
    taken, kept = [], []
    for view, occs in _group(x).items():
        c = min(len(gy.get(view, ())), len(occs))
        ordered = [o for o in occs if o in y] + [o for o in occs if o not in y]
        chosen = set(ordered[:c])
        for o in occs:
            (taken if o in chosen else kept).append(o)
    return taken, kept


def intersection(x: QSet, y: QSet) -> QSet:
    _require_qset(x, y)
    return QSet(_split(x, y)[0])


def difference(x: QSet, y: QSet) -> QSet:
    _require_qset(x, y)
    return QSet(_split(x, y)[1])


def raw_disjoint(x: QSet, y: QSet) -> bool:
    return not any(o in y for o in x)


# -- universe-scoped constructions ----------------------------------------------


def weak_singleton(x, universe: Universe) -> QSet:
    """[x]: everything in scope indistinguishable from x.

    For an m-atom that is the whole population of its species; for M-atoms and
    qsets it is ``{x}``.
    """
    x = _value(x)
    if _is_matom(x):
        return QSet(universe.population(x.descriptor))
    return QSet([x])


def weak_pair(x, y, universe: Universe) -> QSet:
    return union(weak_singleton(x, universe), weak_singleton(y, universe))


def ordered_pair(x, y, universe: Universe) -> QSet:
    """The generalized pair [[x], [x, y]]."""
    return weak_pair(weak_singleton(x, universe), weak_pair(x, y, universe), universe)


def strong_singleton(x, universe: Universe, rng: random.Random | None = None) -> QSet:
    """A sub-qset of [x] with quasi-cardinal 1.

    Without ``rng`` the element is ``x`` itself when it lies in scope (as in
    u ∈ u*), else the first member of ``[x]``.  With ``rng`` the member of
    ``[x]`` is drawn at random.
    """
    x = _value(x)
    pool = weak_singleton(x, universe).occurrences
    if rng is not None:
        return QSet([rng.choice(pool)])
    occ = as_occurrence(x)
    return QSet([occ if occ in pool else pool[0]])


def swap_indistinguishable(x: QSet, z_in, w_out) -> QSet:
    """(x - z') ∪ w' with z', w' the strong singletons {z_in}, {w_out}."""
    _require_qset(x)
    z, w = as_occurrence(z_in), as_occurrence(w_out)
    if z not in x:
        raise NotMember(f"{z!r} is not an element of the qset")
    if not indistinguishable(z, w):
        raise NotIndistinguishable(f"{w!r} is not indistinguishable from {z!r}")
    if w in x:
        raise AlreadyMember(f"{w!r} already belongs to the qset")
    return union(difference(x, QSet([z])), QSet([w]))


# -- separation, power, replacement ----------------------------------------------


def _per_class(fn: Callable[[View], object]) -> Callable[[View], object]:
    memo: dict[View, object] = {}

    def call(v: View):
        if v not in memo:
            memo[v] = fn(v)
        return memo[v]

    return call


def separation(x: QSet, pred: Callable[[View], bool]) -> QSet:
    """[t ∈ x : pred(t)], with ``pred`` seeing only public views."""
    _require_qset(x)
    pred = _per_class(pred)
    return QSet(o for o in x if pred(o.view))


class PowerEntry(NamedTuple):
    subset: QSet
    multiplicity: int


def power_qset(x: QSet, size: int | None = None) -> list[PowerEntry]:
    """Sub-qsets of ``x`` up to ≡, each weighted by how many it stands for.

    A class of ``c`` indistinguishable occurrences contributes C(c, k) when
    ``k`` of them are taken, so the weights add up to 2**qc(x).  ``size``
    keeps only sub-qsets of that quasi-cardinal.
    """
    _require_qset(x)
    groups = list(_group(x).values())
    out = []
    for ks in itertools.product(*(range(len(g) + 1) for g in groups)):
        if size is not None and sum(ks) != size:
            continue
        sub = QSet(o for g, k in zip(groups, ks) for o in g[:k])
        weight = math.prod(math.comb(len(g), k) for g, k in zip(groups, ks))
        out.append(PowerEntry(sub, weight))
    out.sort(key=lambda e: (len(e.subset), e.subset.view))
    return out


def power_total(x: QSet) -> int:
    return sum(e.multiplicity for e in power_qset(x))


def multiset(values) -> QSet:
    """Collect values as distinct occurrences, one per input.

    Classical duplicates merge; repeated non-classical values are kept apart
    by bumping their tags.
    """
    seen: set[Occurrence] = set()
    occs = []
    for v in values:
        o = as_occurrence(v)
        if isinstance(o.descriptor, MacroAtom) or (
            isinstance(o.descriptor, QSet) and o.descriptor.is_classical
        ):
            occs.append(o)
            continue
        while o in seen:
            o = Occurrence(o.descriptor, o.tag + 1)
        seen.add(o)
        occs.append(o)
    return QSet(occs)


def replacement_image(x: QSet, fn: Callable[[View], object]) -> QSet:
    """The qset of images ``fn(t)``, one per occurrence ``t`` of ``x``."""
    _require_qset(x)
    fn = _per_class(fn)
    return multiset(fn(o.view) for o in x)


def product(x: QSet, y: QSet, universe: Universe | None = None) -> QSet:
    """x × y: one generalized pair per pair of occurrences."""
    _require_qset(x, y)
    universe = _scope(universe, x, y)
    return multiset(ordered_pair(a, b, universe) for a in x for b in y)


def _scope(universe: Universe | None, *values) -> Universe:
    inferred = Universe.covering(*values)
    return inferred if universe is None else universe.merged(inferred)


# -- choice -------------------------------------------------------------------------


def choice_qset(family: QSet, universe: Universe | None = None) -> QSet:
    """One representative of every ≡-class of every member of ``family``.

    For members whose elements are mutually ≡ (pure qsets, singletons) this is
    one element per member.
    """
    _require_qset(family)
    members = []
    for o in family:
        if not isinstance(o.descriptor, QSet):
            raise NotAQSet("every member of a choice family must be a qset")
        if not o.descriptor:
            raise EmptyMember("choice family has an empty member")
        members.append(o.descriptor)
    for a, b in itertools.combinations(members, 2):
        if not raw_disjoint(a, b):
            raise NotDisjoint("choice family members overlap")
    picks = []
    for y in members:
        picks.extend(occs[0] for occs in _group(y).values())
    return QSet(picks)


def satisfies_choice(family: QSet, u: QSet, universe: Universe | None = None) -> bool:
    """Check the choice condition directly: for every member y and v ∈ y some
    w ⊆ [v] with qc(w) = 1 has w ∩ y ≡ w ∩ u."""
    universe = _scope(universe, family, u)
    for o in family:
        y = o.descriptor
        for v in y:
            pool = weak_singleton(v, universe).occurrences
            candidates = [QSet([t]) for t in pool]
            if not any(
                indistinguishable(intersection(w, y), intersection(w, u)) for w in candidates
            ):
                return False
    return True


# -- quasi-functions ---------------------------------------------------------------


@dataclass(frozen=True)
class QuasiFunction:
    """A ≡-respecting relation from ``domain`` to ``codomain``.

    ``pairs`` lists one (argument, value) occurrence pair per domain
    occurrence; ``graph`` is the qset of the corresponding generalized pairs.
    """

    domain: QSet
    codomain: QSet
    pairs: tuple
    graph: QSet

    def value_class(self, arg) -> View:
        v = view_of(arg)
        for u, w in self.pairs:
            if u.view == v:
                return w.view
        raise NotMember(f"{arg!r} is outside the domain")

    def range(self) -> QSet:
        hit = {w.view for _, w in self.pairs}
        return separation(self.codomain, lambda t: t in hit)


def enumerate_qfunctions(
    dom: QSet, cod: QSet, universe: Universe | None = None
) -> list[QuasiFunction]:
    """All quasi-functions dom → cod: one codomain class per domain class."""
    _require_qset(dom, cod)
    if dom and not cod:
        raise EmptyCodomain("no quasi-function into the empty qset")
    universe = _scope(universe, dom, cod)
    dclasses = list(_group(dom).values())
    creps = [occs[0] for occs in _group(cod).values()]
    out = []
    for choice in itertools.product(range(len(creps)), repeat=len(dclasses)):
        pairs = tuple((u, creps[j]) for occs, j in zip(dclasses, choice) for u in occs)
        graph = QSet(ordered_pair(u, v, universe) for u, v in pairs)
        out.append(QuasiFunction(dom, cod, pairs, graph))
    return out


def is_quasi_function(f: QuasiFunction) -> bool:
    """Totality on the domain and ≡-respect, checked on the pair list."""
    covered = all(any(u == d for u, _ in f.pairs) for d in f.domain)
    inside = all(u in f.domain and v in f.codomain for u, v in f.pairs)
    respects = all(
        indistinguishable(v, v2)
        for (u, v), (u2, v2) in itertools.product(f.pairs, repeat=2)
        if indistinguishable(u, u2)
    )
    return covered and inside and respects


@dataclass(frozen=True)
class QFunctionFlags:
    q_injection: bool
    q_surjection: bool
    q_bijection: bool


def classify_qfunction(f: QuasiFunction) -> QFunctionFlags:
    dom_qc, rng_qc = len(f.domain), len(f.range())
    injective = all(
        indistinguishable(u, u2)
        for (u, v), (u2, v2) in itertools.product(f.pairs, repeat=2)
        if indistinguishable(v, v2)
    )
    surjective = all(any(indistinguishable(v, w) for _, w in f.pairs) for v in f.codomain)
    inj = injective and dom_qc <= rng_qc
    sur = surjective and dom_qc >= rng_qc
    return QFunctionFlags(inj, sur, inj and sur)
