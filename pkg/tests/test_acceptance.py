"""The acceptance criteria, one test each, timed against their budgets.

A PASS/FAIL line per criterion is printed in the pytest terminal summary.
"""
import contextlib
import itertools
import math
import random
import subprocess
import sys
import time
from pathlib import Path

import quasiset as q
from conftest import ACCEPTANCE
from naive import (
    cartesian,
    from_naive,
    hereditary_base,
    kpair,
    labeled_placements,
    powerset,
    to_naive,
    two_box_splits,
)
from quasiset import EMPTY, QSet, Universe, m, pure, qset, retag, stat
from quasiset.lang import parse, print_expr
from quasiset.sampling import random_qset, random_subset

GOLDEN = Path(__file__).parent / "golden" / "stats_mb_2_3.txt"
ZERO, ONE = EMPTY, qset(EMPTY)
TWO = qset(ZERO, ONE)


@contextlib.contextmanager
def criterion(num, title, limit=None):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        secs = time.perf_counter() - start
        if limit is not None and secs > limit:
            ok = False
        ACCEPTANCE[num] = (title, ok, secs, limit)
        print(f"{'PASS' if ok else 'FAIL'}  #{num} {title} [{secs:.2f}s]")
    assert limit is None or secs <= limit, f"took {secs:.2f}s, budget {limit}s"


def test_01_two_boxes_three_particles():
    with criterion(1, "MB(2,3) = 1+3+3+1 = 8, BE(2,3) = 4", limit=1):
        mb = stat.mb_report(2, 3)
        assert mb.total == 8
        assert [w for _, w in mb.per_occupancy] == [1, 3, 3, 1]
        assert [v.counts for v, _ in mb.per_occupancy] == [(0, 3), (1, 2), (2, 1), (3, 0)]
        f = math.factorial
        parcels = [f(3) // (f(a) * f(b)) for a, b in [(0, 3), (1, 2), (2, 1), (3, 0)]]
        assert parcels == [w for _, w in mb.per_occupancy]
        assert stat.be_report(2, 3).total == 4


def test_02_power_total():
    with criterion(2, "power qset total = 2^qc on 200 random qsets", limit=10):
        rng = random.Random(2)
        seen_nested = seen_atoms = seen_matoms = False
        for _ in range(200):
            x = random_qset(rng, 12)
            assert len(x) <= 12
            assert q.power_total(x) == 2 ** q.quasi_cardinal(x)
            seen_nested |= any(isinstance(o.descriptor, QSet) for o in x)
            seen_atoms |= any(o.view.kind == "M" for o in x)
            seen_matoms |= any(o.is_matom for o in x)
        assert seen_nested and seen_atoms and seen_matoms


def test_03_leibniz_and_placement_oracle():
    with criterion(3, "Leibniz n<=4, N<=8; placement oracle n<=3, N<=6", limit=30):
        for n in range(1, 5):
            for N in range(0, 9):
                weights = [stat.multinomial_weight(v) for v in stat.enumerate_occupancies(n, N)]
                assert sum(weights) == n**N
        for n in range(1, 4):
            for N in range(0, 7):
                oracle = labeled_placements(n, N)
                assert sum(oracle.values()) == n**N
                got = {v.counts: w for v, w in stat.mb_report(n, N).per_occupancy}
                assert got == dict(oracle)


def test_04_quasi_function_counts():
    with criterion(4, "2 quasi-functions from a pure qc-3 qset; 2^k from classical k"):
        fs = q.enumerate_qfunctions(pure("s", 3), TWO)
        assert len(fs) == 2
        assert all(q.is_quasi_function(f) for f in fs)
        labels = [q.M(c) for c in "abcdef"]
        for k in range(0, 7):
            dom = qset(*labels[:k])
            fs = q.enumerate_qfunctions(dom, TWO)
            assert len(fs) == 2**k
            # as classical functions they are pairwise distinct
            assert len({f.graph for f in fs}) == 2**k


def test_05_permutations_unobservable():
    with criterion(5, "500 swaps keep x up to indistinguishability; relabeling is invisible", limit=10):
        rng = random.Random(5)
        done = 0
        while done < 500:
            x = random_qset(rng, 10)
            atoms = [o for o in x if o.is_matom]
            if not atoms:
                continue
            z = rng.choice(atoms)
            w = m(z.descriptor, 1000 + rng.randrange(10**6))
            y = q.swap_indistinguishable(x, z, w)
            assert q.indistinguishable(y, x)
            assert q.quasi_cardinal(y) == q.quasi_cardinal(x)
            done += 1
        for _ in range(200):
            x = random_qset(rng, 8)
            y = random_subset(rng, x)
            u = Universe.covering(x, y)
            perm = {}
            for s, c in u.species_counts.items():
                tags = list(range(c))
                rng.shuffle(tags)
                perm[s] = tags
            x2, y2 = (retag(v, lambda s, t: perm[s][t]) for v in (x, y))
            for f in (q.union, q.intersection, q.difference, q.product):
                assert q.indistinguishable(f(x, y), f(x2, y2))
            assert q.indistinguishable(q.weak_singleton(x, u), q.weak_singleton(x2, u))
            assert [(e.subset.view, e.multiplicity) for e in q.power_qset(x)] == [
                (e.subset.view, e.multiplicity) for e in q.power_qset(x2)
            ]
            assert q.to_json(x) == q.to_json(x2)
            assert q.to_text(x) == q.to_text(x2)


def test_06_strong_singletons():
    with criterion(6, "strong singletons: qc 1, pairwise indistinguishable, not all identical"):
        rng = random.Random(6)
        for c in range(1, 6):
            u = Universe({"s": c})
            singles = [q.strong_singleton(a, u) for a in u.population("s")]
            singles += [q.strong_singleton(m("s"), u, rng) for _ in range(10)]
            for w in singles:
                assert q.quasi_cardinal(w) == 1
                assert q.subset(w, q.weak_singleton(m("s"), u))
            assert all(q.indistinguishable(a, b) for a, b in itertools.combinations(singles, 2))
        u = Universe({"s": 2})
        a, b = q.strong_singleton(m("s", 0), u), q.strong_singleton(m("s", 1), u)
        assert q.indistinguishable(a, b) and q.extensional_eq(a, b) is False


def test_07_quasi_cardinal_laws():
    with criterion(7, "qc(x-y) = qc(x)-qc(y), additivity, monotonicity, nonempty => qc > 0"):
        rng = random.Random(7)
        for _ in range(200):
            x = random_qset(rng, 12)
            y = random_subset(rng, x)
            assert q.subset(y, x)
            assert q.quasi_cardinal(q.difference(x, y)) == q.quasi_cardinal(x) - q.quasi_cardinal(y)
            d = q.difference(x, y)
            assert q.raw_disjoint(d, y)
            assert q.quasi_cardinal(q.union(d, y)) == q.quasi_cardinal(d) + q.quasi_cardinal(y)
            assert q.quasi_cardinal(y) <= q.quasi_cardinal(x)
            if y != x:
                assert q.quasi_cardinal(y) < q.quasi_cardinal(x)
            if x:
                assert q.quasi_cardinal(x) > 0
            for beta in range(q.quasi_cardinal(x) + 1):
                assert q.power_qset(x, size=beta)


def _classical_universe():
    base = hereditary_base()
    sets = [frozenset(c) for k in range(5) for c in itertools.combinations(base, k)]
    return base, sets


def test_08_classical_fragment_oracle():
    with criterion(8, "classical fragment agrees with a naive set model (card <= 4)"):
        base, sets = _classical_universe()
        u = Universe()
        values = {s: from_naive(s) for s in sets}
        for s, x in values.items():
            assert to_naive(x) == s and x.is_classical
            assert q.quasi_cardinal(x) == len(s)
            entries = q.power_qset(x)
            assert len(entries) == 2 ** len(s)
            assert all(e.multiplicity == 1 for e in entries)
            assert {to_naive(e.subset) for e in entries} == powerset(s)
            tuples = stat.distributions_of_qset(x, 2).tuples
            assert len(tuples) == 2 ** len(s)
            assert {tuple(to_naive(b) for b in t) for t, _ in tuples} == two_box_splits(s)
            big = frozenset().union(*(e for e in s if isinstance(e, frozenset)))
            assert to_naive(q.big_union(x)) == big
            for e in base:
                assert q.member(from_naive(e), x) == (e in s)
        for s, t in itertools.product(sets, repeat=2):
            x, y = values[s], values[t]
            assert to_naive(q.union(x, y)) == s | t
            assert to_naive(q.intersection(x, y)) == s & t
            assert to_naive(q.difference(x, y)) == s - t
            assert q.subset(x, y) == (s <= t)
            assert q.indistinguishable(x, y) == (s == t) == q.extensional_eq(x, y)
        for s, t in itertools.product(sets[:22], repeat=2):
            assert to_naive(q.product(values[s], values[t], u)) == cartesian(s, t)
        for a, b in itertools.product(base, repeat=2):
            assert to_naive(q.ordered_pair(from_naive(a), from_naive(b), u)) == kpair(a, b)


def test_09_weak_extensionality_and_pair_collapse():
    with criterion(9, "weak extensionality suite and pair collapse on 200 instances"):
        rng = random.Random(9)
        assert q.indistinguishable(EMPTY, QSet())
        for _ in range(200):
            x = random_qset(rng, 8)
            shift = rng.randrange(1, 40)
            y = retag(x, lambda s, t: t + shift)
            # Q-similar with equal quasi-cardinal implies indistinguishable
            cls = q.quotient(x)
            for c in cls:
                c2 = retag(c, lambda s, t: t + shift)
                assert q.qsimilar(c, c2) and q.indistinguishable(c, c2)
            # same extension
            assert q.indistinguishable(x, QSet(list(x)))
            # quotients match class for class
            assert q.indistinguishable(x, y)
            # weak singleton biconditional
            counts = {s: rng.randint(1, 4) for s in ("s", "t")}
            u = Universe(counts)
            a = m(rng.choice("st"), 0)
            b = m(rng.choice("st"), 0)
            lhs = q.indistinguishable(a, b) and len(q.weak_singleton(a, u)) == len(q.weak_singleton(b, u))
            assert lhs == q.indistinguishable(q.weak_singleton(a, u), q.weak_singleton(b, u))
            # pair collapse for indistinguishable m-atoms
            sp = rng.choice("st")
            i, j = rng.randrange(counts[sp]), rng.randrange(counts[sp])
            p, p2 = q.ordered_pair(m(sp, i), m(sp, j), u), q.ordered_pair(m(sp, j), m(sp, i), u)
            assert q.extensional_eq(p, p2) is True


def test_10_quantum_statistics():
    with criterion(10, "FD(3,2) = 3, FD(2,3) = 0, BE totals against enumeration"):
        assert stat.fd_report(3, 2).total == 3
        assert stat.fd_report(2, 3).total == 0
        for n in range(1, 5):
            for N in range(0, 9):
                direct = {c for c in itertools.product(range(N + 1), repeat=n) if sum(c) == N}
                be = stat.be_report(n, N)
                assert be.total == math.comb(N + n - 1, n - 1) == len(direct)
                assert {v.counts for v, _ in be.per_occupancy} == direct
                fd_direct = sum(1 for c in direct if max(c, default=0) <= 1)
                assert stat.fd_report(n, N).total == fd_direct


def _random_expression(rng, depth=3):
    from quasiset.lang import OPERATION_NAMES, Call, MAtomLit, MOccLit, Num, QSetLit

    def lit(d):
        elems = []
        for _ in range(rng.randint(0, 3)):
            roll = rng.random()
            if d > 0 and roll < 0.25:
                elems.append(lit(d - 1))
            elif roll < 0.55:
                elems.append(MAtomLit(rng.choice(["a", "b", 'q"x', "é"])))
            else:
                elems.append(MOccLit(rng.choice("stu"), rng.randint(1, 4)))
        return QSetLit(tuple(elems))

    def expr(d):
        roll = rng.random()
        if d == 0 or roll < 0.3:
            return rng.choice([lit(2), Num(rng.randint(0, 9)), MOccLit(rng.choice("st")), MAtomLit("a")])
        args = tuple(expr(d - 1) for _ in range(rng.randint(1, 3)))
        return Call(rng.choice(OPERATION_NAMES), args)

    return expr(depth)


def test_11_cli_golden_and_round_trip():
    with criterion(11, "stats golden output byte-identical; parse/print fixed point on 100 expressions"):
        argv = [sys.executable, "-m", "quasiset", "stats", "--model", "mb", "-n", "2", "-N", "3"]
        runs = [subprocess.run(argv, capture_output=True, check=True).stdout for _ in range(2)]
        assert runs[0] == runs[1]
        assert runs[0] == GOLDEN.read_bytes()
        rng = random.Random(11)
        for _ in range(100):
            e = _random_expression(rng)
            text = print_expr(e)
            assert parse(text) == e
            assert print_expr(parse(text)) == text

