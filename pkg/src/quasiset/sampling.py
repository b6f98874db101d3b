"""Seeded random generators for quasi-sets, used by the self-test and tests."""
from __future__ import annotations

import random

from .values import MacroAtom, QSet, Species, canonicalize

SPECIES = ("s", "t", "u")
LABELS = ("a", "b", "c", "d", "e")


def random_raw(rng: random.Random, size: int, depth: int = 2, classical: bool = False,
               species=SPECIES, labels=LABELS) -> list:
    out = []
    for _ in range(size):
        roll = rng.random()
        if depth > 0 and roll < 0.2:
            out.append(random_raw(rng, rng.randint(0, 3), depth - 1, classical, species, labels))
        elif classical or roll < 0.45:
            out.append(MacroAtom(rng.choice(labels)))
        else:
            out.append(Species(rng.choice(species)))
    return out


def random_qset(rng: random.Random, max_qc: int = 12, depth: int = 2, **kw) -> QSet:
    """A mixed qset with at most ``max_qc`` elements (M-atom repeats merge)."""
    return canonicalize(random_raw(rng, rng.randint(0, max_qc), depth, **kw))


def random_classical(rng: random.Random, max_card: int = 4, depth: int = 2) -> QSet:
    return canonicalize(random_raw(rng, rng.randint(0, max_card), depth, classical=True))


def random_subset(rng: random.Random, x: QSet) -> QSet:
    return QSet(o for o in x if rng.random() < 0.5)
