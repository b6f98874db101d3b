from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import UnknownSpecies
from .values import MacroAtom, Occurrence, QSet, Species


@dataclass(frozen=True)
class Universe:
    """A declared finite population.

    Species ``s`` with count ``c`` owns the m-atoms tagged ``0 .. c-1``; this
    population is the scope of weak singletons ``[x]``.
    """

    species_counts: Mapping[Species, int] = field(default_factory=dict)
    m_atoms: frozenset = frozenset()

    def __post_init__(self):
        counts = {}
        for s, c in dict(self.species_counts).items():
            s = Species(s) if isinstance(s, str) else s
            if not isinstance(c, int) or c < 1:
                raise ValueError(f"species {s.id} needs a positive count, got {c!r}")
            counts[s] = c
        object.__setattr__(self, "species_counts", MappingProxyType(dict(sorted(counts.items()))))
        atoms = frozenset(a if isinstance(a, MacroAtom) else MacroAtom(a) for a in self.m_atoms)
        object.__setattr__(self, "m_atoms", atoms)

    def count(self, species: Species | str) -> int:
        species = Species(species) if isinstance(species, str) else species
        try:
            return self.species_counts[species]
        except KeyError:
            raise UnknownSpecies(f"species {species.id!r} is not declared in the universe") from None

    def population(self, species: Species | str) -> tuple[Occurrence, ...]:
        species = Species(species) if isinstance(species, str) else species
        return tuple(Occurrence(species, t) for t in range(self.count(species)))

    def __contains__(self, item) -> bool:
        if isinstance(item, Occurrence) and item.is_matom:
            return item.tag < self.species_counts.get(item.descriptor, 0)
        if isinstance(item, MacroAtom):
            return item in self.m_atoms
        return False

    @classmethod
    def covering(cls, *values, m_atoms: Iterable = ()) -> "Universe":
        """Smallest universe whose populations contain every m-atom in ``values``."""
        top: dict[Species, int] = {}
        atoms = set(m_atoms)

        def walk(x):
            if isinstance(x, QSet):
                for o in x:
                    walk(o)
            elif isinstance(x, Occurrence):
                if x.is_matom:
                    top[x.descriptor] = max(top.get(x.descriptor, 0), x.tag + 1)
                else:
                    walk(x.descriptor)
            elif isinstance(x, MacroAtom):
                atoms.add(x)

        for v in values:
            walk(v)
        return cls(top, frozenset(atoms))

    def merged(self, other: "Universe") -> "Universe":
        counts = dict(other.species_counts)
        counts.update(self.species_counts)
        return Universe(counts, self.m_atoms | other.m_atoms)
