"""Canonical representation of finite quasi-sets.

Two layers live here.  The *raw* layer gives every element occurrence a
hidden integer ``tag`` so that two indistinguishable m-atoms can still be
two things.  The *public* layer (:class:`View`) forgets the tags; every
observable result is a function of views only.

``QSet.__eq__`` is raw structural equality, i.e. extensional identity.
Indistinguishability lives in :mod:`quasiset.axioms`.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

from .errors import CyclicStructure, NotAQSet

IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True, order=True)
class Species:
    """An indistinguishability kind.  m-atoms of one species are mutually ≡."""

    id: str

    def __post_init__(self):
        if not isinstance(self.id, str) or not IDENT.match(self.id):
            raise ValueError(f"species id must be an identifier, got {self.id!r}")

    def __repr__(self):
        return f"Species({self.id!r})"


@dataclass(frozen=True, order=True)
class MacroAtom:
    """A classical urelement (M-atom); equal labels mean the same atom."""

    label: str

    def __repr__(self):
        return f"M({self.label!r})"


Descriptor = Union[MacroAtom, Species, "QSet"]


@dataclass(frozen=True, order=True)
class View:
    """Witness-free picture of an element.

    ``kind`` is ``"M"``, ``"m"`` or ``"q"``; the derived ordering (M-atoms by
    label, then m-atoms by species, then qsets by their sorted element views)
    is the canonical order.  Two views are equal iff the elements are ≡.
    """

    kind: str
    name: str = ""
    elems: tuple = ()

    @property
    def is_matom(self) -> bool:
        return self.kind == "m"

    @property
    def is_macro(self) -> bool:
        return self.kind == "M"

    @property
    def is_qset(self) -> bool:
        return self.kind == "q"

    @property
    def qc(self) -> int:
        return len(self.elems)

    @property
    def classical(self) -> bool:
        if self.kind == "m":
            return False
        return all(e.classical for e in self.elems)

    def __repr__(self):
        if self.kind == "M":
            return f"View(M {self.name!r})"
        if self.kind == "m":
            return f"View(m {self.name})"
        return f"View({list(self.elems)!r})"


@dataclass(frozen=True)
class Occurrence:
    """One element occurrence: a descriptor plus a hidden tag.

    Standalone m-atoms are occurrences whose descriptor is a :class:`Species`.
    Classical descriptors (M-atoms, sets) always carry tag 0, so duplicates of
    them collapse.
    """

    descriptor: Descriptor
    tag: int = field(default=0, repr=False)

    def __post_init__(self):
        d = self.descriptor
        if not isinstance(d, (MacroAtom, Species, QSet)):
            raise TypeError(f"bad descriptor {d!r}")
        if not isinstance(self.tag, int) or self.tag < 0:
            raise ValueError("tag must be a non-negative int")
        if isinstance(d, MacroAtom) or (isinstance(d, QSet) and d.is_classical):
            object.__setattr__(self, "tag", 0)

    @property
    def is_matom(self) -> bool:
        return isinstance(self.descriptor, Species)

    @property
    def species(self) -> Species | None:
        return self.descriptor if isinstance(self.descriptor, Species) else None

    @property
    def view(self) -> View:
        return view_of(self.descriptor)

    def __repr__(self):
        if self.is_matom:
            return f"m({self.descriptor.id!r})"
        return f"Occurrence({self.descriptor!r})"


Value = Union[MacroAtom, Occurrence, "QSet"]


def view_of(x) -> View:
    if isinstance(x, QSet):
        return x.view
    if isinstance(x, Occurrence):
        return view_of(x.descriptor)
    if isinstance(x, Species):
        return View("m", x.id)
    if isinstance(x, MacroAtom):
        return View("M", x.label)
    raise TypeError(f"not a quasi-set value: {x!r}")


def _order(o: Occurrence):
    # view first; tag and the nested raw key only break ties, so the order is total
    d = o.descriptor
    return (o.view, o.tag, d._key if isinstance(d, QSet) else ())


def as_occurrence(item) -> Occurrence:
    if isinstance(item, Occurrence):
        return item
    if isinstance(item, (MacroAtom, QSet)):
        return Occurrence(item)
    if isinstance(item, Species):
        raise TypeError("bare Species needs a tag; use m(species, tag) or canonicalize()")
    raise TypeError(f"cannot use {item!r} as a qset element")


class QSet:
    """Immutable, canonically ordered finite quasi-set.

    Elements are stored as distinct :class:`Occurrence` objects; ``len`` is
    the quasi-cardinal.  Construction is bottom-up, so cycles cannot exist.
    """

    __slots__ = ("_occ", "_key", "_members", "_view", "_classical", "_hash")

    def __init__(self, items: Iterable = ()):
        members = frozenset(as_occurrence(i) for i in items)
        self._members = members
        keyed = sorted((_order(o), o) for o in members)
        self._occ = tuple(o for _, o in keyed)
        self._key = tuple(k for k, _ in keyed)
        self._view = View("q", "", tuple(o.view for o in self._occ))
        self._classical = all(
            isinstance(o.descriptor, MacroAtom)
            or (isinstance(o.descriptor, QSet) and o.descriptor._classical)
            for o in self._occ
        )
        self._hash = hash(self._occ)

    @property
    def occurrences(self) -> tuple[Occurrence, ...]:
        return self._occ

    @property
    def view(self) -> View:
        return self._view

    @property
    def is_classical(self) -> bool:
        """No m-atom anywhere in the transitive closure."""
        return self._classical

    def elements(self) -> list[Value]:
        """Elements as values: m-atoms stay occurrences, the rest unwrap."""
        return [o if o.is_matom else o.descriptor for o in self._occ]

    def __iter__(self) -> Iterator[Occurrence]:
        return iter(self._occ)

    def __len__(self) -> int:
        return len(self._occ)

    def __bool__(self):
        return bool(self._occ)

    def __contains__(self, item) -> bool:
        if isinstance(item, Occurrence):
            return item in self._members
        if isinstance(item, MacroAtom):
            return Occurrence(item) in self._members
        if isinstance(item, QSet):
            return any(o.descriptor == item for o in self._occ)
        return False

    def __eq__(self, other):
        if not isinstance(other, QSet):
            return NotImplemented
        return self._hash == other._hash and self._occ == other._occ

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"QSet({to_text(self)})"


EMPTY = QSet()


def m(species: Species | str, tag: int = 0) -> Occurrence:
    """An m-atom of ``species`` with hidden tag ``tag``."""
    if isinstance(species, str):
        species = Species(species)
    return Occurrence(species, tag)


def M(label: str) -> MacroAtom:
    return MacroAtom(label)


def qset(*items) -> QSet:
    return QSet(items)


def pure(species: Species | str, count: int, start: int = 0) -> QSet:
    """``count`` m-atoms of one species, tags ``start .. start+count-1``."""
    return QSet(m(species, start + i) for i in range(count))


def canonicalize(raw) -> QSet:
    """Build the canonical qset for a raw nested multiset.

    ``raw`` is a QSet (returned unchanged) or an iterable whose items are
    Occurrences, MacroAtoms, QSets, nested lists/tuples (sub-qsets) or bare
    Species.  Each bare Species is a separate anonymous m-atom and receives a
    fresh tag unused elsewhere in ``raw``.
    """
    if isinstance(raw, QSet):
        return raw
    used: dict[Species, set[int]] = {}
    _collect_tags(raw, used, [])
    fresh = {s: 0 for s in used}

    def next_tag(s: Species) -> int:
        taken = used.setdefault(s, set())
        t = fresh.get(s, 0)
        while t in taken:
            t += 1
        taken.add(t)
        fresh[s] = t + 1
        return t

    def build(node) -> QSet:
        items = []
        for item in node:
            if isinstance(item, (list, tuple)):
                items.append(build(item))
            elif isinstance(item, Species):
                items.append(Occurrence(item, next_tag(item)))
            else:
                items.append(item)
        return QSet(items)

    return build(raw)


def _collect_tags(node, used, stack):
    if not isinstance(node, (list, tuple)):
        raise NotAQSet(f"raw qset must be a list or tuple, got {node!r}")
    if any(node is s for s in stack):
        raise CyclicStructure("raw qset contains itself")
    stack.append(node)
    for item in node:
        if isinstance(item, (list, tuple)):
            _collect_tags(item, used, stack)
        elif isinstance(item, Occurrence):
            _collect_occ(item, used)
        elif isinstance(item, QSet):
            for o in item:
                _collect_occ(o, used)
        elif isinstance(item, Species):
            used.setdefault(item, set())
        elif not isinstance(item, MacroAtom):
            raise TypeError(f"cannot use {item!r} as a qset element")
    stack.pop()


def _collect_occ(o: Occurrence, used):
    if o.is_matom:
        used.setdefault(o.descriptor, set()).add(o.tag)
    elif isinstance(o.descriptor, QSet):
        for inner in o.descriptor:
            _collect_occ(inner, used)


def retag(x, relabel):
    """Apply ``relabel(species, tag) -> tag`` to every m-atom, recursively.

    Nested occurrence tags are left alone.  With a bijective ``relabel`` the
    result is ≡ to the input.
    """
    if isinstance(x, QSet):
        return QSet(retag(o, relabel) for o in x)
    if isinstance(x, Occurrence):
        if x.is_matom:
            return Occurrence(x.descriptor, relabel(x.descriptor, x.tag))
        if isinstance(x.descriptor, QSet):
            return Occurrence(retag(x.descriptor, relabel), x.tag)
    return x


# -- serialization -------------------------------------------------------------


def to_text(x) -> str:
    """Canonical ASCII text; runs of one species print as ``m s:k``."""
    if isinstance(x, MacroAtom):
        return "M" + json.dumps(x.label)
    if isinstance(x, Occurrence):
        if x.is_matom:
            return f"m {x.descriptor.id}"
        return to_text(x.descriptor)
    if isinstance(x, View):
        return _view_text(x)
    if isinstance(x, QSet):
        return _view_text(x.view)
    raise TypeError(f"not a quasi-set value: {x!r}")


def _view_text(v: View) -> str:
    if v.kind == "M":
        return "M" + json.dumps(v.name)
    if v.kind == "m":
        return f"m {v.name}"
    parts = []
    i = 0
    elems = v.elems
    while i < len(elems):
        e = elems[i]
        if e.kind == "m":
            j = i
            while j < len(elems) and elems[j] == e:
                j += 1
            k = j - i
            parts.append(f"m {e.name}" if k == 1 else f"m {e.name}:{k}")
            i = j
        else:
            parts.append(_view_text(e))
            i += 1
    return "[" + ", ".join(parts) + "]"


def to_json(x, debug: bool = False) -> dict:
    """Structured form.  Tags appear only when ``debug`` is set."""
    if isinstance(x, MacroAtom):
        return {"kind": "M", "label": x.label}
    if isinstance(x, Occurrence):
        if x.is_matom:
            out = {"kind": "m", "species": x.descriptor.id}
            if debug:
                out["witness"] = x.tag
            return out
        out = to_json(x.descriptor, debug)
        if debug and isinstance(x.descriptor, QSet):
            out["witness"] = x.tag
        return out
    if isinstance(x, QSet):
        if debug:
            return {"kind": "qset", "elems": [to_json(o, True) for o in x]}
        return _view_json(x.view)
    raise TypeError(f"not a quasi-set value: {x!r}")


def _view_json(v: View) -> dict:
    if v.kind == "M":
        return {"kind": "M", "label": v.name}
    if v.kind == "m":
        return {"kind": "m", "species": v.name}
    return {"kind": "qset", "elems": [_view_json(e) for e in v.elems]}


def from_json(doc) -> Value:
    """Inverse of :func:`to_json`; public documents get fresh sequential tags."""
    if doc.get("kind") == "M":
        return MacroAtom(doc["label"])
    if doc.get("kind") == "m":
        return m(doc["species"], doc.get("witness", 0))

    def raw(d):
        out = []
        for e in d["elems"]:
            k = e.get("kind")
            if k == "M":
                out.append(MacroAtom(e["label"]))
            elif k == "m":
                s = Species(e["species"])
                out.append(Occurrence(s, e["witness"]) if "witness" in e else s)
            elif k == "qset":
                inner = raw(e)
                if "witness" in e:
                    out.append(Occurrence(canonicalize(inner), e["witness"]))
                else:
                    out.append(inner)
            else:
                raise ValueError(f"unknown element kind {k!r}")
        return out

    if doc.get("kind") != "qset":
        raise ValueError(f"unknown value kind {doc.get('kind')!r}")
    return canonicalize(raw(doc))


def from_view(v: View) -> Value:
    """A value whose public view is ``v``; m-atoms get fresh tags."""
    if v.kind == "M":
        return MacroAtom(v.name)
    if v.kind == "m":
        return m(v.name)

    def raw(view):
        return [
            MacroAtom(e.name) if e.kind == "M" else Species(e.name) if e.kind == "m" else raw(e)
            for e in view.elems
        ]

    return canonicalize(raw(v))
