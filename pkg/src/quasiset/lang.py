"""A small expression language over quasi-sets.

    expr  := qset | call | atom | NAT
    call  := IDENT '(' [expr {',' expr}] ')'
    qset  := '[' [elem {',' elem}] ']'
    elem  := matom | mocc | qset
    atom  := matom | 'm' IDENT
    matom := 'M' STRING
    mocc  := 'm' IDENT [':' NAT]

Every m-atom written in an expression is a distinct occurrence: the evaluator
hands out tags per species in reading order.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Callable, Union

from . import axioms as ax
from . import stat
from .errors import NotIndistinguishable, QSetError
from .universe import Universe
from .values import (
    MacroAtom, Occurrence, QSet, Species, View, as_occurrence, from_view, m, to_text, view_of,
)


class ParseError(QSetError):
    def __init__(self, message: str, line: int, column: int, expected=()):
        self.line, self.column = line, column
        self.expected = tuple(sorted(expected))
        hint = f" (expected {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"line {line}, column {column}: {message}{hint}")


class EvalError(QSetError):
    def __init__(self, operation: str, cause: Exception):
        self.operation, self.cause = operation, cause
        super().__init__(f"{operation}: {type(cause).__name__}: {cause}")


# -- syntax tree ---------------------------------------------------------------


@dataclass(frozen=True)
class MAtomLit:
    label: str


@dataclass(frozen=True)
class MOccLit:
    species: str
    count: int = 1


@dataclass(frozen=True)
class QSetLit:
    elems: tuple = ()


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple = ()


Expression = Union[MAtomLit, MOccLit, QSetLit, Num, Call]


# -- lexer ----------------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<STRING>"(?:[^"\\\n]|\\.)*")
  | (?P<NAT>[0-9]+)
  | (?P<IDENT>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[\[\](),:])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = mt.lastgroup
        chunk = mt.group()
        if kind != "ws":
            tokens.append(Token(chunk if kind == "punct" else kind, chunk, line, col))
        for ch in chunk:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        pos = mt.end()
    tokens.append(Token("EOF", "", line, col))
    return tokens


# -- parser -----------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def fail(self, expected, message=None):
        t = self.tok
        got = "end of input" if t.kind == "EOF" else repr(t.text)
        raise ParseError(message or f"unexpected {got}", t.line, t.column, expected)

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            self.fail({kind})
        t = self.tok
        self.i += 1
        return t

    def parse(self) -> Expression:
        e = self.expr()
        if self.tok.kind != "EOF":
            self.fail({"EOF"})
        return e

    def expr(self) -> Expression:
        t = self.tok
        if t.kind == "[":
            return self.qset()
        if t.kind == "NAT":
            self.i += 1
            return Num(int(t.text))
        if t.kind == "IDENT":
            nxt = self.peek()
            if nxt.kind == "(":
                return self.call()
            if t.text == "M" and nxt.kind == "STRING":
                return self.matom()
            if t.text == "m" and nxt.kind == "IDENT":
                self.i += 2
                return MOccLit(nxt.text)
            self.i += 1
            self.fail({"("})
        self.fail({"[", "IDENT", "NAT"})

    def call(self) -> Call:
        name = self.expect("IDENT").text
        self.expect("(")
        args = []
        if self.tok.kind != ")":
            args.append(self.expr())
            while self.tok.kind == ",":
                self.i += 1
                args.append(self.expr())
        if self.tok.kind != ")":
            self.fail({",", ")"})
        self.i += 1
        return Call(name, tuple(args))

    def qset(self) -> QSetLit:
        self.expect("[")
        elems = []
        if self.tok.kind != "]":
            elems.append(self.elem())
            while self.tok.kind == ",":
                self.i += 1
                elems.append(self.elem())
        if self.tok.kind != "]":
            self.fail({",", "]"})
        self.i += 1
        return QSetLit(tuple(elems))

    def matom(self) -> MAtomLit:
        self.expect("IDENT")
        s = self.expect("STRING")
        try:
            return MAtomLit(json.loads(s.text))
        except json.JSONDecodeError:
            raise ParseError("bad string escape", s.line, s.column) from None

    def elem(self):
        t = self.tok
        if t.kind == "[":
            return self.qset()
        if t.kind == "IDENT" and t.text == "M":
            return self.matom()
        if t.kind == "IDENT" and t.text == "m":
            self.i += 1
            species = self.expect("IDENT").text
            count = 1
            if self.tok.kind == ":":
                self.i += 1
                count = int(self.expect("NAT").text)
                if count < 1:
                    self.i -= 1
                    self.fail({"NAT"}, "occurrence count must be at least 1")
            return MOccLit(species, count)
        self.fail({"[", "M", "m"})


def parse(text: str) -> Expression:
    return _Parser(text).parse()


def print_expr(e: Expression) -> str:
    """Canonical text; ``parse(print_expr(e)) == e``."""
    if isinstance(e, MAtomLit):
        return "M" + json.dumps(e.label)
    if isinstance(e, MOccLit):
        return f"m {e.species}" if e.count == 1 else f"m {e.species}:{e.count}"
    if isinstance(e, QSetLit):
        return "[" + ", ".join(print_expr(x) for x in e.elems) + "]"
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Call):
        return f"{e.name}(" + ", ".join(print_expr(a) for a in e.args) + ")"
    raise TypeError(f"not an expression: {e!r}")


# -- universe files ------------------------------------------------------------------

_UNIVERSE_LINE = re.compile(
    r'^\s*(?:species\s+(?P<species>[A-Za-z_][A-Za-z0-9_]*)\s+(?P<count>[0-9]+)'
    r'|atom\s+(?P<atom>"(?:[^"\\]|\\.)*"))\s*(?:#.*)?$'
)


def parse_universe(text: str) -> Universe:
    """Read ``species s 3`` / ``atom "a"`` lines; ``#`` starts a comment."""
    counts: dict[Species, int] = {}
    atoms: set[MacroAtom] = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        mt = _UNIVERSE_LINE.match(line)
        if mt is None:
            raise ParseError("expected `species NAME COUNT` or `atom \"LABEL\"`", lineno, 1)
        if mt.group("species"):
            s, c = Species(mt.group("species")), int(mt.group("count"))
            if s in counts:
                raise ParseError(f"species {s.id} declared twice", lineno, 1)
            if c < 1:
                raise ParseError("species count must be at least 1", lineno, mt.start("count") + 1)
            counts[s] = c
        else:
            a = MacroAtom(json.loads(mt.group("atom")))
            if a in atoms:
                raise ParseError(f"atom {a.label!r} declared twice", lineno, 1)
            atoms.add(a)
    return Universe(counts, frozenset(atoms))


def universe_text(u: Universe) -> str:
    lines = [f"species {s.id} {c}" for s, c in u.species_counts.items()]
    lines += [f"atom {json.dumps(a.label)}" for a in sorted(u.m_atoms)]
    return "\n".join(lines) + ("\n" if lines else "")


# -- evaluation ------------------------------------------------------------------------


@dataclass(frozen=True)
class Operation:
    name: str
    arity: tuple[int, ...]
    fn: Callable
    summary: str


def _qset_of_classes(x: QSet) -> QSet:
    return ax.multiset(ax.quotient(x))


def _swap(x: QSet, w):
    w = as_occurrence(w)
    z = next((o for o in x if ax.indistinguishable(o, w)), None)
    if z is None:
        raise NotIndistinguishable("no element of the qset is indistinguishable from the replacement")
    return ax.swap_indistinguishable(x, z, w)


def _strong_image(v: View):
    return QSet([from_view(v)])


def _build_ops(u: Universe) -> dict[str, Operation]:
    table = [
        Operation("qc", (1,), ax.quasi_cardinal, "quasi-cardinal"),
        Operation("equiv", (2,), ax.indistinguishable, "indistinguishability x ≡ y"),
        Operation("eq", (2,), ax.extensional_eq, "extensional identity (undefined on m-atoms)"),
        Operation("member", (2,), ax.member, "raw membership a ∈ x"),
        Operation("subset", (2,), ax.subset, "x ⊆ y"),
        Operation("classify", (1,), ax.classify, "flags m M Q Z D E pure"),
        Operation("union", (2,), ax.union, "x ∪ y"),
        Operation("inter", (2,), ax.intersection, "x ∩ y (per ≡-class)"),
        Operation("intersection", (2,), ax.intersection, "alias of inter"),
        Operation("diff", (2,), ax.difference, "x − y (per ≡-class)"),
        Operation("difference", (2,), ax.difference, "alias of diff"),
        Operation("bigunion", (1,), ax.big_union, "union of the members"),
        Operation("quotient", (1,), _qset_of_classes, "x/≡ as a qset of classes"),
        Operation("weak", (1,), lambda x: ax.weak_singleton(x, u), "weak singleton [x]"),
        Operation("pair", (2,), lambda x, y: ax.weak_pair(x, y, u), "weak pair [x, y]"),
        Operation("opair", (2,), lambda x, y: ax.ordered_pair(x, y, u), "generalized pair [[x],[x,y]]"),
        Operation("product", (2,), lambda x, y: ax.product(x, y, u), "x × y"),
        Operation("strong", (1,), lambda x: ax.strong_singleton(x, u), "a strong singleton of x"),
        Operation("swap", (2,), _swap, "exchange an element for the indistinguishable w"),
        Operation("sep", (2,), lambda x, p: ax.separation(x, lambda v: v == view_of(p)),
                  "elements indistinguishable from the pattern"),
        Operation("matoms", (1,), lambda x: ax.separation(x, lambda v: v.is_matom), "m-atom part"),
        Operation("classical", (1,), lambda x: ax.separation(x, lambda v: v.classical),
                  "elements that are Dinge"),
        Operation("image", (2,), lambda x, t: ax.replacement_image(x, lambda v: t),
                  "replacement by a constant"),
        Operation("singletons", (1,), lambda x: ax.replacement_image(x, _strong_image),
                  "replacement by strong singletons"),
        Operation("power", (1, 2), ax.power_qset, "weighted power qset, optionally of one size"),
        Operation("powertotal", (1,), ax.power_total, "sum of power multiplicities"),
        Operation("qfuncs", (2,), lambda d, c: ax.enumerate_qfunctions(d, c, u), "all quasi-functions"),
        Operation("nqfuncs", (2,), lambda d, c: len(ax.enumerate_qfunctions(d, c, u)),
                  "number of quasi-functions"),
        Operation("choice", (1,), lambda f: ax.choice_qset(f, u), "a choice qset"),
        Operation("mb", (2,), stat.mb_report, "Maxwell-Boltzmann report"),
        Operation("be", (2,), stat.be_report, "Bose-Einstein report"),
        Operation("fd", (2,), stat.fd_report, "Fermi-Dirac report"),
        Operation("mostprobable", (2,), stat.most_probable, "most probable occupancies"),
        Operation("dist", (2,), stat.distributions_of_qset, "distributions of a qset over n boxes"),
    ]
    return {op.name: op for op in table}


OPERATION_NAMES = tuple(sorted(_build_ops(Universe()).keys()))


class Evaluator:
    """Evaluates expressions against a universe.

    Without an explicit universe, the scope is inferred from the literals of
    the expression being evaluated: every species gets exactly the m-atoms
    the expression mentions.
    """

    def __init__(self, universe: Universe | None = None):
        self.universe = universe

    def evaluate(self, e: Expression):
        tags: dict[str, int] = {}
        literals: dict[int, object] = {}
        self._allocate(e, tags, literals)
        u = self.universe
        if u is None:
            u = Universe({Species(s): n for s, n in tags.items() if n > 0})
        ops = _build_ops(u)
        return self._eval(e, literals, ops)

    def _allocate(self, e, tags, literals):
        if isinstance(e, Call):
            for a in e.args:
                self._allocate(a, tags, literals)
        elif isinstance(e, (QSetLit, MOccLit, MAtomLit)):
            literals[id(e)] = self._literal(e, tags)

    def _literal(self, e, tags):
        if isinstance(e, MAtomLit):
            return MacroAtom(e.label)
        if isinstance(e, MOccLit):
            return self._fresh(e.species, tags)
        items = []
        for x in e.elems:
            if isinstance(x, MOccLit):
                items.extend(self._fresh(x.species, tags) for _ in range(x.count))
            else:
                items.append(self._literal(x, tags))
        return QSet(items)

    @staticmethod
    def _fresh(species: str, tags) -> Occurrence:
        t = tags.get(species, 0)
        tags[species] = t + 1
        return m(species, t)

    def _eval(self, e, literals, ops):
        if isinstance(e, Num):
            return e.value
        if not isinstance(e, Call):
            return literals[id(e)]
        op = ops.get(e.name)
        if op is None:
            raise EvalError(e.name, LookupError(f"unknown operation {e.name!r}"))
        if len(e.args) not in op.arity:
            want = " or ".join(map(str, op.arity))
            raise EvalError(e.name, TypeError(f"expects {want} argument(s), got {len(e.args)}"))
        args = [self._eval(a, literals, ops) for a in e.args]
        try:
            return op.fn(*args)
        except QSetError as exc:
            raise EvalError(e.name, exc) from exc
        except (TypeError, ValueError, AttributeError) as exc:
            raise EvalError(e.name, exc) from exc


def evaluate(text_or_expr, universe: Universe | None = None):
    e = parse(text_or_expr) if isinstance(text_or_expr, str) else text_or_expr
    return Evaluator(universe).evaluate(e)


__all__ = [
    "Call", "EvalError", "Evaluator", "Expression", "MAtomLit", "MOccLit", "Num",
    "OPERATION_NAMES", "ParseError", "QSetLit", "evaluate", "parse", "parse_universe",
    "print_expr", "to_text", "tokenize", "universe_text",
]
