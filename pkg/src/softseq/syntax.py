"""Formulas, cedents, sequents and structures, with a round-tripping text format.

Formulas are kept in negation normal form: negation occurs on atoms only,
and ``neg(...)`` in the input is normalized away at parse time.  Cedents
are multisets, canonicalized as tuples sorted by a total syntactic order,
which doubles as the memoization key used by the prover.

Grammar (ASCII, fully parenthesized):

    formula   :=  name | ~name | 1 | bot | top
               |  (F * F)   tensor        |  (F | F)   par
               |  (F + F)   soft or       |  (F & F)   soft and
               |  neg(F)
    sequent   :=  formulas? |- formulas?          (comma separated)
    structure :=  (seq SEQUENT) | (const RATIONAL|inf)
               |  (ten S S) | (cot S S) | (padd S S) | (pcoadd S S)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .alethic import Hardness, Value, _nth_root_exact, from_rational, parse_rational

ATOM = "atom"
NEG_ATOM = "natom"
ONE = "one"
BOT = "bot"
TOP = "top"
TENSOR = "tensor"
PAR = "par"
PLOR = "plor"
PLAND = "pland"

_BINARY = (TENSOR, PAR, PLOR, PLAND)
_CONNECTIVE_SYMBOL = {TENSOR: "*", PAR: "|", PLOR: "+", PLAND: "&"}


@dataclass(frozen=True)
class Formula:
    kind: str
    name: str = ""
    left: "Formula | None" = None
    right: "Formula | None" = None

    def __str__(self) -> str:
        return print_formula(self)


def atom(name: str) -> Formula:
    return Formula(ATOM, name)


def neg_atom(name: str) -> Formula:
    return Formula(NEG_ATOM, name)


ONE_F = Formula(ONE)
BOT_F = Formula(BOT)
TOP_F = Formula(TOP)


def tensor_f(left: Formula, right: Formula) -> Formula:
    return Formula(TENSOR, "", left, right)


def par_f(left: Formula, right: Formula) -> Formula:
    return Formula(PAR, "", left, right)


def plor_f(left: Formula, right: Formula) -> Formula:
    return Formula(PLOR, "", left, right)


def pland_f(left: Formula, right: Formula) -> Formula:
    return Formula(PLAND, "", left, right)


_NEGATED_KIND = {
    ATOM: NEG_ATOM,
    NEG_ATOM: ATOM,
    ONE: ONE,
    BOT: TOP,
    TOP: BOT,
    TENSOR: PAR,
    PAR: TENSOR,
    PLOR: PLAND,
    PLAND: PLOR,
}


@lru_cache(maxsize=None)
def negate(f: Formula) -> Formula:
    """De Morgan negation, pushed to atoms; an involution."""
    kind = _NEGATED_KIND[f.kind]
    if f.left is None:
        return Formula(kind, f.name)
    return Formula(kind, "", negate(f.left), negate(f.right))


@lru_cache(maxsize=None)
def connective_count(f: Formula) -> int:
    if f.left is None:
        return 0
    return 1 + connective_count(f.left) + connective_count(f.right)


_KIND_ORDER = {k: i for i, k in enumerate((ONE, BOT, TOP, ATOM, NEG_ATOM) + _BINARY)}


@lru_cache(maxsize=None)
def sort_key(f: Formula) -> tuple:
    """A total syntactic order on formulas; small formulas come first."""
    if f.left is None:
        return (0, _KIND_ORDER[f.kind], f.name)
    return (connective_count(f), _KIND_ORDER[f.kind], sort_key(f.left), sort_key(f.right))


Cedent = tuple[Formula, ...]


def as_cedent(formulas) -> Cedent:
    return tuple(sorted(formulas, key=sort_key))


def cedent_remove(cedent: Cedent, f: Formula) -> Cedent:
    """Remove one occurrence of f (multiset removal)."""
    out = list(cedent)
    out.remove(f)
    return tuple(out)


def cedent_merge(*cedents: Cedent) -> Cedent:
    merged: list[Formula] = []
    for c in cedents:
        merged.extend(c)
    return as_cedent(merged)


@dataclass(frozen=True)
class Sequent:
    ante: Cedent
    cons: Cedent

    def __str__(self) -> str:
        return print_sequent(self)


def sequent(ante, cons) -> Sequent:
    return Sequent(as_cedent(ante), as_cedent(cons))


EMPTY_SEQUENT = Sequent((), ())


def complexity(s: Sequent) -> int:
    """Formula count plus connective count, the prover's search measure."""
    total = len(s.ante) + len(s.cons)
    for f in s.ante:
        total += connective_count(f)
    for f in s.cons:
        total += connective_count(f)
    return total


def cedent_complexity(c: Cedent) -> int:
    return len(c) + sum(connective_count(f) for f in c)


def one_sided(s: Sequent) -> Cedent:
    """Consequent-only form: Gamma |- Delta becomes |- Gamma^perp, Delta."""
    return as_cedent([negate(f) for f in s.ante] + list(s.cons))


LEAF = "leaf"
CONST = "const"
TEN = "ten"
COT = "cot"
PADD = "padd"
PCOADD = "pcoadd"

_RED_BINARY = (TEN, COT, PADD, PCOADD)


@dataclass(frozen=True)
class Structure:
    """A tree of sequents and constants joined by the four red connectives."""

    kind: str
    seq: Sequent | None = None
    value: Value | None = None
    left: "Structure | None" = None
    right: "Structure | None" = None

    def __str__(self) -> str:
        return print_structure(self)


def leaf(s: Sequent) -> Structure:
    return Structure(LEAF, seq=s)


def const(v: Value) -> Structure:
    return Structure(CONST, value=v)


def red(kind: str, left: Structure, right: Structure) -> Structure:
    if kind not in _RED_BINARY:
        raise ValueError(f"not a red connective: {kind}")
    return Structure(kind, left=left, right=right)


def structure_leaves(h: Structure) -> list[Sequent]:
    if h.kind == LEAF:
        return [h.seq]
    if h.kind == CONST:
        return []
    return structure_leaves(h.left) + structure_leaves(h.right)


def is_closed(h: Structure) -> bool:
    return not structure_leaves(h)


def is_unary(h: Structure) -> bool:
    return len(structure_leaves(h)) == 1


# ---------------------------------------------------------------------------
# Lexer / parser


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<rat>\d+(?:/\d+)?)
  | (?P<name>[A-Za-z][A-Za-z0-9_]*)
  | (?P<op>\|\-|[()*|+&~,])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens: list[tuple[str, int]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            tokens.append((m.group(), pos))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, hardness: Hardness | None = None):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.hardness = hardness

    def peek(self) -> str | None:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def offset(self) -> int:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][1]
        return len(self.text)

    def next(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.offset())
        self.pos += 1
        return tok

    def expect(self, want: str) -> None:
        tok = self.next()
        if tok != want:
            raise ParseError(f"expected {want!r}, got {tok!r}", self.tokens[self.pos - 1][1])

    def done(self) -> None:
        if self.peek() is not None:
            raise ParseError(f"trailing input {self.peek()!r}", self.offset())

    # formulas

    def formula(self) -> Formula:
        """One cedent item: a primary, optionally joined to a second by one
        connective; deeper nesting must be parenthesized."""
        left = self.primary()
        op = self.peek()
        if op in ("*", "|", "+", "&"):
            self.next()
            right = self.primary()
            kind = {"*": TENSOR, "|": PAR, "+": PLOR, "&": PLAND}[op]
            return Formula(kind, "", left, right)
        return left

    def primary(self) -> Formula:
        tok = self.next()
        at = self.tokens[self.pos - 1][1]
        if tok == "(":
            inner = self.formula()
            self.expect(")")
            return inner
        if tok == "~":
            name = self.next()
            if not re.fullmatch(r"[a-z][a-z0-9_]*", name):
                raise ParseError(f"expected an atom after '~', got {name!r}", at)
            return neg_atom(name)
        if tok == "1":
            return ONE_F
        if tok == "bot":
            return BOT_F
        if tok == "top":
            return TOP_F
        if tok == "neg":
            self.expect("(")
            inner = self.formula()
            self.expect(")")
            return negate(inner)
        if re.fullmatch(r"[a-z][a-z0-9_]*", tok):
            return atom(tok)
        raise ParseError(f"expected a formula, got {tok!r}", at)

    def cedent_until(self, stops: tuple[str, ...]) -> list[Formula]:
        if self.peek() is None or self.peek() in stops:
            return []
        formulas = [self.formula()]
        while self.peek() == ",":
            self.next()
            formulas.append(self.formula())
        return formulas

    def sequent(self, stops: tuple[str, ...] = ()) -> Sequent:
        ante = self.cedent_until(("|-",) + stops)
        self.expect("|-")
        cons = self.cedent_until(stops)
        return sequent(ante, cons)

    # structures

    def structure(self) -> Structure:
        self.expect("(")
        head = self.next()
        at = self.tokens[self.pos - 1][1]
        if head == "seq":
            s = self.sequent(stops=(")",))
            self.expect(")")
            return leaf(s)
        if head == "const":
            return const(self.constant())
        if head in _RED_BINARY:
            left = self.structure()
            right = self.structure()
            self.expect(")")
            return red(head, left, right)
        raise ParseError(f"expected a structure head, got {head!r}", at)

    def constant(self) -> Value:
        tok = self.next()
        at = self.tokens[self.pos - 1][1]
        if self.hardness is None:
            raise ParseError("constants need a hardness context", at)
        try:
            v = from_rational(self.hardness, parse_rational(tok))
        except ValueError as exc:
            raise ParseError(str(exc), at) from exc
        self.expect(")")
        return v


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    p.done()
    return f


def parse_sequent(text: str) -> Sequent:
    p = _Parser(text)
    s = p.sequent()
    p.done()
    return s


def parse_structure(text: str, hardness: Hardness) -> Structure:
    p = _Parser(text, hardness)
    h = p.structure()
    p.done()
    return h


def print_formula(f: Formula) -> str:
    if f.kind == ATOM:
        return f.name
    if f.kind == NEG_ATOM:
        return f"~{f.name}"
    if f.kind == ONE:
        return "1"
    if f.kind == BOT:
        return "bot"
    if f.kind == TOP:
        return "top"
    op = _CONNECTIVE_SYMBOL[f.kind]
    return f"({print_formula(f.left)} {op} {print_formula(f.right)})"


def print_cedent(c: Cedent) -> str:
    return ", ".join(print_formula(f) for f in c)


def print_sequent(s: Sequent) -> str:
    left = print_cedent(s.ante)
    right = print_cedent(s.cons)
    if left and right:
        return f"{left} |- {right}"
    if left:
        return f"{left} |-"
    if right:
        return f"|- {right}"
    return "|-"


def print_structure(h: Structure) -> str:
    if h.kind == LEAF:
        return f"(seq {print_sequent(h.seq)})"
    if h.kind == CONST:
        coord_free = "inf" if h.value.is_infinite else None
        if coord_free is not None:
            return "(const inf)"
        return f"(const {_value_literal(h.value)})"
    return f"({h.kind} {print_structure(h.left)} {print_structure(h.right)})"


def _value_literal(v: Value) -> str:
    """Rational literal for a value, available only when v itself is rational.

    v = coord^(1/p), rational exactly when coord^den has an exact num-th root.
    """
    if v.is_infinite:
        return "inf"
    if not v.hardness.is_finite:
        return str(v.coord)
    p = v.hardness.power
    powered = v.coord**p.denominator
    value = _nth_root_exact(powered, p.numerator)
    if value is None:
        raise ValueError(f"value {v} is irrational; no literal form")
    return str(value)
