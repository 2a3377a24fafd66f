"""Soft residuated structures, concrete instances, and soundness checking.

A softale packages a carrier with an order valued in [0, inf], a tensor,
a duality, a unit, a bottom element and a soft join; par, soft meet, top
and the residual are derived uniformly from those.  Axioms are checked
exactly on user-supplied carrier samples (exhaustively when the sample is
a finite grid): enriched reflexivity and transitivity, the interchange
law, unit/associativity/commutativity up to two-sided order, the duality
laws, the bottom law, the two soft-join laws, the derived mix laws, and
optionally prelinearity.

Two instances are provided: the multiplicative extended reals (order =
residuation; prelinear) and the pointwise structure on fixed-width tuples
(order = minimum of componentwise residuations; not prelinear for width
at least two).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

from . import alethic
from .alethic import Hardness, Value, from_rational, leq, parse_rational
from .calculus import Derivation, bottom_structure, is_proof, validity
from .syntax import (
    CONST,
    COT,
    LEAF,
    PADD,
    PCOADD,
    TEN,
    Formula,
    Sequent,
    Structure,
    structure_leaves,
)


@dataclass(frozen=True)
class Softale:
    name: str
    hardness: Hardness
    order: Callable  # (a, b) -> Value
    tensor: Callable  # (a, b) -> element
    dual: Callable  # a -> element
    unit: object
    bot: object
    pjoin: Callable  # (a, b) -> element
    prelinear: bool

    # derived structure

    def par(self, a, b):
        return self.dual(self.tensor(self.dual(a), self.dual(b)))

    def pmeet(self, a, b):
        return self.dual(self.pjoin(self.dual(a), self.dual(b)))

    @property
    def top(self):
        return self.dual(self.bot)

    def residual(self, a, b):
        return self.par(self.dual(a), b)


def real_softale(p: Hardness) -> Softale:
    """The extended positive reals: order is residuation, join is the soft sum."""
    return Softale(
        name="real",
        hardness=p,
        order=alethic.residual,
        tensor=alethic.tensor,
        dual=alethic.dual,
        unit=alethic.one(p),
        bot=alethic.zero(p),
        pjoin=alethic.padd,
        prelinear=True,
    )


def pointwise_softale(width: int, p: Hardness) -> Softale:
    """Tuples of reals with everything pointwise; the order is the minimum of
    the componentwise residuations, so it is not prelinear for width >= 2."""
    if width < 1:
        raise ValueError("width must be at least 1")

    def order_min(a, b):
        out = alethic.infinity(p)
        for x, y in zip(a, b):
            candidate = alethic.residual(x, y)
            if leq(candidate, out):
                out = candidate
        return out

    return Softale(
        name=f"pointwise:{width}",
        hardness=p,
        order=order_min,
        tensor=lambda a, b: tuple(alethic.tensor(x, y) for x, y in zip(a, b)),
        dual=lambda a: tuple(alethic.dual(x) for x in a),
        unit=tuple(alethic.one(p) for _ in range(width)),
        bot=tuple(alethic.zero(p) for _ in range(width)),
        pjoin=lambda a, b: tuple(alethic.padd(x, y) for x, y in zip(a, b)),
        prelinear=False,
    )


def corrupt_tensor(s: Softale) -> Softale:
    """A deliberately broken copy whose tensor maps 0 (x) inf to inf."""

    def bad_tensor(a, b):
        if (a.is_zero and b.is_infinite) or (a.is_infinite and b.is_zero):
            return alethic.infinity(s.hardness)
        return alethic.tensor(a, b)

    return replace(s, name=s.name + ":corrupted", tensor=bad_tensor)


# ---------------------------------------------------------------------------
# Axiom checking


@dataclass(frozen=True)
class AxiomViolation:
    axiom: str
    witness: tuple
    detail: str

    def __str__(self) -> str:
        elems = ", ".join(str(w) for w in self.witness)
        return f"{self.axiom} fails at ({elems}): {self.detail}"


@dataclass
class AxiomReport:
    checked: int
    violations: list[AxiomViolation]
    prelinearity_checked: bool

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        out = [f"axioms: {self.checked} instances checked, {len(self.violations)} violations"]
        out.extend(str(v) for v in self.violations)
        return out


def check_softale_axioms(s: Softale, samples, check_prelinearity: bool | None = None,
                         max_violations: int = 20) -> AxiomReport:
    """Evaluate every axiom instance exactly over the sample elements."""
    samples = list(samples)
    one_v = alethic.one(s.hardness)
    want_prelinearity = s.prelinear if check_prelinearity is None else check_prelinearity
    checked = 0
    violations: list[AxiomViolation] = []

    def record(axiom: str, witness: tuple, lhs: Value, rhs: Value) -> None:
        if len(violations) < max_violations:
            violations.append(AxiomViolation(axiom, witness, f"{lhs} <= {rhs} fails"))

    def expect_leq(axiom: str, witness: tuple, lhs: Value, rhs: Value) -> None:
        nonlocal checked
        checked += 1
        if not leq(lhs, rhs):
            record(axiom, witness, lhs, rhs)

    def expect_eq(axiom: str, witness: tuple, lhs: Value, rhs: Value) -> None:
        nonlocal checked
        checked += 1
        if lhs != rhs:
            record(axiom, witness, lhs, rhs)

    for a in samples:
        expect_leq("reflexivity", (a,), one_v, s.order(a, a))
        checked += 1
        if s.dual(s.dual(a)) != a:
            violations.append(AxiomViolation("involution", (a,), "a^perp^perp != a"))
        expect_leq("bottom", (a,), alethic.infinity(s.hardness), s.order(s.bot, a))
        expect_leq("unit-right", (a,), one_v, s.order(s.tensor(a, s.unit), a))
        expect_leq("unit-left", (a,), one_v, s.order(a, s.tensor(a, s.unit)))
    checked += 1
    if s.dual(s.unit) != s.unit:
        violations.append(AxiomViolation("unit-self-dual", (s.unit,), "1^perp != 1"))
    for a in samples:
        for b in samples:
            expect_eq("duality", (a, b), s.order(a, b), s.order(s.dual(b), s.dual(a)))
            expect_leq("commutativity", (a, b), one_v,
                       s.order(s.tensor(a, b), s.tensor(b, a)))
            expect_leq("mix", (a, b), one_v, s.order(s.tensor(a, b), s.par(a, b)))
            if want_prelinearity:
                expect_leq("prelinearity", (a, b),
                           alethic.dual(s.order(a, b)), s.order(b, a))
    for a in samples:
        for b in samples:
            for c in samples:
                expect_leq("transitivity", (a, b, c),
                           alethic.tensor(s.order(a, b), s.order(b, c)), s.order(a, c))
                expect_eq("star-autonomy", (a, b, c),
                          s.order(s.tensor(a, b), s.dual(c)),
                          s.order(a, s.dual(s.tensor(b, c))))
                expect_leq("associativity-1", (a, b, c), one_v,
                           s.order(s.tensor(s.tensor(a, b), c), s.tensor(a, s.tensor(b, c))))
                expect_leq("associativity-2", (a, b, c), one_v,
                           s.order(s.tensor(a, s.tensor(b, c)), s.tensor(s.tensor(a, b), c)))
                expect_leq("join-minimality", (a, b, c),
                           alethic.pcoadd(s.order(a, c), s.order(b, c)),
                           s.order(s.pjoin(a, b), c))
                expect_leq("join-upper-bound", (a, b, c),
                           alethic.padd(s.order(c, a), s.order(c, b)),
                           s.order(c, s.pjoin(a, b)))
                expect_leq("mix-assoc", (a, b, c), one_v,
                           s.order(s.tensor(a, s.par(b, c)), s.par(s.tensor(a, b), c)))
    for a in samples:
        for b in samples:
            for c in samples:
                for d in samples:
                    expect_leq("interchange", (a, b, c, d),
                               alethic.tensor(s.order(a, b), s.order(c, d)),
                               s.order(s.tensor(a, c), s.tensor(b, d)))
    return AxiomReport(checked, violations, want_prelinearity)


# ---------------------------------------------------------------------------
# Formula and sequent evaluation


def eval_formula(f: Formula, valuation: dict, s: Softale):
    """Homomorphic extension of an atom valuation to formulas."""
    if f.kind == "atom":
        if f.name not in valuation:
            raise KeyError(f"valuation missing atom {f.name!r}")
        return valuation[f.name]
    if f.kind == "natom":
        if f.name not in valuation:
            raise KeyError(f"valuation missing atom {f.name!r}")
        return s.dual(valuation[f.name])
    if f.kind == "one":
        return s.unit
    if f.kind == "bot":
        return s.bot
    if f.kind == "top":
        return s.top
    left = eval_formula(f.left, valuation, s)
    right = eval_formula(f.right, valuation, s)
    if f.kind == "tensor":
        return s.tensor(left, right)
    if f.kind == "par":
        return s.par(left, right)
    if f.kind == "plor":
        return s.pjoin(left, right)
    return s.pmeet(left, right)


def _fold_tensor(s: Softale, elements):
    out = s.unit
    for e in elements:
        out = s.tensor(out, e)
    return out


def _fold_par(s: Softale, elements):
    elements = list(elements)
    if not elements:
        return s.unit
    out = elements[0]
    for e in elements[1:]:
        out = s.par(out, e)
    return out


def semantic_sequent_value(seq: Sequent, valuation: dict, s: Softale) -> Value:
    """order(tensor-fold of the antecedent, par-fold of the consequent)."""
    ante = _fold_tensor(s, (eval_formula(f, valuation, s) for f in seq.ante))
    cons = _fold_par(s, (eval_formula(f, valuation, s) for f in seq.cons))
    return s.order(ante, cons)


def semantic_structure_value(h: Structure, valuation: dict, s: Softale) -> Value:
    ops = {TEN: alethic.tensor, COT: alethic.cotensor,
           PADD: alethic.padd, PCOADD: alethic.pcoadd}
    if h.kind == LEAF:
        return semantic_sequent_value(h.seq, valuation, s)
    if h.kind == CONST:
        return h.value
    return ops[h.kind](semantic_structure_value(h.left, valuation, s),
                       semantic_structure_value(h.right, valuation, s))


def soundness_gap(proof: Derivation, valuation: dict, s: Softale) -> tuple[Value, Value]:
    """(exact validity, semantic value of the conclusion sequent).

    Soundness says the first never exceeds the second; callers assert it.
    """
    if not is_proof(proof):
        raise ValueError("soundness gap needs a proof with a single conclusion sequent")
    conclusion = structure_leaves(bottom_structure(proof))[0]
    return validity(proof), semantic_sequent_value(conclusion, valuation, s)


# ---------------------------------------------------------------------------
# Valuation files


def parse_valuation(text: str, s: Softale) -> dict:
    """Lines ``atom <name> = <rational|inf>``; tuples comma-separated for the
    pointwise instance."""
    valuation: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split("=")]
        if len(parts) != 2 or not parts[0].startswith("atom ") or len(parts[0].split()) != 2:
            raise ValueError(f"valuation line {lineno}: expected 'atom <name> = <value>'")
        name = parts[0].split()[1]
        components = [from_rational(s.hardness, parse_rational(piece))
                      for piece in parts[1].split(",")]
        if s.name.startswith("pointwise"):
            width = len(s.unit)
            if len(components) != width:
                raise ValueError(f"valuation line {lineno}: expected {width} components")
            valuation[name] = tuple(components)
        else:
            if len(components) != 1:
                raise ValueError(f"valuation line {lineno}: expected a single value")
            valuation[name] = components[0]
    return valuation
