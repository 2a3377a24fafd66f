"""The rule set, derivation objects, well-formedness checking and evaluation.

A derivation is either an identity on a structure, a single rule instance
(premise structure above, single-sequent conclusion below), a vertical
composition, or a horizontal composition along a red connective.  Rule
instances carry explicit bindings (the principal formula, or the whole
conclusion sequent for the context-free leaves), so checking is
deterministic and proof files are unambiguous.

A closed derivation evaluates to the alethic value of its top structure.
``ProofTree`` is an equivalent sequentialized form (one node per rule,
children in premise order) used by the prover and the cut rewriter.

Proof file format (s-expressions):

    derivation := (rule NAME (bind ITEM*) STRUCTURE)
                | (vert D D) | (horiz OP D D) | (id STRUCTURE)
    ITEM       := (formula F) | (sequent SEQ) | (atom NAME)
    OP         := ten | cot | padd | pcoadd
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import alethic
from .alethic import Hardness, Value, dual, format_rational, from_rational, parse_rational
from .syntax import (
    CONST,
    COT,
    LEAF,
    PADD,
    PCOADD,
    TEN,
    Cedent,
    Formula,
    ParseError,
    Sequent,
    Structure,
    _Parser,
    as_cedent,
    atom,
    cedent_merge,
    cedent_remove,
    const,
    is_closed,
    is_unary,
    leaf,
    neg_atom,
    negate,
    print_formula,
    print_sequent,
    print_structure,
    red,
    sequent,
    structure_leaves,
)

AX = "AX"
EMP = "EMP"
EFQ = "EFQ"
CUT = "CUT"
MIX = "MIX"
TENSOR_L = "TensorL"
TENSOR_R = "TensorR"
PAR_L = "ParL"
PAR_R = "ParR"
DUAL_L = "DualL"
DUAL_R = "DualR"
ONE_L = "OneL"
ONE_R = "OneR"
PLOR_L = "PlorL"
PLOR_R = "PlorR"
PLAND_L = "PlandL"
PLAND_R = "PlandR"
BOT_L = "BotL"
TOP_R = "TopR"
MIX_STAR = "MixStar"
ATOM_L = "AtomL"
ATOM_R = "AtomR"
# Unary soft-disjunction/conjunction rules, admissible at p = inf only.
PLOR_R1 = "PlorR1"
PLOR_R2 = "PlorR2"
PLAND_L1 = "PlandL1"
PLAND_L2 = "PlandL2"

RULE_NAMES = frozenset(
    {
        AX, EMP, EFQ, CUT, MIX, TENSOR_L, TENSOR_R, PAR_L, PAR_R, DUAL_L, DUAL_R,
        ONE_L, ONE_R, PLOR_L, PLOR_R, PLAND_L, PLAND_R, BOT_L, TOP_R, MIX_STAR,
        ATOM_L, ATOM_R, PLOR_R1, PLOR_R2, PLAND_L1, PLAND_L2,
    }
)

_UNARY_INFTY_RULES = frozenset({PLOR_R1, PLOR_R2, PLAND_L1, PLAND_L2})


@dataclass(frozen=True)
class Theory:
    """Atom valuation plus the mix-star switch of prelinear theories."""

    atoms: tuple[tuple[str, Value], ...] = ()
    mix_star: bool = False

    @staticmethod
    def make(atoms: dict[str, Value] | None = None, mix_star: bool = False) -> "Theory":
        items = tuple(sorted((atoms or {}).items()))
        return Theory(items, mix_star)

    def value(self, name: str) -> Value | None:
        for key, v in self.atoms:
            if key == name:
                return v
        return None

    @property
    def hardness(self) -> Hardness | None:
        return self.atoms[0][1].hardness if self.atoms else None


EMPTY_THEORY = Theory()


def parse_theory(text: str, hardness: Hardness) -> Theory:
    """Theory file: lines ``atom <name> = <rational|inf>``, ``mix_star = true|false``."""
    atoms: dict[str, Value] = {}
    mix_star = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split("=")]
        if len(parts) != 2:
            raise ValueError(f"theory line {lineno}: expected '<lhs> = <rhs>'")
        lhs, rhs = parts
        if lhs == "mix_star":
            if rhs not in ("true", "false"):
                raise ValueError(f"theory line {lineno}: mix_star must be true or false")
            mix_star = rhs == "true"
            continue
        if not lhs.startswith("atom ") or len(lhs.split()) != 2:
            raise ValueError(f"theory line {lineno}: expected 'atom <name> = <value>'")
        name = lhs.split()[1]
        atoms[name] = from_rational(hardness, parse_rational(rhs))
    return Theory.make(atoms, mix_star)


def print_theory(t: Theory) -> str:
    lines = [f"atom {name} = {_plain_literal(v)}" for name, v in t.atoms]
    lines.append(f"mix_star = {'true' if t.mix_star else 'false'}")
    return "\n".join(lines) + "\n"


def _plain_literal(v: Value) -> str:
    from .syntax import _value_literal

    return _value_literal(v)


# ---------------------------------------------------------------------------
# Derivations


@dataclass(frozen=True)
class RuleApp:
    """One rule instance: name, bindings, premise structure, conclusion sequent."""

    rule: str
    premise: Structure
    conclusion: Sequent
    formula: Formula | None = None  # principal formula binding
    bound_sequent: Sequent | None = None  # conclusion binding for EFQ/BotL/TopR
    atom_name: str | None = None  # AtomL/AtomR


ID = "id"
RULE = "rule"
VERT = "vert"
HORIZ = "horiz"


@dataclass(frozen=True)
class Derivation:
    kind: str
    structure: Structure | None = None  # id
    app: RuleApp | None = None  # rule
    upper: "Derivation | None" = None  # vert
    lower: "Derivation | None" = None
    op: str | None = None  # horiz
    left: "Derivation | None" = None
    right: "Derivation | None" = None


def d_id(structure: Structure) -> Derivation:
    return Derivation(ID, structure=structure)


def d_rule(app: RuleApp) -> Derivation:
    return Derivation(RULE, app=app)


def d_vert(upper: Derivation, lower: Derivation) -> Derivation:
    return Derivation(VERT, upper=upper, lower=lower)


def d_horiz(op: str, left: Derivation, right: Derivation) -> Derivation:
    return Derivation(HORIZ, op=op, left=left, right=right)


def top_structure(d: Derivation) -> Structure:
    if d.kind == ID:
        return d.structure
    if d.kind == RULE:
        return d.app.premise
    if d.kind == VERT:
        return top_structure(d.upper)
    return red(d.op, top_structure(d.left), top_structure(d.right))


def bottom_structure(d: Derivation) -> Structure:
    if d.kind == ID:
        return d.structure
    if d.kind == RULE:
        return leaf(d.app.conclusion)
    if d.kind == VERT:
        return bottom_structure(d.lower)
    return red(d.op, bottom_structure(d.left), bottom_structure(d.right))


def is_closed_derivation(d: Derivation) -> bool:
    return is_closed(top_structure(d))


def is_proof(d: Derivation) -> bool:
    return is_closed_derivation(d) and is_unary(bottom_structure(d))


# ---------------------------------------------------------------------------
# Structure evaluation

_RED_OP = {
    TEN: alethic.tensor,
    COT: alethic.cotensor,
    PADD: alethic.padd,
    PCOADD: alethic.pcoadd,
}


def eval_structure(h: Structure) -> Value:
    """Exact alethic value of a closed structure."""
    if h.kind == LEAF:
        raise ValueError("structure is not closed; cannot evaluate")
    if h.kind == CONST:
        return h.value
    return _RED_OP[h.kind](eval_structure(h.left), eval_structure(h.right))


def eval_structure_with(h: Structure, leaf_values: list[Value]) -> Value:
    """Evaluate a structure with the given values substituted for its leaves."""
    values = list(leaf_values)

    def go(node: Structure) -> Value:
        if node.kind == LEAF:
            return values.pop(0)
        if node.kind == CONST:
            return node.value
        left = go(node.left)
        return _RED_OP[node.kind](left, go(node.right))

    result = go(h)
    if values:
        raise ValueError("too many leaf values")
    return result


def validity(d: Derivation) -> Value:
    """Alethic value of the top structure of a closed derivation."""
    if not is_closed_derivation(d):
        raise ValueError("derivation is not closed; validity undefined")
    return eval_structure(top_structure(d))


# ---------------------------------------------------------------------------
# Rule schemas: infer the conclusion of a rule instance, or explain why not.


class SchemaViolation(ValueError):
    pass


def _need_const(premise: Structure, expected: Value, rule: str) -> None:
    if premise.kind != CONST:
        raise SchemaViolation(f"{rule}: premise must be a constant structure")
    if premise.value != expected:
        raise SchemaViolation(
            f"{rule}: premise constant must be {expected}, got {premise.value}"
        )


def _two_leaves(premise: Structure, connective: str, rule: str) -> tuple[Sequent, Sequent]:
    if premise.kind != connective or premise.left.kind != LEAF or premise.right.kind != LEAF:
        raise SchemaViolation(
            f"{rule}: wrong red connective; premise must be ({connective} (seq ..) (seq ..))"
        )
    return premise.left.seq, premise.right.seq


def _one_leaf(premise: Structure, rule: str) -> Sequent:
    if premise.kind != LEAF:
        raise SchemaViolation(f"{rule}: premise must be a single sequent")
    return premise.seq


def infer_conclusion(app_rule: str, premise: Structure, hardness: Hardness, theory: Theory,
                     formula: Formula | None = None, bound_sequent: Sequent | None = None,
                     atom_name: str | None = None) -> Sequent:
    """Check a rule instance against its schema and compute its conclusion."""
    one_v = alethic.one(hardness)
    rule = app_rule
    if rule == AX:
        if formula is None:
            raise SchemaViolation("AX: missing formula binding")
        _need_const(premise, one_v, rule)
        return sequent([formula], [formula])
    if rule == EMP:
        _need_const(premise, one_v, rule)
        return sequent([], [])
    if rule == EFQ:
        if bound_sequent is None:
            raise SchemaViolation("EFQ: missing sequent binding")
        _need_const(premise, alethic.zero(hardness), rule)
        return bound_sequent
    if rule == ONE_L:
        _need_const(premise, one_v, rule)
        return sequent([Formula("one")], [])
    if rule == ONE_R:
        _need_const(premise, one_v, rule)
        return sequent([], [Formula("one")])
    if rule == BOT_L:
        if bound_sequent is None:
            raise SchemaViolation("BotL: missing sequent binding")
        _need_const(premise, alethic.infinity(hardness), rule)
        if Formula("bot") not in bound_sequent.ante:
            raise SchemaViolation("BotL: conclusion must contain bot in the antecedent")
        return bound_sequent
    if rule == TOP_R:
        if bound_sequent is None:
            raise SchemaViolation("TopR: missing sequent binding")
        _need_const(premise, alethic.infinity(hardness), rule)
        if Formula("top") not in bound_sequent.cons:
            raise SchemaViolation("TopR: conclusion must contain top in the consequent")
        return bound_sequent
    if rule == ATOM_R:
        if atom_name is None:
            raise SchemaViolation("AtomR: missing atom binding")
        v = theory.value(atom_name)
        if v is None:
            raise SchemaViolation(f"AtomR: atom {atom_name!r} not in the active theory")
        _need_const(premise, v, rule)
        return sequent([], [atom(atom_name)])
    if rule == ATOM_L:
        if atom_name is None:
            raise SchemaViolation("AtomL: missing atom binding")
        v = theory.value(atom_name)
        if v is None:
            raise SchemaViolation(f"AtomL: atom {atom_name!r} not in the active theory")
        _need_const(premise, dual(v), rule)
        return sequent([atom(atom_name)], [])
    if rule == CUT:
        if formula is None:
            raise SchemaViolation("CUT: missing formula binding")
        s1, s2 = _two_leaves(premise, TEN, rule)
        if formula not in s1.cons:
            raise SchemaViolation("CUT: cut formula missing from left consequent")
        if formula not in s2.ante:
            raise SchemaViolation("CUT: cut formula missing from right antecedent")
        return Sequent(
            cedent_merge(s1.ante, cedent_remove(s2.ante, formula)),
            cedent_merge(cedent_remove(s1.cons, formula), s2.cons),
        )
    if rule == MIX:
        s1, s2 = _two_leaves(premise, TEN, rule)
        return Sequent(cedent_merge(s1.ante, s2.ante), cedent_merge(s1.cons, s2.cons))
    if rule == MIX_STAR:
        if not theory.mix_star:
            raise SchemaViolation("MixStar: not enabled by the active theory")
        s1, s2 = _two_leaves(premise, COT, rule)
        return Sequent(cedent_merge(s1.ante, s2.ante), cedent_merge(s1.cons, s2.cons))
    if rule == TENSOR_L:
        if formula is None or formula.kind != "tensor":
            raise SchemaViolation("TensorL: principal formula must be a tensor")
        s = _one_leaf(premise, rule)
        a, b = formula.left, formula.right
        if a not in s.ante or b not in cedent_remove(s.ante, a):
            raise SchemaViolation("TensorL: premise antecedent must contain both components")
        rest = cedent_remove(cedent_remove(s.ante, a), b)
        return Sequent(cedent_merge(rest, (formula,)), s.cons)
    if rule == PAR_R:
        if formula is None or formula.kind != "par":
            raise SchemaViolation("ParR: principal formula must be a par")
        s = _one_leaf(premise, rule)
        a, b = formula.left, formula.right
        if a not in s.cons or b not in cedent_remove(s.cons, a):
            raise SchemaViolation("ParR: premise consequent must contain both components")
        rest = cedent_remove(cedent_remove(s.cons, a), b)
        return Sequent(s.ante, cedent_merge(rest, (formula,)))
    if rule == DUAL_L:
        if formula is None:
            raise SchemaViolation("DualL: missing formula binding")
        s = _one_leaf(premise, rule)
        if formula not in s.cons:
            raise SchemaViolation("DualL: bound formula missing from premise consequent")
        return Sequent(
            cedent_merge(s.ante, (negate(formula),)), cedent_remove(s.cons, formula)
        )
    if rule == DUAL_R:
        if formula is None:
            raise SchemaViolation("DualR: missing formula binding")
        s = _one_leaf(premise, rule)
        if formula not in s.ante:
            raise SchemaViolation("DualR: bound formula missing from premise antecedent")
        return Sequent(
            cedent_remove(s.ante, formula), cedent_merge(s.cons, (negate(formula),))
        )
    if rule == TENSOR_R:
        if formula is None or formula.kind != "tensor":
            raise SchemaViolation("TensorR: principal formula must be a tensor")
        s1, s2 = _two_leaves(premise, TEN, rule)
        a, b = formula.left, formula.right
        if a not in s1.cons:
            raise SchemaViolation("TensorR: left component missing from left premise")
        if b not in s2.cons:
            raise SchemaViolation("TensorR: right component missing from right premise")
        return Sequent(
            cedent_merge(s1.ante, s2.ante),
            cedent_merge((formula,), cedent_remove(s1.cons, a), cedent_remove(s2.cons, b)),
        )
    if rule == PAR_L:
        if formula is None or formula.kind != "par":
            raise SchemaViolation("ParL: principal formula must be a par")
        s1, s2 = _two_leaves(premise, TEN, rule)
        a, b = formula.left, formula.right
        if a not in s1.ante:
            raise SchemaViolation("ParL: left component missing from left premise")
        if b not in s2.ante:
            raise SchemaViolation("ParL: right component missing from right premise")
        return Sequent(
            cedent_merge((formula,), cedent_remove(s1.ante, a), cedent_remove(s2.ante, b)),
            cedent_merge(s1.cons, s2.cons),
        )
    if rule in (PLOR_L, PLAND_L, PLOR_R, PLAND_R):
        wanted_kind = "plor" if rule in (PLOR_L, PLOR_R) else "pland"
        connective = {PLOR_L: PCOADD, PLAND_R: PCOADD, PLAND_L: PADD, PLOR_R: PADD}[rule]
        if formula is None or formula.kind != wanted_kind:
            raise SchemaViolation(f"{rule}: principal formula must be a {wanted_kind}")
        s1, s2 = _two_leaves(premise, connective, rule)
        a, b = formula.left, formula.right
        if rule in (PLOR_L, PLAND_L):
            if a not in s1.ante or b not in s2.ante:
                raise SchemaViolation(f"{rule}: components missing from premise antecedents")
            rest1, rest2 = cedent_remove(s1.ante, a), cedent_remove(s2.ante, b)
            if rest1 != rest2 or s1.cons != s2.cons:
                raise SchemaViolation(f"{rule}: premises must share their context")
            return Sequent(cedent_merge(rest1, (formula,)), s1.cons)
        if a not in s1.cons or b not in s2.cons:
            raise SchemaViolation(f"{rule}: components missing from premise consequents")
        rest1, rest2 = cedent_remove(s1.cons, a), cedent_remove(s2.cons, b)
        if rest1 != rest2 or s1.ante != s2.ante:
            raise SchemaViolation(f"{rule}: premises must share their context")
        return Sequent(s1.ante, cedent_merge(rest1, (formula,)))
    if rule in _UNARY_INFTY_RULES:
        if hardness.is_finite:
            raise SchemaViolation(f"{rule}: admissible at p=inf only")
        wanted_kind = "plor" if rule in (PLOR_R1, PLOR_R2) else "pland"
        if formula is None or formula.kind != wanted_kind:
            raise SchemaViolation(f"{rule}: principal formula must be a {wanted_kind}")
        s = _one_leaf(premise, rule)
        kept = formula.left if rule in (PLOR_R1, PLAND_L1) else formula.right
        if rule in (PLOR_R1, PLOR_R2):
            if kept not in s.cons:
                raise SchemaViolation(f"{rule}: kept component missing from premise consequent")
            return Sequent(s.ante, cedent_merge(cedent_remove(s.cons, kept), (formula,)))
        if kept not in s.ante:
            raise SchemaViolation(f"{rule}: kept component missing from premise antecedent")
        return Sequent(cedent_merge(cedent_remove(s.ante, kept), (formula,)), s.cons)
    raise SchemaViolation(f"unknown rule {rule!r}")


def make_rule(rule: str, premise: Structure, hardness: Hardness, theory: Theory = EMPTY_THEORY,
              formula: Formula | None = None, bound_sequent: Sequent | None = None,
              atom_name: str | None = None) -> RuleApp:
    conclusion = infer_conclusion(rule, premise, hardness, theory, formula, bound_sequent, atom_name)
    return RuleApp(rule, premise, conclusion, formula, bound_sequent, atom_name)


# ---------------------------------------------------------------------------
# Checking


@dataclass(frozen=True)
class Violation:
    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.path}: {self.message}"


def check_derivation(d: Derivation, hardness: Hardness, theory: Theory = EMPTY_THEORY) -> list[Violation]:
    """Return all schema and composition violations (empty list means ok)."""
    violations: list[Violation] = []

    def const_hardness_ok(h: Structure, path: str) -> None:
        if h.kind == CONST and h.value.hardness != hardness:
            violations.append(Violation(path, f"constant {h.value} is not at hardness {hardness}"))
        for side, child in (("left", h.left), ("right", h.right)):
            if child is not None:
                const_hardness_ok(child, f"{path}.{side}")

    def walk(node: Derivation, path: str) -> None:
        if node.kind == ID:
            const_hardness_ok(node.structure, path)
            return
        if node.kind == RULE:
            app = node.app
            const_hardness_ok(app.premise, path + ".premise")
            try:
                expect = infer_conclusion(
                    app.rule, app.premise, hardness, theory,
                    app.formula, app.bound_sequent, app.atom_name,
                )
                if expect != app.conclusion:
                    violations.append(Violation(
                        path, f"{app.rule}: conclusion {print_sequent(app.conclusion)} "
                              f"does not match schema ({print_sequent(expect)})"))
            except SchemaViolation as exc:
                violations.append(Violation(path, str(exc)))
            return
        if node.kind == VERT:
            walk(node.upper, path + ".upper")
            walk(node.lower, path + ".lower")
            if bottom_structure(node.upper) != top_structure(node.lower):
                violations.append(Violation(
                    path, "vertical composition mismatch: "
                          f"{print_structure(bottom_structure(node.upper))} vs "
                          f"{print_structure(top_structure(node.lower))}"))
            return
        walk(node.left, path + ".left")
        walk(node.right, path + ".right")

    walk(d, "root")
    return violations


# ---------------------------------------------------------------------------
# ProofTree: sequentialized closed derivations of a single sequent


@dataclass(frozen=True)
class ProofTree:
    app: RuleApp
    children: tuple["ProofTree", ...] = ()

    @property
    def conclusion(self) -> Sequent:
        return self.app.conclusion


def tree_validity(t: ProofTree) -> Value:
    return eval_structure_with(t.app.premise, [tree_validity(c) for c in t.children])


def tree_rule_count(t: ProofTree) -> int:
    return 1 + sum(tree_rule_count(c) for c in t.children)


def tree_to_derivation(t: ProofTree) -> Derivation:
    """Canonical derivation: horizontal premise assembly, then the rule."""
    node = d_rule(t.app)
    leaves = structure_leaves(t.app.premise)
    if not leaves:
        return node
    if len(leaves) == 1:
        upper = tree_to_derivation(t.children[0])
    else:
        upper = d_horiz(
            t.app.premise.kind,
            tree_to_derivation(t.children[0]),
            tree_to_derivation(t.children[1]),
        )
    return d_vert(upper, node)


def derivation_to_tree(d: Derivation) -> ProofTree:
    """Sequentialize a proof (closed derivation with unary bottom structure)."""
    if not is_proof(d):
        raise ValueError("only proofs (closed, unary conclusion) sequentialize to a tree")
    trees = _flatten(d, [])
    assert len(trees) == 1
    return trees[0]


def _count_leaves(h: Structure) -> int:
    return len(structure_leaves(h))


def _flatten(d: Derivation, inputs: list[ProofTree]) -> list[ProofTree]:
    """Plug proof trees into the top leaves of d; return trees for bottom leaves."""
    if d.kind == ID:
        if len(inputs) != _count_leaves(d.structure):
            raise ValueError("identity derivation arity mismatch")
        return inputs
    if d.kind == RULE:
        if len(inputs) != _count_leaves(d.app.premise):
            raise ValueError(f"{d.app.rule}: arity mismatch")
        return [ProofTree(d.app, tuple(inputs))]
    if d.kind == VERT:
        return _flatten(d.lower, _flatten(d.upper, inputs))
    n_left = _count_leaves(top_structure(d.left))
    return _flatten(d.left, inputs[:n_left]) + _flatten(d.right, inputs[n_left:])


# ---------------------------------------------------------------------------
# Proof file parsing / printing

_HORIZ_OPS = (TEN, COT, PADD, PCOADD)


def parse_derivation(text: str, hardness: Hardness, theory: Theory = EMPTY_THEORY) -> Derivation:
    p = _Parser(text, hardness)
    d = _parse_derivation(p, hardness, theory)
    p.done()
    return d


def _parse_derivation(p: _Parser, hardness: Hardness, theory: Theory) -> Derivation:
    p.expect("(")
    head = p.next()
    at = p.tokens[p.pos - 1][1]
    if head == "id":
        h = p.structure()
        p.expect(")")
        return d_id(h)
    if head == "vert":
        upper = _parse_derivation(p, hardness, theory)
        lower = _parse_derivation(p, hardness, theory)
        p.expect(")")
        return d_vert(upper, lower)
    if head == "horiz":
        op = p.next()
        if op not in _HORIZ_OPS:
            raise ParseError(f"bad red connective {op!r}", p.tokens[p.pos - 1][1])
        left = _parse_derivation(p, hardness, theory)
        right = _parse_derivation(p, hardness, theory)
        p.expect(")")
        return d_horiz(op, left, right)
    if head == "rule":
        name = p.next()
        if name not in RULE_NAMES:
            raise ParseError(f"unknown rule {name!r}", p.tokens[p.pos - 1][1])
        formula = bound_sequent = atom_name = None
        if p.peek() == "(":
            save = p.pos
            p.next()
            if p.peek() == "bind":
                p.next()
                while p.peek() == "(":
                    p.next()
                    item = p.next()
                    if item == "formula":
                        formula = p.formula()
                    elif item == "sequent":
                        bound_sequent = p.sequent(stops=(")",))
                    elif item == "atom":
                        atom_name = p.next()
                    else:
                        raise ParseError(f"bad bind item {item!r}", p.tokens[p.pos - 1][1])
                    p.expect(")")
                p.expect(")")
            else:
                p.pos = save
        premise = p.structure()
        p.expect(")")
        try:
            app = make_rule(name, premise, hardness, theory, formula, bound_sequent, atom_name)
        except SchemaViolation as exc:
            raise ParseError(str(exc), at) from exc
        return d_rule(app)
    raise ParseError(f"expected a derivation head, got {head!r}", at)


def print_derivation(d: Derivation) -> str:
    if d.kind == ID:
        return f"(id {print_structure(d.structure)})"
    if d.kind == VERT:
        return f"(vert {print_derivation(d.upper)} {print_derivation(d.lower)})"
    if d.kind == HORIZ:
        return f"(horiz {d.op} {print_derivation(d.left)} {print_derivation(d.right)})"
    app = d.app
    binds = []
    if app.formula is not None:
        binds.append(f"(formula {print_formula(app.formula)})")
    if app.bound_sequent is not None:
        binds.append(f"(sequent {print_sequent(app.bound_sequent)})")
    if app.atom_name is not None:
        binds.append(f"(atom {app.atom_name})")
    bind_text = f" (bind {' '.join(binds)})" if binds else ""
    return f"(rule {app.rule}{bind_text} {print_structure(app.premise)})"
