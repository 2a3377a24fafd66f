"""Cut elimination as a deterministic, validity-non-decreasing rewrite.

Each step picks the uppermost cut (maximal distance from the root; ties
broken leftmost), so the subproofs above the redex are always cut-free,
and rewrites it by case analysis:

* structural: an axiom, EFQ, or a mix above either premise;
* principal vs principal: the cut formula introduced on both sides, with
  the soft-disjunction case choosing the branch pair of maximal validity
  (ties keep the left branch) and the par / soft-conjunction cases going
  through the dual translation;
* otherwise a commuting conversion that pushes the cut above the rule
  that does not touch the cut formula (consequent-side principal rules on
  the conclusion premise also go through the dual translation, so those
  steps leave their dual bookkeeping in the output).

Cuts whose formula is introduced by an explicit duality step on one side
and a plain introduction rule on the other are bridged by translating the
plain side to its dual form first; such translations can momentarily grow
the proof, so a reported step batches rewrites at the redex until the
certificate below strictly drops.

Progress is certified per reported step by the multiset of
(rank, rules-above) pairs over all cuts, compared in the Dershowitz-Manna
order; the coarser lexicographic tuple (max rank, cuts of max rank, cut
count, total rules above) is recorded in the trace.  That tuple is what
the termination argument quotes, but it can tick upward on duplicating
commuting conversions, where one cut turns into two of equal rank.

The structural-schema transformation is also here: given red-connective
terms t <= s (checked pointwise on a sample), it keeps the best proof per
variable, fills absent variables with EFQ, and reassembles along s.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from . import alethic
from .alethic import Hardness, Value, leq
from .calculus import (
    ATOM_L,
    ATOM_R,
    AX,
    BOT_L,
    CUT,
    DUAL_L,
    DUAL_R,
    EFQ,
    EMP,
    EMPTY_THEORY,
    MIX,
    MIX_STAR,
    ONE_L,
    ONE_R,
    PAR_L,
    PAR_R,
    PLAND_L,
    PLAND_L1,
    PLAND_L2,
    PLAND_R,
    PLOR_L,
    PLOR_R,
    PLOR_R1,
    PLOR_R2,
    TENSOR_L,
    TENSOR_R,
    TOP_R,
    Derivation,
    ProofTree,
    Theory,
    derivation_to_tree,
    make_rule,
    tree_to_derivation,
    tree_rule_count,
    tree_validity,
)
from .syntax import (
    COT,
    PADD,
    PCOADD,
    TEN,
    Formula,
    Sequent,
    Structure,
    connective_count,
    const,
    leaf,
    negate,
    red,
    sequent,
    sort_key,
)


@dataclass(frozen=True)
class CutMetric:
    """(max cut rank, cuts of max rank, cut count, summed rules-above)."""

    r_m: int
    n_m: int
    n: int
    d: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.r_m, self.n_m, self.n, self.d)

    def __str__(self) -> str:
        return f"{self.r_m},{self.n_m},{self.n},{self.d}"


@dataclass(frozen=True)
class RewriteStep:
    case: str
    metric_before: CutMetric
    metric_after: CutMetric
    validity_before: Value
    validity_after: Value

    def __str__(self) -> str:
        return (
            f"step {self.case} metric <{self.metric_before}> -> <{self.metric_after}> "
            f"validity {self.validity_before} -> {self.validity_after}"
        )


RewriteTrace = list[RewriteStep]


class RewriteError(RuntimeError):
    pass


def _cut_pairs(tree: ProofTree) -> list[tuple[tuple[int, ...], ProofTree]]:
    found: list[tuple[tuple[int, ...], ProofTree]] = []

    def walk(node: ProofTree, path: tuple[int, ...]) -> None:
        if node.app.rule == CUT:
            found.append((path, node))
        for i, child in enumerate(node.children):
            walk(child, path + (i,))

    walk(tree, ())
    return found


def cut_metric(tree: ProofTree) -> CutMetric:
    pairs = [(connective_count(node.app.formula), tree_rule_count(node) - 1)
             for _, node in _cut_pairs(tree)]
    if not pairs:
        return CutMetric(0, 0, 0, 0)
    r_m = max(r for r, _ in pairs)
    return CutMetric(r_m, sum(1 for r, _ in pairs if r == r_m), len(pairs),
                     sum(d for _, d in pairs))


def _certificate(tree: ProofTree) -> list[tuple[int, int]]:
    """Cut (rank, rules-above) pairs, sorted descending; the Dershowitz-Manna
    order on these multisets is plain lexicographic order on the sequences."""
    pairs = [(connective_count(node.app.formula), tree_rule_count(node) - 1)
             for _, node in _cut_pairs(tree)]
    return sorted(pairs, reverse=True)


def _replace(tree: ProofTree, path: tuple[int, ...], sub: ProofTree) -> ProofTree:
    if not path:
        return sub
    i = path[0]
    children = list(tree.children)
    children[i] = _replace(children[i], path[1:], sub)
    return ProofTree(tree.app, tuple(children))


def _subtree(tree: ProofTree, path: tuple[int, ...]) -> ProofTree:
    for i in path:
        tree = tree.children[i]
    return tree


class _Rewriter:
    def __init__(self, hardness: Hardness, theory: Theory):
        self.p = hardness
        self.theory = theory

    # -- constructors --------------------------------------------------------

    def cut(self, f: Formula, left: ProofTree, right: ProofTree) -> ProofTree:
        premise = red(TEN, leaf(left.conclusion), leaf(right.conclusion))
        return ProofTree(make_rule(CUT, premise, self.p, self.theory, formula=f), (left, right))

    def unary(self, rule: str, f: Formula, child: ProofTree) -> ProofTree:
        app = make_rule(rule, leaf(child.conclusion), self.p, self.theory, formula=f)
        return ProofTree(app, (child,))

    def binary(self, rule: str, connective: str, f: Formula | None,
               left: ProofTree, right: ProofTree) -> ProofTree:
        premise = red(connective, leaf(left.conclusion), leaf(right.conclusion))
        app = make_rule(rule, premise, self.p, self.theory, formula=f)
        return ProofTree(app, (left, right))

    def dual_l(self, child: ProofTree, bound: Formula) -> ProofTree:
        return self.unary(DUAL_L, bound, child)

    def dual_r(self, child: ProofTree, bound: Formula) -> ProofTree:
        return self.unary(DUAL_R, bound, child)

    def efq(self, concl: Sequent) -> ProofTree:
        app = make_rule(EFQ, const(alethic.zero(self.p)), self.p, self.theory,
                        bound_sequent=concl)
        return ProofTree(app)

    def emp(self) -> ProofTree:
        return ProofTree(make_rule(EMP, const(alethic.one(self.p)), self.p, self.theory))

    def bot_l(self, concl: Sequent) -> ProofTree:
        app = make_rule(BOT_L, const(alethic.infinity(self.p)), self.p, self.theory,
                        bound_sequent=concl)
        return ProofTree(app)

    def top_r(self, concl: Sequent) -> ProofTree:
        app = make_rule(TOP_R, const(alethic.infinity(self.p)), self.p, self.theory,
                        bound_sequent=concl)
        return ProofTree(app)

    def one_l(self) -> ProofTree:
        return ProofTree(make_rule(ONE_L, const(alethic.one(self.p)), self.p, self.theory))

    def one_r(self) -> ProofTree:
        return ProofTree(make_rule(ONE_R, const(alethic.one(self.p)), self.p, self.theory))

    # -- principality --------------------------------------------------------

    _RIGHT_INTRO = {TENSOR_R, PAR_R, PLOR_R, PLAND_R, PLOR_R1, PLOR_R2, ONE_R, TOP_R, ATOM_R}
    _LEFT_INTRO = {TENSOR_L, PAR_L, PLOR_L, PLAND_L, PLAND_L1, PLAND_L2, ONE_L, BOT_L, ATOM_L}

    def right_principal(self, node: ProofTree, f: Formula) -> str | None:
        """'proper' or 'dual' when node's last rule introduces f on the right."""
        rule = node.app.rule
        if rule == DUAL_R and negate(node.app.formula) == f:
            return "dual"
        if rule in (TENSOR_R, PAR_R, PLOR_R, PLAND_R, PLOR_R1, PLOR_R2):
            return "proper" if node.app.formula == f else None
        if rule == ONE_R:
            return "proper" if f.kind == "one" else None
        if rule == TOP_R:
            return "proper" if f.kind == "top" else None
        if rule == ATOM_R:
            return "proper" if f == Formula("atom", node.app.atom_name) else None
        return None

    def left_principal(self, node: ProofTree, f: Formula) -> str | None:
        rule = node.app.rule
        if rule == DUAL_L and negate(node.app.formula) == f:
            return "dual"
        if rule in (TENSOR_L, PAR_L, PLOR_L, PLAND_L, PLAND_L1, PLAND_L2):
            return "proper" if node.app.formula == f else None
        if rule == ONE_L:
            return "proper" if f.kind == "one" else None
        if rule == BOT_L:
            return "proper" if f.kind == "bot" else None
        if rule == ATOM_L:
            return "proper" if f == Formula("atom", node.app.atom_name) else None
        return None

    # -- dual translations ----------------------------------------------------

    def translate_left_intro(self, node: ProofTree, f: Formula) -> ProofTree:
        """From a proof ending in the left introduction of f, build one of the
        same contexts ending in the right introduction of f^perp."""
        rule = node.app.rule
        nf = negate(f)
        if rule == TENSOR_L:
            (child,) = node.children
            step = self.dual_r(self.dual_r(child, f.left), f.right)
            return self.unary(PAR_R, nf, step)
        if rule == PAR_L:
            l, r = node.children
            return self.binary(TENSOR_R, TEN, nf,
                               self.dual_r(l, f.left), self.dual_r(r, f.right))
        if rule == PLOR_L:
            l, r = node.children
            return self.binary(PLAND_R, PCOADD, nf,
                               self.dual_r(l, f.left), self.dual_r(r, f.right))
        if rule == PLAND_L:
            l, r = node.children
            return self.binary(PLOR_R, PADD, nf,
                               self.dual_r(l, f.left), self.dual_r(r, f.right))
        if rule in (PLAND_L1, PLAND_L2):
            (child,) = node.children
            kept = f.left if rule == PLAND_L1 else f.right
            unary = PLOR_R1 if rule == PLAND_L1 else PLOR_R2
            return self.unary(unary, nf, self.dual_r(child, kept))
        if rule == ONE_L:
            return self.one_r()
        if rule == BOT_L:
            s = node.app.conclusion
            out = Sequent(_remove(s.ante, Formula("bot")), _add(s.cons, Formula("top")))
            return self.top_r(out)
        if rule == ATOM_L:
            return self.dual_r(node, Formula("atom", node.app.atom_name))
        raise RewriteError(f"no left-intro translation for {rule}")

    def translate_right_intro(self, node: ProofTree, f: Formula) -> ProofTree:
        """Dual of translate_left_intro: end in the left introduction of f^perp."""
        rule = node.app.rule
        nf = negate(f)
        if rule == PAR_R:
            (child,) = node.children
            step = self.dual_l(self.dual_l(child, f.left), f.right)
            return self.unary(TENSOR_L, nf, step)
        if rule == TENSOR_R:
            l, r = node.children
            return self.binary(PAR_L, TEN, nf,
                               self.dual_l(l, f.left), self.dual_l(r, f.right))
        if rule == PLOR_R:
            l, r = node.children
            return self.binary(PLAND_L, PADD, nf,
                               self.dual_l(l, f.left), self.dual_l(r, f.right))
        if rule == PLAND_R:
            l, r = node.children
            return self.binary(PLOR_L, PCOADD, nf,
                               self.dual_l(l, f.left), self.dual_l(r, f.right))
        if rule in (PLOR_R1, PLOR_R2):
            (child,) = node.children
            kept = f.left if rule == PLOR_R1 else f.right
            unary = PLAND_L1 if rule == PLOR_R1 else PLAND_L2
            return self.unary(unary, nf, self.dual_l(child, kept))
        if rule == ONE_R:
            return self.one_l()
        if rule == TOP_R:
            s = node.app.conclusion
            out = Sequent(_add(s.ante, Formula("bot")), _remove(s.cons, Formula("top")))
            return self.bot_l(out)
        if rule == ATOM_R:
            return self.dual_l(node, Formula("atom", node.app.atom_name))
        raise RewriteError(f"no right-intro translation for {rule}")

    # -- one redex rewrite -----------------------------------------------------

    def rewrite_redex(self, node: ProofTree) -> tuple[ProofTree, str]:
        f = node.app.formula
        c1, c2 = node.children
        r1, r2 = c1.app.rule, c2.app.rule
        concl = node.app.conclusion
        # structural cases
        if r1 == AX:
            return c2, "B.2.1"
        if r2 == AX:
            return c1, "B.2.1"
        if r1 == EFQ or r2 == EFQ:
            return self.efq(concl), "B.2.2"
        if r1 in (MIX, MIX_STAR):
            s1, s2 = c1.children
            label = "B.2.3" if r1 == MIX else "B.2.3-mixstar"
            connective = TEN if r1 == MIX else COT
            if f in s2.conclusion.cons:
                return self.binary(r1, connective, None, s1, self.cut(f, s2, c2)), label
            return self.binary(r1, connective, None, self.cut(f, s1, c2), s2), label
        if r2 in (MIX, MIX_STAR):
            s1, s2 = c2.children
            label = "B.2.3" if r2 == MIX else "B.2.3-mixstar"
            connective = TEN if r2 == MIX else COT
            if f in s1.conclusion.ante:
                return self.binary(r2, connective, None, self.cut(f, c1, s1), s2), label
            return self.binary(r2, connective, None, s1, self.cut(f, c1, s2)), label
        p1 = self.right_principal(c1, f)
        p2 = self.left_principal(c2, f)
        if p1 and p2:
            return self.principal_case(node, f, c1, c2, p1, p2)
        if p1 is None and p2 is None:
            # both sides commute; prefer the one that will not duplicate
            duplicating = (PLOR_L, PLAND_L, PLOR_R, PLAND_R)
            if r1 in duplicating and r2 not in duplicating:
                return self.commute_right(node, f, c1, c2)
            return self.commute_left(node, f, c1, c2)
        if p2:
            return self.commute_left(node, f, c1, c2)
        return self.commute_right(node, f, c1, c2)

    def principal_case(self, node, f, c1, c2, p1, p2) -> tuple[ProofTree, str]:
        nf = negate(f)
        if p1 == "dual" and p2 == "dual":
            return self.cut(nf, c2.children[0], c1.children[0]), "B.3.1"
        if p1 == "dual":  # bridge the plain left introduction to its dual form
            return self.cut(nf, self.translate_left_intro(c2, f), c1.children[0]), "B.3.1-translate"
        if p2 == "dual":
            return self.cut(nf, c2.children[0], self.translate_right_intro(c1, f)), "B.3.1-translate"
        if f.kind == "one":
            return self.emp(), "B.3.6"
        if f.kind == "atom":
            v = self.theory.value(f.name)
            out = self.emp() if v is not None and v.is_finite_positive else self.efq(sequent([], []))
            return out, "B.3-atom"
        if f.kind == "tensor":
            t11, t12 = c1.children
            (t2,) = c2.children
            inner = self.cut(f.right, t12, t2)
            return self.cut(f.left, t11, inner), "B.3.2"
        if f.kind == "par":
            (t1,) = c1.children
            t21, t22 = c2.children
            core = self.dual_l(self.dual_l(t1, f.left), f.right)
            inner = self.cut(negate(f.right), self.dual_r(t22, f.right), core)
            return self.cut(negate(f.left), self.dual_r(t21, f.left), inner), "B.3.3"
        if f.kind == "plor":
            t21, t22 = c2.children
            if c1.app.rule == PLOR_R1:
                return self.cut(f.left, c1.children[0], t21), "B.3.4-unary"
            if c1.app.rule == PLOR_R2:
                return self.cut(f.right, c1.children[0], t22), "B.3.4-unary"
            t11, t12 = c1.children
            option_a = self.cut(f.left, t11, t21)
            option_b = self.cut(f.right, t12, t22)
            chosen = option_a if leq(tree_validity(option_b), tree_validity(option_a)) else option_b
            return chosen, "B.3.4"
        if f.kind == "pland":
            t11, t12 = c1.children

            def swapped(side: Formula, upper: ProofTree, lower: ProofTree) -> ProofTree:
                return self.cut(negate(side), self.dual_r(lower, side),
                                self.dual_l(upper, side))

            if c2.app.rule == PLAND_L1:
                return swapped(f.left, t11, c2.children[0]), "B.3.5-unary"
            if c2.app.rule == PLAND_L2:
                return swapped(f.right, t12, c2.children[0]), "B.3.5-unary"
            t21, t22 = c2.children
            option_a = swapped(f.left, t11, t21)
            option_b = swapped(f.right, t12, t22)
            chosen = option_a if leq(tree_validity(option_b), tree_validity(option_a)) else option_b
            return chosen, "B.3.5"
        raise RewriteError(f"unhandled principal pair on {f}")

    def commute_left(self, node, f, c1, c2) -> tuple[ProofTree, str]:
        rule = c1.app.rule
        g = c1.app.formula
        if rule == TENSOR_L:
            (s,) = c1.children
            return self.unary(TENSOR_L, g, self.cut(f, s, c2)), "B.4.1-1"
        if rule == PAR_L:
            s1, s2 = c1.children
            if f in s1.conclusion.cons:
                return self.binary(PAR_L, TEN, g, self.cut(f, s1, c2), s2), "B.4.1-2"
            return self.binary(PAR_L, TEN, g, s1, self.cut(f, s2, c2)), "B.4.1-2"
        if rule == PLOR_L:
            s1, s2 = c1.children
            return self.binary(PLOR_L, PCOADD, g,
                               self.cut(f, s1, c2), self.cut(f, s2, c2)), "B.4.1-3"
        if rule == PLAND_L:
            s1, s2 = c1.children
            return self.binary(PLAND_L, PADD, g,
                               self.cut(f, s1, c2), self.cut(f, s2, c2)), "B.4.1-4"
        if rule in (PLAND_L1, PLAND_L2):
            (s,) = c1.children
            return self.unary(rule, g, self.cut(f, s, c2)), "B.4.1-4-unary"
        if rule == DUAL_L:
            (s,) = c1.children
            return self.dual_l(self.cut(f, s, c2), g), "B.4.1-5"
        if rule == BOT_L:
            return self.bot_l(node.app.conclusion), "B.4.1-7"
        if rule == DUAL_R:
            (s,) = c1.children
            return self.dual_r(self.cut(f, s, c2), g), "B.4.2-dual"
        if rule == PAR_R:
            (s,) = c1.children
            core = self.dual_l(self.dual_l(self.cut(f, s, c2), g.left), g.right)
            return self.dual_r(self.unary(TENSOR_L, negate(g), core), negate(g)), "B.4.2-par"
        if rule == TENSOR_R:
            s1, s2 = c1.children
            if f in s1.conclusion.cons:
                left = self.dual_l(self.cut(f, s1, c2), g.left)
                right = self.dual_l(s2, g.right)
            else:
                left = self.dual_l(s1, g.left)
                right = self.dual_l(self.cut(f, s2, c2), g.right)
            core = self.binary(PAR_L, TEN, negate(g), left, right)
            return self.dual_r(core, negate(g)), "B.4.2-tensor"
        if rule == PLOR_R:
            s1, s2 = c1.children
            core = self.binary(PLAND_L, PADD, negate(g),
                               self.dual_l(self.cut(f, s1, c2), g.left),
                               self.dual_l(self.cut(f, s2, c2), g.right))
            return self.dual_r(core, negate(g)), "B.4.2-plor"
        if rule == PLAND_R:
            s1, s2 = c1.children
            core = self.binary(PLOR_L, PCOADD, negate(g),
                               self.dual_l(self.cut(f, s1, c2), g.left),
                               self.dual_l(self.cut(f, s2, c2), g.right))
            return self.dual_r(core, negate(g)), "B.4.2-pland"
        if rule in (PLOR_R1, PLOR_R2):
            (s,) = c1.children
            kept = g.left if rule == PLOR_R1 else g.right
            unary = PLAND_L1 if rule == PLOR_R1 else PLAND_L2
            core = self.unary(unary, negate(g), self.dual_l(self.cut(f, s, c2), kept))
            return self.dual_r(core, negate(g)), "B.4.2-plor-unary"
        if rule == TOP_R:
            s = node.app.conclusion
            inner = Sequent(_add(s.ante, Formula("bot")), _remove(s.cons, Formula("top")))
            return self.dual_r(self.bot_l(inner), Formula("bot")), "B.4.2-top"
        raise RewriteError(f"cannot commute the cut past {rule} on the conclusion side")

    def commute_right(self, node, f, c1, c2) -> tuple[ProofTree, str]:
        rule = c2.app.rule
        g = c2.app.formula
        if rule == TENSOR_L:
            (s,) = c2.children
            return self.unary(TENSOR_L, g, self.cut(f, c1, s)), "B.4-sym-1"
        if rule == PAR_L:
            s1, s2 = c2.children
            if f in s1.conclusion.ante:
                return self.binary(PAR_L, TEN, g, self.cut(f, c1, s1), s2), "B.4-sym-2"
            return self.binary(PAR_L, TEN, g, s1, self.cut(f, c1, s2)), "B.4-sym-2"
        if rule == PLOR_L:
            s1, s2 = c2.children
            return self.binary(PLOR_L, PCOADD, g,
                               self.cut(f, c1, s1), self.cut(f, c1, s2)), "B.4-sym-3"
        if rule == PLAND_L:
            s1, s2 = c2.children
            return self.binary(PLAND_L, PADD, g,
                               self.cut(f, c1, s1), self.cut(f, c1, s2)), "B.4-sym-4"
        if rule in (PLAND_L1, PLAND_L2):
            (s,) = c2.children
            return self.unary(rule, g, self.cut(f, c1, s)), "B.4-sym-4-unary"
        if rule == DUAL_L:
            (s,) = c2.children
            return self.dual_l(self.cut(f, c1, s), g), "B.4-sym-5"
        if rule == DUAL_R:
            (s,) = c2.children
            return self.dual_r(self.cut(f, c1, s), g), "B.4-sym-dualr"
        if rule == BOT_L:
            return self.bot_l(node.app.conclusion), "B.4-sym-7"
        if rule == TOP_R:
            return self.top_r(node.app.conclusion), "B.4-sym-top"
        if rule == PAR_R:
            (s,) = c2.children
            return self.unary(PAR_R, g, self.cut(f, c1, s)), "B.4-sym-parr"
        if rule == TENSOR_R:
            s1, s2 = c2.children
            if f in s1.conclusion.ante:
                return self.binary(TENSOR_R, TEN, g, self.cut(f, c1, s1), s2), "B.4-sym-tensorr"
            return self.binary(TENSOR_R, TEN, g, s1, self.cut(f, c1, s2)), "B.4-sym-tensorr"
        if rule == PLOR_R:
            s1, s2 = c2.children
            return self.binary(PLOR_R, PADD, g,
                               self.cut(f, c1, s1), self.cut(f, c1, s2)), "B.4-sym-plorr"
        if rule == PLAND_R:
            s1, s2 = c2.children
            return self.binary(PLAND_R, PCOADD, g,
                               self.cut(f, c1, s1), self.cut(f, c1, s2)), "B.4-sym-plandr"
        if rule in (PLOR_R1, PLOR_R2):
            (s,) = c2.children
            return self.unary(rule, g, self.cut(f, c1, s)), "B.4-sym-plorr-unary"
        raise RewriteError(f"cannot commute the cut past {rule} on the hypothesis side")


def _remove(cedent, f):
    out = list(cedent)
    out.remove(f)
    return tuple(out)


def _add(cedent, f):
    return tuple(sorted(cedent + (f,), key=sort_key))


def _select_redex(tree: ProofTree) -> tuple[tuple[int, ...], ProofTree]:
    cuts = _cut_pairs(tree)
    if not cuts:
        raise RewriteError("already cut-free")
    depth = max(len(path) for path, _ in cuts)
    deepest = [(path, node) for path, node in cuts if len(path) == depth]
    return min(deepest, key=lambda item: item[0])


def cut_step_tree(tree: ProofTree, hardness: Hardness,
                  theory: Theory = EMPTY_THEORY) -> tuple[ProofTree, RewriteStep]:
    """One reported elimination step at the uppermost cut.

    Batches redex rewrites until the redex region's (rank, rules-above)
    certificate strictly drops below the redex's own pair, which bounds
    the batch by the redex subproof size.  Validity monotonicity and
    conclusion preservation are asserted on every step.
    """
    rewriter = _Rewriter(hardness, theory)
    before_metric = cut_metric(tree)
    before_validity = tree_validity(tree)
    path, redex = _select_redex(tree)
    labels: list[str] = []
    guard = 10 * tree_rule_count(tree) + 100
    local = redex
    local_start = _certificate(redex)
    while True:
        sub_path, sub_redex = _select_redex(local)
        new_sub, label = rewriter.rewrite_redex(sub_redex)
        labels.append(label)
        local = _replace(local, sub_path, new_sub)
        if _certificate(local) < local_start:
            break
        guard -= 1
        if guard <= 0:
            raise RewriteError("cut elimination step did not converge")
    current = _replace(tree, path, local)
    after_metric = cut_metric(current)
    after_validity = tree_validity(current)
    if not leq(before_validity, after_validity):
        raise RewriteError("validity decreased across a cut step")
    if current.conclusion != tree.conclusion:
        raise RewriteError("conclusion changed across a cut step")
    step = RewriteStep("+".join(labels), before_metric, after_metric,
                       before_validity, after_validity)
    return current, step


def cut_eliminate_tree(tree: ProofTree, hardness: Hardness,
                       theory: Theory = EMPTY_THEORY) -> tuple[ProofTree, RewriteTrace]:
    trace: RewriteTrace = []
    while cut_metric(tree).n:
        tree, step = cut_step_tree(tree, hardness, theory)
        trace.append(step)
    return tree, trace


def cut_step(d: Derivation, hardness: Hardness,
             theory: Theory = EMPTY_THEORY) -> tuple[Derivation, RewriteStep]:
    tree, step = cut_step_tree(derivation_to_tree(d), hardness, theory)
    return tree_to_derivation(tree), step


def cut_eliminate(d: Derivation, hardness: Hardness,
                  theory: Theory = EMPTY_THEORY) -> tuple[Derivation, RewriteTrace]:
    tree, trace = cut_eliminate_tree(derivation_to_tree(d), hardness, theory)
    return tree_to_derivation(tree), trace


# ---------------------------------------------------------------------------
# Structural schema (external structural rules via best-branch selection)


VAR = "var"


@dataclass(frozen=True)
class Term:
    """A red-connective term over variables and constants."""

    kind: str  # var | const | ten | cot | padd | pcoadd
    name: str = ""
    value: Value | None = None
    left: "Term | None" = None
    right: "Term | None" = None


def t_var(name: str) -> Term:
    return Term(VAR, name=name)


def t_const(v: Value) -> Term:
    return Term("const", value=v)


def t_red(kind: str, left: Term, right: Term) -> Term:
    return Term(kind, left=left, right=right)


def term_vars(t: Term) -> list[str]:
    if t.kind == VAR:
        return [t.name]
    if t.kind == "const":
        return []
    return term_vars(t.left) + term_vars(t.right)


def eval_term(t: Term, env: dict[str, Value], hardness: Hardness) -> Value:
    ops = {TEN: alethic.tensor, COT: alethic.cotensor,
           PADD: alethic.padd, PCOADD: alethic.pcoadd}
    if t.kind == VAR:
        return env[t.name]
    if t.kind == "const":
        return t.value
    return ops[t.kind](eval_term(t.left, env, hardness), eval_term(t.right, env, hardness))


class SchemaInequalityError(ValueError):
    def __init__(self, env: dict[str, Value]):
        super().__init__(f"term inequality fails at {dict((k, str(v)) for k, v in env.items())}")
        self.env = env


def _sample_values(hardness: Hardness, rng: random.Random) -> Value:
    roll = rng.random()
    if roll < 0.1:
        return alethic.zero(hardness)
    if roll < 0.2:
        return alethic.infinity(hardness)
    coord = Fraction(rng.randint(1, 24), rng.randint(1, 24))
    return alethic.from_power_coord(hardness, coord)


def check_term_inequality(t: Term, s: Term, hardness: Hardness,
                          samples: int = 1000, seed: int = 20240) -> None:
    """Sampled pointwise check t <= s, corners included; raises on a witness."""
    names = sorted(set(term_vars(t) + term_vars(s)))
    corners = [alethic.zero(hardness), alethic.one(hardness), alethic.infinity(hardness)]
    corner_envs = itertools.islice(itertools.product(corners, repeat=len(names)), 1000)
    rng = random.Random(seed)
    envs = [dict(zip(names, combo)) for combo in corner_envs]
    for _ in range(samples):
        envs.append({name: _sample_values(hardness, rng) for name in names})
    for env in envs:
        if not leq(eval_term(t, env, hardness), eval_term(s, env, hardness)):
            raise SchemaInequalityError(env)


def apply_structural_schema(t: Term, s: Term,
                            assignments: dict[str, tuple[Sequent, list[ProofTree]]],
                            hardness: Hardness, theory: Theory = EMPTY_THEORY,
                            samples: int = 1000) -> Derivation:
    """Rewrite a derivation ending in the structural schema t => s.

    ``assignments`` maps each variable to its sequent and the proofs
    attached to its occurrences in t (one per occurrence, left to right;
    empty for variables absent from t).  Keeps the best proof per
    variable, defaults to EFQ, and reassembles along s.
    """
    check_term_inequality(t, s, hardness, samples=samples)
    rewriter = _Rewriter(hardness, theory)
    occurrences = term_vars(t)
    for name in set(occurrences + term_vars(s)):
        if name not in assignments:
            raise ValueError(f"variable {name}: no sequent assigned")
        seqt, proofs = assignments[name]
        if len(proofs) != occurrences.count(name):
            raise ValueError(f"variable {name}: expected {occurrences.count(name)} proofs")
        for proof in proofs:
            if proof.conclusion != seqt:
                raise ValueError(f"variable {name}: proof concludes {proof.conclusion}")
    chosen: dict[str, ProofTree] = {}
    for name, (seqt, proofs) in assignments.items():
        best = None
        for proof in proofs:
            if best is None or not leq(tree_validity(proof), tree_validity(best)):
                best = proof
        chosen[name] = best if best is not None else rewriter.efq(seqt)

    # the rewrite can only improve: each occurrence is replaced by the best
    # proof of its sequent, and t <= s pointwise
    proof_iter = {name: iter(proofs) for name, (_, proofs) in assignments.items()}
    occurrence_env: list[Value] = []
    for name in occurrences:
        occurrence_env.append(tree_validity(next(proof_iter[name])))
    before = _eval_term_occurrences(t, iter(occurrence_env), hardness)
    after = eval_term(s, {name: tree_validity(tree) for name, tree in chosen.items()}, hardness)
    if not leq(before, after):
        raise RewriteError("structural schema rewrite decreased validity")

    from .calculus import d_horiz, d_id

    def build(term: Term) -> Derivation:
        if term.kind == VAR:
            return tree_to_derivation(chosen[term.name])
        if term.kind == "const":
            return d_id(const(term.value))
        return d_horiz(term.kind, build(term.left), build(term.right))

    return build(s)


def _eval_term_occurrences(t: Term, values, hardness: Hardness) -> Value:
    ops = {TEN: alethic.tensor, COT: alethic.cotensor,
           PADD: alethic.padd, PCOADD: alethic.pcoadd}
    if t.kind == VAR:
        return next(values)
    if t.kind == "const":
        return t.value
    left = _eval_term_occurrences(t.left, values, hardness)
    return ops[t.kind](left, _eval_term_occurrences(t.right, values, hardness))
