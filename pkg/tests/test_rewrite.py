"""Cut elimination and the structural schema."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from softseq import alethic
from softseq.alethic import from_power_coord, leq, one, zero
from softseq.calculus import (
    AX,
    CUT,
    EMP,
    check_derivation,
    derivation_to_tree,
    make_rule,
    tree_to_derivation,
    tree_validity,
    validity,
)
from softseq.fixtures import injection_proof, paper_proofs, soft_idempotency_proof
from softseq.prover import Prover
from softseq.rewrite import (
    RewriteError,
    SchemaInequalityError,
    Term,
    apply_structural_schema,
    check_term_inequality,
    cut_eliminate,
    cut_eliminate_tree,
    cut_metric,
    cut_step_tree,
    CutMetric,
    eval_term,
    t_const,
    t_red,
    t_var,
    _Rewriter,
)
from softseq.calculus import EMPTY_THEORY, ProofTree
from softseq.syntax import (
    PADD,
    PCOADD,
    TEN,
    const,
    leaf,
    parse_formula,
    parse_sequent,
    red,
    sequent,
)
from conftest import P1, P2, PINF, random_cutful_proof, random_sequent


def rewriter(p=P1):
    return _Rewriter(p, EMPTY_THEORY)


def ax(f, p=P1):
    return ProofTree(make_rule(AX, const(one(p)), p, formula=f))


def efq(s, p=P1):
    return ProofTree(make_rule(EFQ_RULE, const(zero(p)), p, bound_sequent=s))


from softseq.calculus import EFQ as EFQ_RULE


def test_ax_cut_returns_hypothesis():
    r = rewriter()
    target = soft_idempotency_proof(P1)
    cutful = r.cut(parse_formula("a"), ax(parse_formula("a")), target)
    # conclusion of AX-left cut equals the hypothesis conclusion
    out, step = cut_step_tree(cutful, P1)
    assert step.case == "B.2.1"
    assert out == target
    assert tree_validity(out) == tree_validity(cutful)


def test_efq_cut_collapses():
    r = rewriter()
    target = injection_proof(P1)
    dropped = efq(sequent([parse_formula("a")], [parse_formula("b")]))
    cutful = r.cut(parse_formula("b"), target_with_b(), dropped)
    out, step = cut_step_tree(cutful, P1)
    assert step.case == "B.2.2"
    assert out.app.rule == EFQ_RULE
    assert tree_validity(out).is_zero
    assert tree_validity(cutful).is_zero


def target_with_b():
    # a |- b, b through EFQ so the cut formula exists on the right
    return efq(sequent([parse_formula("a")], [parse_formula("b"), parse_formula("b")]))


def test_one_cut_becomes_emp():
    r = rewriter()
    one_r = ProofTree(make_rule("OneR", const(one(P1)), P1))
    one_l = ProofTree(make_rule("OneL", const(one(P1)), P1))
    cutful = r.cut(parse_formula("1"), one_r, one_l)
    out, step = cut_step_tree(cutful, P1)
    assert step.case == "B.3.6"
    assert out.app.rule == EMP
    assert tree_validity(out) == one(P1)


def test_soft_disjunction_cut_picks_better_branch():
    # branch validities (1, 0) against (1, 1): keep the first pair
    r = rewriter()
    a, b = parse_formula("a"), parse_formula("b")
    either = parse_formula("(a + b)")
    left = injection_proof(P1)  # a |- a + b with branches 1 and 0
    right_l = injection_proof(P1)
    right_r = ProofTree(
        make_rule("PlorR", red(PADD, leaf(sequent([b], [a])), leaf(sequent([b], [b]))),
                  P1, formula=either),
        (efq(sequent([b], [a])), ax(b)))
    plor_l = ProofTree(
        make_rule("PlorL", red(PCOADD, leaf(right_l.conclusion), leaf(right_r.conclusion)),
                  P1, formula=either),
        (right_l, right_r))
    cutful = r.cut(either, left, plor_l)
    assert tree_validity(cutful) == from_power_coord(P1, Fraction(1, 2))
    out, step = cut_step_tree(cutful, P1)
    assert step.case == "B.3.4"
    # the kept pair cuts on the left component a
    assert out.app.rule == CUT and out.app.formula == a
    assert tree_validity(out) == one(P1)


def test_cut_free_proofs_are_left_alone():
    for name, d in paper_proofs(P1).items():
        assert cut_metric(derivation_to_tree(d)).as_tuple() == (0, 0, 0, 0)
        result, trace = cut_eliminate(d, P1)
        assert trace == []
        assert result == d, name


def test_metric_fields():
    r = rewriter()
    target = soft_idempotency_proof(P1)
    cutful = r.cut(parse_formula("a"), ax(parse_formula("a")), target)
    metric = cut_metric(cutful)
    assert metric.n == 1 and metric.r_m == 0
    assert metric.d == 4  # AX + (AX, AX, PlorL)


def test_random_cutful_corpus():
    rng = random.Random(31)
    prover = Prover(P1)
    eliminated = 0
    while eliminated < 25:
        tree = random_cutful_proof(rng, P1, prover)
        if cut_metric(tree).n == 0:
            continue
        eliminated += 1
        assert check_derivation(tree_to_derivation(tree), P1) == []
        before = tree_validity(tree)
        out, trace = cut_eliminate_tree(tree, P1)
        assert cut_metric(out).n == 0
        assert out.conclusion == tree.conclusion
        assert leq(before, tree_validity(out))
        assert check_derivation(tree_to_derivation(out), P1) == []
        for step in trace:
            assert leq(step.validity_before, step.validity_after)


def test_term_inequality_checker():
    x1, x2 = t_var("x1"), t_var("x2")
    check_term_inequality(t_var("x1"), t_red(PADD, x1, x2), P1)  # EW shape
    check_term_inequality(t_red(PCOADD, x1, x2), x1, P1)  # ECOW shape
    with pytest.raises(SchemaInequalityError):
        check_term_inequality(t_red(PADD, x1, x2), x1, P1)


def test_structural_schema_ew():
    # weakening: t = x1, s = x1 (+) x2, absent variable defaults to EFQ
    proof = injection_proof(P1)
    s_a = proof.conclusion
    s_b = sequent([parse_formula("c")], [parse_formula("c")])
    result = apply_structural_schema(
        t_var("x1"), t_red(PADD, t_var("x1"), t_var("x2")),
        {"x1": (s_a, [proof]), "x2": (s_b, [])}, P1)
    assert check_derivation(result, P1) == []
    assert validity(result) == tree_validity(proof)  # v (+) 0 = v


def test_structural_schema_exchange_and_ecow():
    pa = injection_proof(P1)
    pb = soft_idempotency_proof(P1)
    sa, sb = pa.conclusion, pb.conclusion
    swapped = apply_structural_schema(
        t_red(TEN, t_var("x1"), t_var("x2")), t_red(TEN, t_var("x2"), t_var("x1")),
        {"x1": (sa, [pa]), "x2": (sb, [pb])}, P1)
    assert validity(swapped) == alethic.tensor(tree_validity(pb), tree_validity(pa))
    kept = apply_structural_schema(
        t_red(PCOADD, t_var("x1"), t_var("x2")), t_var("x1"),
        {"x1": (sa, [pa]), "x2": (sb, [pb])}, P1)
    assert validity(kept) == tree_validity(pa)
    before = alethic.pcoadd(tree_validity(pa), tree_validity(pb))
    assert leq(before, validity(kept))


def test_structural_schema_rejects_bad_inequality():
    pa = injection_proof(P1)
    sa = pa.conclusion
    with pytest.raises(SchemaInequalityError) as err:
        apply_structural_schema(
            t_red(PADD, t_var("x1"), t_var("x1")), t_var("x1"),
            {"x1": (sa, [pa, pa])}, P1)
    assert err.value.env  # the counterexample valuation is reported


def test_structural_schema_picks_best_occurrence():
    # two proofs of the same sequent with different validities: keep the best
    weak = ProofTree(make_rule(EFQ_RULE, const(zero(P1)), P1,
                               bound_sequent=sequent([parse_formula("a")], [parse_formula("a")])))
    strong = ax(parse_formula("a"))
    result = apply_structural_schema(
        t_red(PCOADD, t_var("x1"), t_var("x1")), t_var("x1"),
        {"x1": (strong.conclusion, [weak, strong])}, P1)
    assert validity(result) == one(P1)
