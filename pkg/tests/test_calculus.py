"""Checker, evaluator, fixtures and the proof file format."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from softseq import alethic
from softseq.alethic import from_power_coord, from_rational, infinity, one, zero
from softseq.calculus import (
    AX,
    EMPTY_THEORY,
    PLOR_L,
    PLOR_R1,
    SchemaViolation,
    Theory,
    check_derivation,
    d_horiz,
    d_id,
    d_vert,
    derivation_to_tree,
    eval_structure,
    infer_conclusion,
    make_rule,
    parse_derivation,
    parse_theory,
    print_derivation,
    print_theory,
    ProofTree,
    tree_to_derivation,
    tree_validity,
    validity,
)
from softseq.fixtures import (
    eta_expansion_proof,
    injection_proof,
    odds_proof,
    paper_proofs,
    soft_idempotency_proof,
)
from softseq.bayes import Density, bayes_theory
from softseq.syntax import (
    PADD,
    PCOADD,
    TEN,
    const,
    leaf,
    parse_formula,
    parse_sequent,
    parse_structure,
    red,
    sequent,
)
from conftest import P1, P2, PINF


def test_eval_structure_examples():
    assert eval_structure(parse_structure("(pcoadd (const 1) (const 1))", P1)) == \
        from_power_coord(P1, Fraction(1, 2))
    assert eval_structure(parse_structure("(ten (const 0) (const inf))", P1)).is_zero
    assert eval_structure(parse_structure("(cot (const 0) (const inf))", P1)).is_infinite
    with pytest.raises(ValueError):
        eval_structure(parse_structure("(seq a |- a)", P1))


def test_fixture_validities():
    for p, coord in ((P1, Fraction(1, 2)), (P2, Fraction(1, 2))):
        proofs = paper_proofs(p)
        assert not check_derivation(proofs["soft-idempotency"], p)
        assert validity(proofs["soft-idempotency"]) == from_power_coord(p, coord)
        assert validity(proofs["inj"]) == one(p)
        assert validity(proofs["eta"]) == from_power_coord(p, coord)
        for d in proofs.values():
            assert check_derivation(d, p) == []


def test_checker_rejects_wrong_red_connective():
    # soft-or-left branching with the wrong red connective is a schema violation
    ax = soft_idempotency_proof(P1).children[0]
    bad_premise = red(PADD, leaf(ax.conclusion), leaf(ax.conclusion))
    with pytest.raises(SchemaViolation, match="red connective"):
        infer_conclusion(PLOR_L, bad_premise, P1, EMPTY_THEORY,
                         formula=parse_formula("(a + a)"))


def test_checker_rejects_wrong_constant_and_composition():
    good = paper_proofs(P1)["inj"]
    # wrong axiom constant
    bad_ax = d_id(const(from_rational(P1, 2)))
    broken = d_vert(
        d_horiz(PADD, bad_ax, d_id(const(zero(P1)))),
        good.lower,
    )
    violations = check_derivation(broken, P1)
    assert violations and any("mismatch" in str(v) or "constant" in str(v) for v in violations)
    # hardness mismatch inside a constant
    alien = d_id(const(one(P2)))
    assert check_derivation(alien, P1)


def test_checker_rejects_unary_soft_rules_at_finite_hardness():
    inj = injection_proof(PINF)
    ax = inj.children[0]
    unary = ProofTree(
        make_rule(PLOR_R1, leaf(ax.conclusion), PINF, formula=parse_formula("(a + b)")),
        (ax,))
    assert check_derivation(tree_to_derivation(unary), PINF) == []
    with pytest.raises(SchemaViolation, match="p=inf"):
        infer_conclusion(PLOR_R1, leaf(injection_proof(P1).children[0].conclusion), P1,
                         EMPTY_THEORY, formula=parse_formula("(a + b)"))


def test_horizontal_composition_validity():
    p = P1
    left = paper_proofs(p)["inj"]
    right = paper_proofs(p)["soft-idempotency"]
    for op, combine in ((TEN, alethic.tensor), (PADD, alethic.padd),
                        (PCOADD, alethic.pcoadd)):
        combined = d_horiz(op, left, right)
        assert check_derivation(combined, p) == []
        assert validity(combined) == combine(validity(left), validity(right))


def test_proof_file_round_trip():
    rng = random.Random(8)
    for p in (P1, P2):
        for name, d in paper_proofs(p).items():
            text = print_derivation(d)
            assert parse_derivation(text, p) == d, name


def test_derivation_tree_round_trip():
    for p in (P1, PINF):
        for name, d in paper_proofs(p).items():
            tree = derivation_to_tree(d)
            assert tree_to_derivation(tree) == d
            assert tree_validity(tree) == validity(d)


def test_theory_file_round_trip():
    theory = parse_theory("atom a = 1/2\natom b = inf\nmix_star = true\n", P1)
    assert theory.mix_star
    assert theory.value("a") == from_rational(P1, Fraction(1, 2))
    assert theory.value("b").is_infinite
    assert parse_theory(print_theory(theory), P1) == theory
    with pytest.raises(ValueError):
        parse_theory("atom = 3", P1)


def test_theory_rules_require_enabled_theory():
    with pytest.raises(SchemaViolation, match="not in the active theory"):
        infer_conclusion("AtomR", const(one(P1)), P1, EMPTY_THEORY, atom_name="a")
    with pytest.raises(SchemaViolation, match="MixStar"):
        infer_conclusion("MixStar", red("cot", leaf(sequent([], [])), leaf(sequent([], []))),
                         P1, EMPTY_THEORY)


def test_bayes_template_fixture():
    density = Density.make({"x": Fraction(1, 2), "y": Fraction(1, 2)})
    theory = bayes_theory(density, P1)
    proof = odds_proof(theory, {"x"}, {"x"}, P1)
    derivation = tree_to_derivation(proof)
    assert check_derivation(derivation, P1, theory) == []
    assert proof.conclusion == parse_sequent("x |- x")
    assert tree_validity(proof) == one(P1)
    # the three-outcome template from the worked example
    density = Density.make({"x": Fraction(1, 2), "y": Fraction(1, 3), "z": Fraction(1, 6)})
    theory = bayes_theory(density, P1)
    proof = odds_proof(theory, {"x", "y"}, {"y", "z"}, P1)
    assert check_derivation(tree_to_derivation(proof), P1, theory) == []
    assert tree_validity(proof) == from_rational(P1, Fraction(2, 5))


def test_eta_expansion_is_not_the_axiom():
    # the expanded reflexivity proof loses validity against the one-step axiom
    p = P2
    axiom = ProofTree(make_rule(AX, const(one(p)), p, formula=parse_formula("(a & b)")))
    assert tree_validity(axiom) == one(p)
    assert tree_validity(eta_expansion_proof(p)) == from_power_coord(p, Fraction(1, 2))
