"""Provability search: worked values, the naive oracle, and the properties."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from softseq import alethic
from softseq.alethic import dual, from_power_coord, from_rational, leq, one, to_float, zero
from softseq.calculus import (
    EFQ,
    check_derivation,
    derivation_to_tree,
    parse_theory,
    tree_validity,
    validity,
)
from softseq.prover import (
    ComplexityCapExceeded,
    Prover,
    ProverOptions,
    provability,
    provability_value,
    qualitative_provable,
    structure_provability,
)
from softseq.syntax import complexity, parse_sequent, parse_structure, print_sequent
from conftest import (
    P1,
    P2,
    PINF,
    naive_provability,
    random_formula,
    random_sequent,
    sequent_corpus,
)


def coord(p, q):
    return from_power_coord(p, Fraction(q))


WORKED_EXAMPLES = [
    ("a + a |- a", Fraction(1, 2)),
    ("a & b |- b & a", Fraction(1, 2)),
    ("|- bot", 0),
    ("a |- (a + b)", 1),
    ("a & b |- a & b", 1),
    ("(a & b) & c |- a & (b & c)", Fraction(1, 3)),  # see the README note on this value
]


@pytest.mark.parametrize("text,expected", WORKED_EXAMPLES)
def test_worked_values_at_p1(text, expected):
    assert provability_value(parse_sequent(text), P1) == coord(P1, expected)


def test_idempotency_across_hardness():
    s = parse_sequent("a + a |- a")
    assert provability_value(s, P2) == coord(P2, Fraction(1, 2))
    assert provability_value(s, PINF) == one(PINF)


def test_injection_across_hardness():
    s = parse_sequent("a |- (a + b)")
    for p in (P1, P2, PINF):
        assert provability_value(s, p) == one(p)


def test_consistency():
    for p in (P1, PINF):
        assert provability_value(parse_sequent("|- bot"), p).is_zero


def test_witness_integrity():
    rng = random.Random(21)
    for _ in range(40):
        s = random_sequent(rng, 6)
        for p in (P1, PINF):
            result = provability(s, p)
            assert check_derivation(result.witness, p) == []
            assert validity(result.witness) == result.value


def test_prover_matches_naive_enumeration():
    rng = random.Random(22)
    checked = 0
    while checked < 60:
        s = random_sequent(rng, 4)
        if complexity(s) > 4:
            continue
        checked += 1
        for p in (P1, P2):
            assert provability_value(s, p) == naive_provability(s, p), print_sequent(s)


def test_prover_matches_naive_enumeration_with_theory():
    theory = parse_theory("atom a = 2\natom b = 1/3\nmix_star = true\n", P1)
    rng = random.Random(23)
    prover = Prover(P1, theory)
    checked = 0
    while checked < 40:
        s = random_sequent(rng, 4)
        if complexity(s) > 4:
            continue
        checked += 1
        assert prover.value_of(s) == naive_provability(s, P1, theory), print_sequent(s)


def test_structure_provability():
    prover = Prover(P1)
    h = parse_structure("(padd (seq a |- a) (seq |- bot))", P1)
    assert prover.structure_provability(h) == one(P1)
    assert prover.structure_provability(parse_structure("(const 2/3)", P1)) == \
        from_rational(P1, Fraction(2, 3))
    assert prover.structure_provability(parse_structure("(seq a |- a)", P1)) == one(P1)
    # the two extensions of provability to structures agree on unary structures
    rng = random.Random(24)
    for _ in range(20):
        s = random_sequent(rng, 5)
        assert structure_provability(parse_structure(f"(seq {print_sequent(s)})", P1), P1) == \
            provability_value(s, P1)


def test_qualitative_provability():
    assert qualitative_provable(parse_sequent("a |- a"))
    assert not qualitative_provable(parse_sequent("|- bot"))
    assert qualitative_provable(parse_sequent("a & b |- a & b"))
    rng = random.Random(25)
    prover = Prover(P1)
    for _ in range(80):
        s = random_sequent(rng, 6)
        assert prover.qualitative_provable(s) == (not prover.value_of(s).is_zero)


def test_complexity_cap():
    options = ProverOptions(complexity_cap=3)
    with pytest.raises(ComplexityCapExceeded):
        Prover(P1, options=options).value_of(parse_sequent("(a & b) & c |- a & (b & c)"))
    assert Prover(P1, options=options).value_of(parse_sequent("a |- a")) == one(P1)


def test_unary_additives_at_infinity(corpus):
    plain = Prover(PINF)
    optimized = Prover(PINF, options=ProverOptions(unary_additives_at_infinity=True))
    for s in corpus[:80]:
        expected = plain.value_of(s)
        result = optimized.provability(s)
        assert result.value == expected
        assert check_derivation(result.witness, PINF) == []
        assert validity(result.witness) == expected
        rules = _rules_of(derivation_to_tree(result.witness))
        if not expected.is_zero:
            assert EFQ not in rules


def _rules_of(tree):
    out = {tree.app.rule}
    for child in tree.children:
        out |= _rules_of(child)
    return out


def test_cross_hardness_consistency(corpus):
    # positive provability at p=1 iff provability at least 1 at p=inf
    soft = Prover(P1)
    hard = Prover(PINF)
    for s in corpus:
        positive = not soft.value_of(s).is_zero
        at_least_one = leq(one(PINF), hard.value_of(s))
        assert positive == at_least_one, print_sequent(s)


def test_memo_determinism():
    prover = Prover(P1)
    s = parse_sequent("(a + b) & a |- a + (b & a)")
    first = prover.provability(s)
    second = prover.provability(s)
    assert first.value == second.value
    assert first.witness == second.witness


def test_prelinearity_in_weighted_theory():
    # dual(prov(A |- B)) <= prov(B |- A) for positive finite atom weights
    theory = parse_theory("atom a = 2\natom b = 3\nmix_star = true\n", P1)
    prover = Prover(P1, theory)
    rng = random.Random(26)
    seen = set()
    for _ in range(160):
        lhs = random_formula(rng, rng.randint(0, 2), atoms=("a", "b"))
        rhs = random_formula(rng, rng.randint(0, 2), atoms=("a", "b"))
        s = parse_sequent(f"{lhs} |- {rhs}")
        if complexity(s) > 5 or (lhs, rhs) in seen:
            continue
        seen.add((lhs, rhs))
        forward = prover.value_of(parse_sequent(f"{lhs} |- {rhs}"))
        backward = prover.value_of(parse_sequent(f"{rhs} |- {lhs}"))
        assert leq(dual(forward), backward), (str(lhs), str(rhs))
