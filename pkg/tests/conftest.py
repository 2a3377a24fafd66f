"""Shared generators and independent oracles for the test suite.

Everything random is seeded, so all suites are reproducible; the naive
provability enumerator is a deliberately separate implementation (direct
recursion, no memoization, no witnesses) used as the prover's oracle.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from softseq import alethic
from softseq.alethic import Hardness, Value, leq
from softseq.calculus import (
    AX,
    EFQ,
    EMPTY_THEORY,
    CUT,
    ProofTree,
    Theory,
    make_rule,
    tree_validity,
)
from softseq.prover import Prover
from softseq.syntax import (
    Cedent,
    Formula,
    PADD,
    PCOADD,
    TEN,
    Sequent,
    as_cedent,
    complexity,
    const,
    leaf,
    negate,
    one_sided,
    red,
    sequent,
)

P1 = Hardness.finite(1)
P2 = Hardness.finite(2)
P32 = Hardness.finite(Fraction(3, 2))
PINF = Hardness.parse("inf")


def random_value(rng: random.Random, p: Hardness, max_num: int = 40) -> Value:
    roll = rng.random()
    if roll < 0.08:
        return alethic.zero(p)
    if roll < 0.16:
        return alethic.infinity(p)
    if roll < 0.24:
        return alethic.one(p)
    return alethic.from_power_coord(
        p, Fraction(rng.randint(1, max_num), rng.randint(1, max_num)))


def special_values(p: Hardness) -> list[Value]:
    return [alethic.zero(p), alethic.one(p), alethic.infinity(p)]


ATOMS = ("a", "b", "c")


def random_formula(rng: random.Random, depth: int, atoms=ATOMS, units: bool = True) -> Formula:
    if depth == 0 or rng.random() < 0.45:
        roll = rng.random()
        if units and roll < 0.10:
            return Formula("one")
        if units and roll < 0.16:
            return Formula("bot")
        if units and roll < 0.22:
            return Formula("top")
        name = rng.choice(atoms)
        return Formula("natom" if rng.random() < 0.35 else "atom", name)
    kind = rng.choice(("tensor", "par", "plor", "pland"))
    return Formula(kind, "", random_formula(rng, depth - 1, atoms, units),
                   random_formula(rng, depth - 1, atoms, units))


def random_sequent(rng: random.Random, max_complexity: int = 6) -> Sequent:
    while True:
        n_ante = rng.randint(0, 2)
        n_cons = rng.randint(0, 2)
        s = sequent(
            [random_formula(rng, rng.randint(0, 2)) for _ in range(n_ante)],
            [random_formula(rng, rng.randint(0, 2)) for _ in range(n_cons)],
        )
        if 0 < complexity(s) <= max_complexity:
            return s


def sequent_corpus(seed: int = 20260809, size: int = 220, max_complexity: int = 6) -> list[Sequent]:
    rng = random.Random(seed)
    seen: set[Sequent] = set()
    corpus: list[Sequent] = []
    while len(corpus) < size:
        s = random_sequent(rng, max_complexity)
        if s not in seen:
            seen.add(s)
            corpus.append(s)
    return corpus


# ---------------------------------------------------------------------------
# Independent naive enumeration of reduced proofs (the prover's oracle)


def naive_provability(s: Sequent, p: Hardness, theory: Theory = EMPTY_THEORY) -> Value:
    return _naive_cedent(list(one_sided(s)), p, theory)


def _naive_cedent(cedent: list[Formula], p: Hardness, theory: Theory) -> Value:
    best = alethic.zero(p)  # EFQ is always available
    if any(f.kind == "top" for f in cedent):
        return alethic.infinity(p)
    if not cedent:
        best = _vmax(best, alethic.one(p))
    if len(cedent) == 1:
        only = cedent[0]
        if only.kind == "one":
            best = _vmax(best, alethic.one(p))
        if only.kind == "atom" and theory.value(only.name) is not None:
            best = _vmax(best, theory.value(only.name))
        if only.kind == "natom" and theory.value(only.name) is not None:
            best = _vmax(best, alethic.dual(theory.value(only.name)))
    if len(cedent) == 2 and negate(cedent[0]) == cedent[1]:
        best = _vmax(best, alethic.one(p))
    for i, f in enumerate(cedent):
        rest = cedent[:i] + cedent[i + 1:]
        if f.kind == "par":
            best = _vmax(best, _naive_cedent(rest + [f.left, f.right], p, theory))
        elif f.kind == "tensor":
            for mask in range(1 << len(rest)):
                part1 = [rest[j] for j in range(len(rest)) if mask >> j & 1]
                part2 = [rest[j] for j in range(len(rest)) if not mask >> j & 1]
                best = _vmax(best, alethic.tensor(
                    _naive_cedent(part1 + [f.left], p, theory),
                    _naive_cedent(part2 + [f.right], p, theory)))
        elif f.kind == "plor":
            best = _vmax(best, alethic.padd(
                _naive_cedent(rest + [f.left], p, theory),
                _naive_cedent(rest + [f.right], p, theory)))
        elif f.kind == "pland":
            best = _vmax(best, alethic.pcoadd(
                _naive_cedent(rest + [f.left], p, theory),
                _naive_cedent(rest + [f.right], p, theory)))
    if len(cedent) >= 2:
        head, tail = cedent[0], cedent[1:]
        for mask in range(1 << len(tail)):
            part2 = [tail[j] for j in range(len(tail)) if mask >> j & 1]
            if not part2:
                continue
            part1 = [head] + [tail[j] for j in range(len(tail)) if not mask >> j & 1]
            v1 = _naive_cedent(part1, p, theory)
            v2 = _naive_cedent(part2, p, theory)
            best = _vmax(best, alethic.tensor(v1, v2))
            if theory.mix_star:
                best = _vmax(best, alethic.cotensor(v1, v2))
    return best


def _vmax(a: Value, b: Value) -> Value:
    return b if leq(a, b) else a


# ---------------------------------------------------------------------------
# Random cut-carrying proofs


def random_cutful_proof(rng: random.Random, p: Hardness, prover: Prover) -> ProofTree:
    """A checkable proof with one to three cuts, assembled from prover
    witnesses, axiom cuts, dropped-lemma cuts and principal-pair cuts."""
    from softseq.calculus import (
        PLOR_L,
        PLOR_R,
        TENSOR_L,
        TENSOR_R,
    )

    def witness(s: Sequent) -> ProofTree:
        from softseq.calculus import derivation_to_tree

        return derivation_to_tree(prover.provability(s).witness)

    def cut(f: Formula, left: ProofTree, right: ProofTree) -> ProofTree:
        premise = red(TEN, leaf(left.conclusion), leaf(right.conclusion))
        return ProofTree(make_rule(CUT, premise, p, formula=f), (left, right))

    def ax(f: Formula) -> ProofTree:
        return ProofTree(make_rule(AX, const(alethic.one(p)), p, formula=f))

    def efq(s: Sequent) -> ProofTree:
        return ProofTree(make_rule(EFQ, const(alethic.zero(p)), p, bound_sequent=s))

    def base() -> ProofTree:
        choice = rng.random()
        if choice < 0.35:
            x = random_formula(rng, rng.randint(0, 1))
            y = random_formula(rng, rng.randint(0, 1))
            both = Formula("tensor", "", x, y)
            left = ProofTree(
                make_rule(TENSOR_R, red(TEN, leaf(sequent([x], [x])), leaf(sequent([y], [y]))),
                          p, formula=both),
                (witness(sequent([x], [x])), witness(sequent([y], [y]))))
            inner = witness(sequent([x, y], [both]))
            right = ProofTree(
                make_rule(TENSOR_L, leaf(inner.conclusion), p, formula=both), (inner,))
            return cut(both, left, right)
        if choice < 0.7:
            x = random_formula(rng, rng.randint(0, 1))
            y = random_formula(rng, rng.randint(0, 1))
            either = Formula("plor", "", x, y)
            left = ProofTree(
                make_rule(PLOR_R, red(PADD, leaf(sequent([x], [x])), leaf(sequent([x], [y]))),
                          p, formula=either),
                (witness(sequent([x], [x])), witness(sequent([x], [y]))))
            inner_l = witness(sequent([x], [either]))
            inner_r = witness(sequent([y], [either]))
            right = ProofTree(
                make_rule(PLOR_L, red(PCOADD, leaf(inner_l.conclusion), leaf(inner_r.conclusion)),
                          p, formula=either),
                (inner_l, inner_r))
            return cut(either, left, right)
        return witness(random_sequent(rng, 5))

    tree = base()
    extra = rng.randint(0, 2)
    for _ in range(extra):
        concl = tree.conclusion
        move = rng.random()
        if move < 0.4 and concl.cons:
            f = rng.choice(concl.cons)
            tree = cut(f, tree, ax(f))
        elif move < 0.8 and concl.ante:
            f = rng.choice(concl.ante)
            tree = cut(f, ax(f), tree)
        else:
            lemma = random_formula(rng, 1)
            side = witness(sequent([], [lemma]))
            dropped = efq(sequent(list(concl.ante) + [lemma], concl.cons))
            tree = cut(lemma, side, dropped)
    return tree


@pytest.fixture(scope="session")
def corpus() -> list[Sequent]:
    return sequent_corpus()
