"""Named example proofs used as golden test data and format documentation.

``paper_proofs`` returns the three standing examples over atoms a, b:

* ``soft-idempotency``: a + a |- a by branching the soft-or on the left
  over two axioms; evaluates to the idempotency cost (coordinate 1/2).
* ``inj``: a |- (a + b), the injection whose second branch is discharged
  by EFQ; evaluates to 1.
* ``eta``: the expansion of a & b |- a & b down to atomic axioms, with
  two EFQ branches; evaluates to the same coordinate 1/2 instead of 1.

``odds_proof`` builds the conditional-probability template for a theory
of weighted atoms: one MIX of an AtomL against an AtomR per (given,
wanted) outcome pair, folded by soft-or branching on the left over the
given event and on the right over the intersection.
"""

from __future__ import annotations

from .alethic import Hardness, Value, dual, one, zero
from .calculus import (
    ATOM_L,
    ATOM_R,
    AX,
    EFQ,
    MIX,
    PLAND_L,
    PLAND_R,
    PLOR_L,
    PLOR_R,
    Derivation,
    ProofTree,
    Theory,
    make_rule,
    tree_to_derivation,
)
from .syntax import (
    PADD,
    PCOADD,
    TEN,
    Formula,
    Sequent,
    atom,
    const,
    leaf,
    pland_f,
    plor_f,
    red,
    sequent,
)


def _ax(f: Formula, p: Hardness) -> ProofTree:
    return ProofTree(make_rule(AX, const(one(p)), p, formula=f))


def _efq(s: Sequent, p: Hardness) -> ProofTree:
    return ProofTree(make_rule(EFQ, const(zero(p)), p, bound_sequent=s))


def soft_idempotency_proof(p: Hardness, a: Formula | None = None) -> ProofTree:
    a = a or atom("a")
    ax = _ax(a, p)
    premise = red(PCOADD, leaf(ax.conclusion), leaf(ax.conclusion))
    app = make_rule(PLOR_L, premise, p, formula=plor_f(a, a))
    return ProofTree(app, (ax, ax))


def injection_proof(p: Hardness, a: Formula | None = None, b: Formula | None = None) -> ProofTree:
    a, b = a or atom("a"), b or atom("b")
    ax = _ax(a, p)
    efq = _efq(sequent([a], [b]), p)
    premise = red(PADD, leaf(ax.conclusion), leaf(efq.conclusion))
    app = make_rule(PLOR_R, premise, p, formula=plor_f(a, b))
    return ProofTree(app, (ax, efq))


def eta_expansion_proof(p: Hardness, a: Formula | None = None, b: Formula | None = None) -> ProofTree:
    a, b = a or atom("a"), b or atom("b")
    meet = pland_f(a, b)
    left = ProofTree(
        make_rule(
            PLAND_L,
            red(PADD, leaf(sequent([a], [a])), leaf(sequent([b], [a]))),
            p,
            formula=meet,
        ),
        (_ax(a, p), _efq(sequent([b], [a]), p)),
    )
    right = ProofTree(
        make_rule(
            PLAND_L,
            red(PADD, leaf(sequent([a], [b])), leaf(sequent([b], [b]))),
            p,
            formula=meet,
        ),
        (_efq(sequent([a], [b]), p), _ax(b, p)),
    )
    app = make_rule(
        PLAND_R,
        red(PCOADD, leaf(left.conclusion), leaf(right.conclusion)),
        p,
        formula=meet,
    )
    return ProofTree(app, (left, right))


def plor_fold(names: list[str]) -> Formula:
    """Left-associated soft-or over atoms sorted by name."""
    if not names:
        raise ValueError("empty event has no formula")
    ordered = sorted(names)
    f = atom(ordered[0])
    for name in ordered[1:]:
        f = plor_f(f, atom(name))
    return f


def odds_proof(theory: Theory, given: set[str], wanted: set[str], p: Hardness) -> ProofTree:
    """Template proof of  given-event |- intersection-event  in a weighted theory."""
    inter = sorted(given & wanted)
    if not inter:
        raise ValueError("empty intersection; no template proof exists")
    g_sorted = sorted(given)
    g_formula = plor_fold(g_sorted)

    def pair_proof(g: str, w: str) -> ProofTree:
        atom_l = ProofTree(make_rule(ATOM_L, const(dual(theory.value(g))), p, theory, atom_name=g))
        atom_r = ProofTree(make_rule(ATOM_R, const(theory.value(w)), p, theory, atom_name=w))
        premise = red(TEN, leaf(atom_l.conclusion), leaf(atom_r.conclusion))
        return ProofTree(make_rule(MIX, premise, p, theory), (atom_l, atom_r))

    def given_fold(f: Formula, w: str) -> ProofTree:
        # prove  f |- w  by splitting the soft-or f on the left
        if f.kind == "atom":
            return pair_proof(f.name, w)
        left = given_fold(f.left, w)
        right = pair_proof(f.right.name, w)
        premise = red(PCOADD, leaf(left.conclusion), leaf(right.conclusion))
        return ProofTree(make_rule(PLOR_L, premise, p, theory, formula=f), (left, right))

    def wanted_fold(f: Formula) -> ProofTree:
        # prove  g_formula |- f  by summing over the intersection outcomes
        if f.kind == "atom":
            return given_fold(g_formula, f.name)
        left = wanted_fold(f.left)
        right = given_fold(g_formula, f.right.name)
        premise = red(PADD, leaf(left.conclusion), leaf(right.conclusion))
        return ProofTree(make_rule(PLOR_R, premise, p, theory, formula=f), (left, right))

    return wanted_fold(plor_fold(inter))


def paper_proofs(p: Hardness) -> dict[str, Derivation]:
    return {
        "soft-idempotency": tree_to_derivation(soft_idempotency_proof(p)),
        "inj": tree_to_derivation(injection_proof(p)),
        "eta": tree_to_derivation(eta_expansion_proof(p)),
    }
