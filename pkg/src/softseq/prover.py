"""Exact decision of provability by memoized search over reduced proofs.

The search runs on the consequent-only form |- Gamma^perp, Delta of the
input sequent, which replaces the explicit duality rules.  Per cedent it
enumerates: the axiom on an exact dual pair, the empty-sequent axiom,
EFQ, the unit axiom, the top axiom (which short-circuits to infinity),
the four logical right rules (with every 2-partition of the context for
tensor), MIX over proper 2-partitions, and the theory leaves and MixStar
when a theory is active.  Aggregation is maximum over alternatives; the
value of a branching rule combines its premises with the rule's red
connective.  Results are memoized per canonical cedent; a prover instance
is bound to one (hardness, theory) pair, so the memo key is the cedent.

Witnesses are rebuilt as checkable derivations: the one-sided core uses
right rules only, dual pairs close through an axiom plus one dual step,
and a final block of dual steps restores the original two-sided
conclusion.  Ties between equal-value witnesses are broken by the
lexicographically smallest proof encoding.

Instances own their mutable memo tables and must not be shared across
threads; distinct instances may run concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import alethic
from .alethic import Hardness, Value, leq
from .calculus import (
    ATOM_L,
    ATOM_R,
    AX,
    DUAL_L,
    DUAL_R,
    EFQ,
    EMP,
    MIX,
    MIX_STAR,
    ONE_R,
    PAR_R,
    PLAND_R,
    PLOR_R,
    PLOR_R1,
    PLOR_R2,
    TENSOR_R,
    TOP_R,
    EMPTY_THEORY,
    Derivation,
    ProofTree,
    Theory,
    make_rule,
    tree_to_derivation,
    tree_validity,
)
from .syntax import (
    CONST,
    LEAF,
    COT,
    PADD,
    PCOADD,
    TEN,
    Cedent,
    Formula,
    Sequent,
    Structure,
    as_cedent,
    cedent_complexity,
    cedent_remove,
    complexity,
    connective_count,
    const,
    leaf,
    negate,
    one_sided,
    red,
    sequent,
)


class ComplexityCapExceeded(RuntimeError):
    def __init__(self, measured: int, cap: int):
        super().__init__(f"sequent complexity {measured} exceeds the cap {cap}")
        self.measured = measured
        self.cap = cap


@dataclass
class ProverOptions:
    unary_additives_at_infinity: bool = False  # effective at p = inf only
    complexity_cap: int | None = None
    trace: bool = False


@dataclass
class SearchStats:
    expanded: int = 0
    memo_hits: int = 0
    candidates: int = 0


@dataclass
class ProvabilityResult:
    value: Value
    witness: Derivation
    explored: SearchStats


_ZERO_A, _POS_A, _INF_A = 0, 1, 2  # abstract positivity domain


def _abs_tensor(x: int, y: int) -> int:
    if x == _ZERO_A or y == _ZERO_A:
        return _ZERO_A
    return _INF_A if _INF_A in (x, y) else _POS_A


def _abs_cotensor(x: int, y: int) -> int:
    if x == _INF_A or y == _INF_A:
        return _INF_A
    return _ZERO_A if _ZERO_A in (x, y) else _POS_A


def _abs_padd(x: int, y: int) -> int:
    return max(x, y) if _INF_A not in (x, y) else _INF_A


def _abs_pcoadd(x: int, y: int) -> int:
    if x == _ZERO_A or y == _ZERO_A:
        return _ZERO_A
    return min(x, y)


def _abstract(v: Value) -> int:
    if v.is_zero:
        return _ZERO_A
    return _INF_A if v.is_infinite else _POS_A


class Prover:
    """Maximal-validity search bound to one hardness and theory."""

    def __init__(self, hardness: Hardness, theory: Theory = EMPTY_THEORY,
                 options: ProverOptions | None = None):
        if theory.hardness is not None and theory.hardness != hardness:
            raise ValueError("theory values do not share the prover hardness")
        self.hardness = hardness
        self.theory = theory
        self.options = options or ProverOptions()
        self._memo: dict[Cedent, tuple[Value, ProofTree | None]] = {}
        self._qual_memo: dict[Cedent, int] = {}
        self._encodings: dict[int, str] = {}
        self.stats = SearchStats()
        self._unary_mode = (
            self.options.unary_additives_at_infinity and not hardness.is_finite
        )

    # -- public entry points ------------------------------------------------

    def provability(self, s: Sequent) -> ProvabilityResult:
        self._check_cap(complexity(s))
        cedent = one_sided(s)
        value, tree = self._search(cedent)
        if tree is None:
            tree = self._efq_tree(sequent([], cedent))
        witness_tree = self._restore_two_sided(tree, s)
        witness = tree_to_derivation(witness_tree)
        got = tree_validity(witness_tree)
        if got != value:
            raise AssertionError(
                f"witness integrity failure: search value {value}, witness value {got}")
        return ProvabilityResult(value, witness, self.stats)

    def value_of(self, s: Sequent) -> Value:
        self._check_cap(complexity(s))
        return self._search(one_sided(s))[0]

    def structure_provability(self, h: Structure) -> Value:
        ops = {TEN: alethic.tensor, COT: alethic.cotensor,
               PADD: alethic.padd, PCOADD: alethic.pcoadd}
        if h.kind == LEAF:
            return self.value_of(h.seq)
        if h.kind == CONST:
            if h.value.hardness != self.hardness:
                raise ValueError("structure constant at a different hardness")
            return h.value
        return ops[h.kind](self.structure_provability(h.left), self.structure_provability(h.right))

    def qualitative_provable(self, s: Sequent) -> bool:
        """Positivity of provability, decided without computing magnitudes."""
        return self._qual_search(one_sided(s)) != _ZERO_A

    # -- helpers ------------------------------------------------------------

    def _check_cap(self, measured: int) -> None:
        cap = self.options.complexity_cap
        if cap is not None and measured > cap:
            raise ComplexityCapExceeded(measured, cap)

    def _efq_tree(self, concl: Sequent) -> ProofTree:
        app = make_rule(EFQ, const(alethic.zero(self.hardness)), self.hardness,
                        self.theory, bound_sequent=concl)
        return ProofTree(app)

    def _encode(self, t: ProofTree) -> str:
        key = id(t)
        enc = self._encodings.get(key)
        if enc is None:
            parts = [t.app.rule]
            if t.app.formula is not None:
                parts.append(str(t.app.formula))
            enc = "(" + " ".join(parts) + "".join(self._encode(c) for c in t.children) + ")"
            self._encodings[key] = enc
        return enc

    def _restore_two_sided(self, tree: ProofTree, s: Sequent) -> ProofTree:
        """Append one dual step per antecedent formula to conclude s itself."""
        for f in s.ante:
            app = make_rule(DUAL_L, leaf(tree.conclusion), self.hardness, self.theory,
                            formula=negate(f))
            tree = ProofTree(app, (tree,))
        if tree.conclusion != s:
            raise AssertionError("two-sided restoration failed")
        return tree

    # -- exact search ---------------------------------------------------------

    def _search(self, cedent: Cedent) -> tuple[Value, ProofTree | None]:
        hit = self._memo.get(cedent)
        if hit is not None:
            self.stats.memo_hits += 1
            return hit
        self.stats.expanded += 1
        if self.options.trace:
            print(f"expand |- {', '.join(map(str, cedent))}")
        # Block re-entry on the same cedent: premises are strictly smaller,
        # so recursion cannot revisit; the guard documents that invariant.
        best_value: Value | None = None
        best_tree: ProofTree | None = None
        best_enc: str | None = None

        def offer(value: Value, tree: ProofTree) -> None:
            nonlocal best_value, best_tree, best_enc
            self.stats.candidates += 1
            if best_value is None or not leq(value, best_value):
                best_value, best_tree, best_enc = value, tree, None
                return
            if leq(best_value, value):  # equal values: smallest encoding wins
                if best_enc is None:
                    best_enc = self._encode(best_tree)
                enc = self._encode(tree)
                if enc < best_enc:
                    best_tree, best_enc = tree, enc

        for candidate in self._candidates(cedent):
            offer(*candidate)
            if best_value is not None and best_value.is_infinite:
                break
        if best_value is None:
            best_value = alethic.zero(self.hardness)
            best_tree = None
        result = (best_value, best_tree)
        self._memo[cedent] = result
        return result

    def _guarded(self, parent: Cedent, child: Cedent) -> Cedent:
        parent_key = (cedent_complexity(parent), sum(connective_count(f) for f in parent))
        child_key = (cedent_complexity(child), sum(connective_count(f) for f in child))
        if child_key >= parent_key:
            raise AssertionError(
                f"search measure did not decrease: {parent} -> {child}")
        return child

    def _candidates(self, cedent: Cedent):
        p, theory = self.hardness, self.theory
        one_v = alethic.one(p)
        top_f = Formula("top")
        # top axiom short-circuits to infinity
        if top_f in cedent:
            concl = sequent([], cedent)
            app = make_rule(TOP_R, const(alethic.infinity(p)), p, theory, bound_sequent=concl)
            yield alethic.infinity(p), ProofTree(app)
            return
        if not self._unary_mode:
            yield alethic.zero(p), self._efq_tree(sequent([], cedent))
        if not cedent:
            yield one_v, ProofTree(make_rule(EMP, const(one_v), p, theory))
            return
        if len(cedent) == 1:
            only = cedent[0]
            if only.kind == "one":
                yield one_v, ProofTree(make_rule(ONE_R, const(one_v), p, theory))
            if only.kind == "atom":
                v = theory.value(only.name)
                if v is not None:
                    app = make_rule(ATOM_R, const(v), p, theory, atom_name=only.name)
                    yield v, ProofTree(app)
            if only.kind == "natom":
                v = theory.value(only.name)
                if v is not None:
                    atom_l = ProofTree(
                        make_rule(ATOM_L, const(alethic.dual(v)), p, theory, atom_name=only.name))
                    dual_r = make_rule(DUAL_R, leaf(atom_l.conclusion), p, theory,
                                       formula=Formula("atom", only.name))
                    yield alethic.dual(v), ProofTree(dual_r, (atom_l,))
        if len(cedent) == 2 and cedent[1] == negate(cedent[0]):
            # |- A^perp, A closes through AX plus one dual step
            yield one_v, self._ax_pair_tree(cedent)
        seen: set[Formula] = set()
        for index, f in enumerate(cedent):
            if f in seen:
                continue
            seen.add(f)
            rest = cedent[:index] + cedent[index + 1:]
            if f.kind == "par":
                child = self._guarded(cedent, as_cedent(rest + (f.left, f.right)))
                value, tree = self._search(child)
                if tree is not None:
                    app = make_rule(PAR_R, leaf(tree.conclusion), p, theory, formula=f)
                    yield value, ProofTree(app, (tree,))
            elif f.kind == "tensor":
                seen_parts: set[Cedent] = set()
                for part1, part2 in _splits(rest):
                    c1 = self._guarded(cedent, as_cedent(part1 + (f.left,)))
                    if c1 in seen_parts:
                        continue
                    seen_parts.add(c1)
                    c2 = self._guarded(cedent, as_cedent(part2 + (f.right,)))
                    v1, t1 = self._search(c1)
                    if t1 is None:
                        continue
                    v2, t2 = self._search(c2)
                    if t2 is None:
                        continue
                    premise = red(TEN, leaf(t1.conclusion), leaf(t2.conclusion))
                    app = make_rule(TENSOR_R, premise, p, theory, formula=f)
                    yield alethic.tensor(v1, v2), ProofTree(app, (t1, t2))
            elif f.kind == "plor":
                yield from self._soft_candidates(cedent, rest, f, PLOR_R, PADD, alethic.padd,
                                                 PLOR_R1, PLOR_R2)
            elif f.kind == "pland":
                c1 = self._guarded(cedent, as_cedent(rest + (f.left,)))
                c2 = self._guarded(cedent, as_cedent(rest + (f.right,)))
                v1, t1 = self._search(c1)
                v2, t2 = self._search(c2)
                if t1 is not None and t2 is not None:
                    premise = red(PCOADD, leaf(t1.conclusion), leaf(t2.conclusion))
                    app = make_rule(PLAND_R, premise, p, theory, formula=f)
                    yield alethic.pcoadd(v1, v2), ProofTree(app, (t1, t2))
        if len(cedent) >= 2:
            head, tail = cedent[0], cedent[1:]
            seen_splits: set[Cedent] = set()
            for part1, part2 in _splits(tail):
                left_part = as_cedent(part1 + (head,))
                right_part = as_cedent(part2)
                if not right_part or right_part in seen_splits:
                    continue
                seen_splits.add(right_part)
                c1 = self._guarded(cedent, left_part)
                c2 = self._guarded(cedent, right_part)
                v1, t1 = self._search(c1)
                v2, t2 = self._search(c2)
                if t1 is None or t2 is None:
                    continue
                premise = red(TEN, leaf(t1.conclusion), leaf(t2.conclusion))
                app = make_rule(MIX, premise, p, theory)
                yield alethic.tensor(v1, v2), ProofTree(app, (t1, t2))
                if theory.mix_star:
                    premise = red(COT, leaf(t1.conclusion), leaf(t2.conclusion))
                    app = make_rule(MIX_STAR, premise, p, theory)
                    yield alethic.cotensor(v1, v2), ProofTree(app, (t1, t2))

    def _soft_candidates(self, cedent, rest, f, rule, connective, op, unary1, unary2):
        p, theory = self.hardness, self.theory
        c1 = self._guarded(cedent, as_cedent(rest + (f.left,)))
        c2 = self._guarded(cedent, as_cedent(rest + (f.right,)))
        v1, t1 = self._search(c1)
        v2, t2 = self._search(c2)
        if self._unary_mode:
            if t1 is not None:
                app = make_rule(unary1, leaf(t1.conclusion), p, theory, formula=f)
                yield v1, ProofTree(app, (t1,))
            if t2 is not None:
                app = make_rule(unary2, leaf(t2.conclusion), p, theory, formula=f)
                yield v2, ProofTree(app, (t2,))
            return
        if t1 is not None and t2 is not None:
            premise = red(connective, leaf(t1.conclusion), leaf(t2.conclusion))
            app = make_rule(rule, premise, p, theory, formula=f)
            yield op(v1, v2), ProofTree(app, (t1, t2))

    def _ax_pair_tree(self, cedent: Cedent) -> ProofTree:
        # pick the positive component as the axiom formula when possible
        a, b = cedent
        chosen = b if b.kind != "natom" else a
        p, theory = self.hardness, self.theory
        ax = ProofTree(make_rule(AX, const(alethic.one(p)), p, theory, formula=chosen))
        dual_r = make_rule(DUAL_R, leaf(ax.conclusion), p, theory, formula=chosen)
        return ProofTree(dual_r, (ax,))

    # -- qualitative search ---------------------------------------------------

    def _qual_search(self, cedent: Cedent) -> int:
        hit = self._qual_memo.get(cedent)
        if hit is not None:
            return hit
        if Formula("top") in cedent:
            best = _INF_A
        else:
            best = self._qual_candidates(cedent)
        self._qual_memo[cedent] = best
        return best

    def _qual_candidates(self, cedent: Cedent) -> int:
        theory = self.theory
        best = _ZERO_A
        if not cedent:
            return _POS_A
        if len(cedent) == 1:
            only = cedent[0]
            if only.kind == "one":
                best = max(best, _POS_A)
            if only.kind in ("atom", "natom"):
                v = theory.value(only.name)
                if v is not None:
                    a = _abstract(v)
                    best = max(best, a if only.kind == "atom" else _abs_dual(a))
        if len(cedent) == 2 and cedent[1] == negate(cedent[0]):
            best = max(best, _POS_A)
        seen: set[Formula] = set()
        for index, f in enumerate(cedent):
            if f in seen:
                continue
            seen.add(f)
            rest = cedent[:index] + cedent[index + 1:]
            if f.kind == "par":
                best = max(best, self._qual_search(as_cedent(rest + (f.left, f.right))))
            elif f.kind == "tensor":
                for part1, part2 in _splits(rest):
                    a = self._qual_search(as_cedent(part1 + (f.left,)))
                    b = self._qual_search(as_cedent(part2 + (f.right,)))
                    best = max(best, _abs_tensor(a, b))
            elif f.kind == "plor":
                a = self._qual_search(as_cedent(rest + (f.left,)))
                b = self._qual_search(as_cedent(rest + (f.right,)))
                best = max(best, _abs_padd(a, b))
            elif f.kind == "pland":
                a = self._qual_search(as_cedent(rest + (f.left,)))
                b = self._qual_search(as_cedent(rest + (f.right,)))
                best = max(best, _abs_pcoadd(a, b))
            if best == _INF_A:
                return best
        if len(cedent) >= 2:
            head, tail = cedent[0], cedent[1:]
            for part1, part2 in _splits(tail):
                if not part2:
                    continue
                a = self._qual_search(as_cedent(part1 + (head,)))
                b = self._qual_search(as_cedent(part2))
                best = max(best, _abs_tensor(a, b))
                if self.theory.mix_star:
                    best = max(best, _abs_cotensor(a, b))
                if best == _INF_A:
                    return best
        return best


def _abs_dual(x: int) -> int:
    if x == _ZERO_A:
        return _INF_A
    return _ZERO_A if x == _INF_A else _POS_A


def _splits(items: Cedent) -> list[tuple[tuple, tuple]]:
    """All 2-partitions of a tuple, as (kept-by-mask, complement) pairs."""
    n = len(items)
    out = []
    for mask in range(1 << n):
        part1 = tuple(items[i] for i in range(n) if mask >> i & 1)
        part2 = tuple(items[i] for i in range(n) if not mask >> i & 1)
        out.append((part1, part2))
    return out


# ---------------------------------------------------------------------------
# module-level convenience wrappers


def provability(s: Sequent, hardness: Hardness, theory: Theory = EMPTY_THEORY,
                options: ProverOptions | None = None) -> ProvabilityResult:
    return Prover(hardness, theory, options).provability(s)


def provability_value(s: Sequent, hardness: Hardness, theory: Theory = EMPTY_THEORY,
                      options: ProverOptions | None = None) -> Value:
    return Prover(hardness, theory, options).value_of(s)


def structure_provability(h: Structure, hardness: Hardness, theory: Theory = EMPTY_THEORY,
                          options: ProverOptions | None = None) -> Value:
    return Prover(hardness, theory, options).structure_provability(h)


def qualitative_provable(s: Sequent, theory: Theory = EMPTY_THEORY) -> bool:
    p = theory.hardness or Hardness.finite(1)
    return Prover(p, theory).qualitative_provable(s)
