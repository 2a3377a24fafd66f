"""Command-line front end with stable, line-oriented output.

Exact values print as ``<power coordinate>@p=<hardness>`` followed by a
decimal approximation in parentheses.  Exit codes: 0 success, 1 bad
input or usage, 2 a check or soundness failure, 3 complexity cap
exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import alethic
from .alethic import Hardness, format_value, from_rational, parse_rational, to_float
from .bayes import DensityError, conditional_odds, parse_density
from .calculus import (
    EMPTY_THEORY,
    check_derivation,
    eval_structure,
    parse_derivation,
    parse_theory,
    print_derivation,
    validity,
)
from .prover import ComplexityCapExceeded, Prover, ProverOptions
from .rewrite import cut_eliminate
from .semantics import (
    check_softale_axioms,
    parse_valuation,
    pointwise_softale,
    real_softale,
    soundness_gap,
)
from .syntax import ParseError, parse_sequent, parse_structure

USAGE_ERROR, CHECK_FAILURE, CAP_EXCEEDED = 1, 2, 3


def _hardness(text: str) -> Hardness:
    return Hardness.parse(text)


def _load_theory(path: str | None, hardness: Hardness):
    if path is None:
        return EMPTY_THEORY
    return parse_theory(Path(path).read_text(), hardness)


def _decimal(v) -> str:
    f = to_float(v)
    return "inf" if f == float("inf") else f"{f:.10g}"


def cmd_eval(args) -> int:
    p = _hardness(args.p)
    structure = parse_structure(args.structure, p)
    value = eval_structure(structure)
    print(f"value = {format_value(value)}")
    return 0


def cmd_check(args) -> int:
    p = _hardness(args.p)
    theory = _load_theory(args.theory, p)
    derivation = parse_derivation(Path(args.proof).read_text(), p, theory)
    violations = check_derivation(derivation, p, theory)
    if violations:
        for v in violations:
            print(f"violation {v}")
        return CHECK_FAILURE
    print("OK")
    print(f"validity = {format_value(validity(derivation))}")
    return 0


def cmd_prove(args) -> int:
    p = _hardness(args.p)
    theory = _load_theory(args.theory, p)
    options = ProverOptions(
        unary_additives_at_infinity=args.unary_additives,
        complexity_cap=args.cap,
        trace=args.trace,
    )
    result = Prover(p, theory, options).provability(parse_sequent(args.sequent))
    print(f"provability = {format_value(result.value)}")
    if args.witness:
        Path(args.witness).write_text(print_derivation(result.witness) + "\n")
        print(f"witness written to {args.witness}")
    return 0


def cmd_cutfree(args) -> int:
    p = _hardness(args.p)
    theory = _load_theory(args.theory, p)
    derivation = parse_derivation(Path(args.proof).read_text(), p, theory)
    violations = check_derivation(derivation, p, theory)
    if violations:
        for v in violations:
            print(f"violation {v}")
        return CHECK_FAILURE
    before = validity(derivation)
    result, trace = cut_eliminate(derivation, p, theory)
    if args.trace:
        for step in trace:
            print(step)
    after = validity(result)
    out_path = args.out or (args.proof + ".cutfree")
    Path(out_path).write_text(print_derivation(result) + "\n")
    print(f"cut-free proof written to {out_path}")
    print(f"validity = {format_value(before)} -> {format_value(after)}")
    if not alethic.leq(before, after):
        print("error: validity decreased")
        return CHECK_FAILURE
    return 0


def cmd_sweep(args) -> int:
    sequent = parse_sequent(args.sequent)
    for text in args.ps.split(","):
        p = _hardness(text.strip())
        theory = _load_theory(args.theory, p)
        value = Prover(p, theory).value_of(sequent)
        print(f"p={p} provability = {_decimal(value)}")
    return 0


def _event(text: str) -> set[str]:
    # accept both "x,y" and a labeled "A=x,y"
    body = text.split("=", 1)[-1]
    names = {piece.strip() for piece in body.split(",") if piece.strip()}
    return names


def cmd_bayes(args) -> int:
    density = parse_density(Path(args.density).read_text())
    p = _hardness(args.p)
    result = conditional_odds(density, _event(args.given), _event(args.event), p)
    print(f"odds = {format_value(result.value)}")
    if result.empty_intersection:
        print("note: the intersection is empty; only the zero-validity proof exists")
    if result.nonstandard_hardness:
        print(f"warning: hardness {p} is outside the documented p=1 encoding")
    return 0


def cmd_soundness(args) -> int:
    p = _hardness(args.p)
    theory = _load_theory(args.theory, p)
    derivation = parse_derivation(Path(args.proof).read_text(), p, theory)
    violations = check_derivation(derivation, p, theory)
    if violations:
        for v in violations:
            print(f"violation {v}")
        return CHECK_FAILURE
    softale = real_softale(p)
    valuation = parse_valuation(Path(args.valuation).read_text(), softale)
    syntactic, semantic = soundness_gap(derivation, valuation, softale)
    print(f"validity = {format_value(syntactic)}")
    print(f"semantic = {format_value(semantic)}")
    sound = alethic.leq(syntactic, semantic)
    print(f"sound = {'true' if sound else 'false'}")
    return 0 if sound else CHECK_FAILURE


def cmd_axioms(args) -> int:
    p = _hardness(args.p)
    grid = [from_rational(p, parse_rational(piece.strip())) for piece in args.grid.split(",")]
    if args.softale == "real":
        softale = real_softale(p)
        samples = list(grid)
    elif args.softale.startswith("pointwise:"):
        width = int(args.softale.split(":", 1)[1])
        softale = pointwise_softale(width, p)
        samples = list(_tuples(grid, width))
    else:
        print(f"unknown softale {args.softale!r}", file=sys.stderr)
        return USAGE_ERROR
    report = check_softale_axioms(softale, samples)
    for line in report.lines():
        print(line)
    print(f"prelinearity checked = {'true' if report.prelinearity_checked else 'false'}")
    return 0 if report.ok else CHECK_FAILURE


def _tuples(grid, width):
    if width == 1:
        for g in grid:
            yield (g,)
        return
    for rest in _tuples(grid, width - 1):
        for g in grid:
            yield rest + (g,)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="softseq",
        description="exact validity, provability, cut elimination and semantics "
                    "for quantitative sequent calculi with soft additives",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a closed structure")
    p_eval.add_argument("structure")
    p_eval.add_argument("--p", required=True, help="hardness: positive rational or inf")
    p_eval.set_defaults(func=cmd_eval)

    p_check = sub.add_parser("check", help="check a proof file and print its validity")
    p_check.add_argument("proof")
    p_check.add_argument("--p", required=True)
    p_check.add_argument("--theory")
    p_check.set_defaults(func=cmd_check)

    p_prove = sub.add_parser("prove", help="decide provability of a sequent")
    p_prove.add_argument("sequent")
    p_prove.add_argument("--p", required=True)
    p_prove.add_argument("--theory")
    p_prove.add_argument("--witness", help="write the maximal-validity proof here")
    p_prove.add_argument("--cap", type=int, help="complexity cap safeguard")
    p_prove.add_argument("--unary-additives", action="store_true",
                         help="use the unary soft rules at p=inf")
    p_prove.add_argument("--trace", action="store_true")
    p_prove.set_defaults(func=cmd_prove)

    p_cut = sub.add_parser("cutfree", help="eliminate cuts from a proof file")
    p_cut.add_argument("proof")
    p_cut.add_argument("--p", required=True)
    p_cut.add_argument("--theory")
    p_cut.add_argument("--out")
    p_cut.add_argument("--trace", action="store_true")
    p_cut.set_defaults(func=cmd_cutfree)

    p_sweep = sub.add_parser("sweep", help="provability across several hardness degrees")
    p_sweep.add_argument("sequent")
    p_sweep.add_argument("--ps", required=True, help="comma-separated hardness list")
    p_sweep.add_argument("--theory")
    p_sweep.set_defaults(func=cmd_sweep)

    p_bayes = sub.add_parser("bayes", help="conditional odds from a density file")
    p_bayes.add_argument("--density", required=True)
    p_bayes.add_argument("--given", required=True, help="conditioning event, e.g. x,y")
    p_bayes.add_argument("--event", required=True)
    p_bayes.add_argument("--p", default="1")
    p_bayes.set_defaults(func=cmd_bayes)

    p_sound = sub.add_parser("soundness", help="compare validity with the semantic value")
    p_sound.add_argument("proof")
    p_sound.add_argument("--valuation", required=True)
    p_sound.add_argument("--p", required=True)
    p_sound.add_argument("--theory")
    p_sound.set_defaults(func=cmd_soundness)

    p_axioms = sub.add_parser("axioms", help="check softale axioms on a grid")
    p_axioms.add_argument("--softale", required=True, help="real or pointwise:<n>")
    p_axioms.add_argument("--p", required=True)
    p_axioms.add_argument("--grid", default="0,1/3,1/2,1,2,3,inf")
    p_axioms.set_defaults(func=cmd_axioms)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ComplexityCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CAP_EXCEEDED
    except (ParseError, ValueError, DensityError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
