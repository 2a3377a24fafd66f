"""softseq: an exact engine for quantitative sequent calculi with soft additives."""

from .alethic import (
    Hardness,
    HardnessMismatch,
    NotRepresentable,
    Value,
    cotensor,
    dual,
    format_value,
    from_power_coord,
    from_rational,
    infinity,
    leq,
    one,
    padd,
    pcoadd,
    qualitative_additive,
    qualitative_multiplicative,
    residual,
    tensor,
    to_float,
    zero,
)
from .calculus import (
    EMPTY_THEORY,
    Derivation,
    ProofTree,
    Theory,
    check_derivation,
    eval_structure,
    parse_derivation,
    parse_theory,
    print_derivation,
    tree_to_derivation,
    tree_validity,
    validity,
)
from .prover import (
    ComplexityCapExceeded,
    ProvabilityResult,
    Prover,
    ProverOptions,
    provability,
    provability_value,
    qualitative_provable,
    structure_provability,
)
from .syntax import (
    Formula,
    ParseError,
    Sequent,
    Structure,
    complexity,
    negate,
    one_sided,
    parse_formula,
    parse_sequent,
    parse_structure,
    print_formula,
    print_sequent,
    print_structure,
)

__version__ = "0.1.0"
