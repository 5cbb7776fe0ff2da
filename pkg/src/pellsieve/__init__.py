"""Lucas sequences, Pell equations, and square-product nonexistence certificates."""

__version__ = "0.1.0"

from .certificate import (
    Certificate,
    CertificateError,
    CertificateStatus,
    ExceptionalCheck,
    GateKind,
    GateStep,
    ResidueClass,
    ValueForm,
    Witness,
    certificate_from_json,
    certificate_to_json,
)
from .core_arith import (
    geometric_sum_mod,
    is_perfect_square,
    isqrt,
    jacobi,
    mod_pow,
    multiplicative_order,
    nu2,
    square_residues_mod,
)
from .harness import (
    CensusReport,
    ExceptionTag,
    ReplayReport,
    SearchHit,
    census,
    classify_pair,
    replay_suite,
    scan_pairs,
    search_pair,
)
from .lucas import LucasPair, LucasParams, lucas_iter, lucas_uv, lucas_uv_mod
from .pell import (
    MinimalHypSolution,
    PellFundamental,
    hyp_solutions,
    iter_hyp_solutions,
    iter_pell_solutions,
    minimal_hyp_solution,
    pell_fundamental,
    pell_solutions,
)
from .prover import (
    DEFAULT_CONFIG,
    Pair,
    SieveConfig,
    find_witness,
    gate_even,
    sieve,
    structural_gates,
    target_value,
)
from .verifier import (
    CheckStatus,
    VerificationItem,
    VerificationReport,
    verify_certificate,
)

__all__ = [
    "__version__",
    "Certificate",
    "CertificateError",
    "CertificateStatus",
    "ExceptionalCheck",
    "GateKind",
    "GateStep",
    "ResidueClass",
    "ValueForm",
    "Witness",
    "certificate_from_json",
    "certificate_to_json",
    "geometric_sum_mod",
    "is_perfect_square",
    "isqrt",
    "jacobi",
    "mod_pow",
    "multiplicative_order",
    "nu2",
    "square_residues_mod",
    "CensusReport",
    "ExceptionTag",
    "ReplayReport",
    "SearchHit",
    "census",
    "classify_pair",
    "replay_suite",
    "scan_pairs",
    "search_pair",
    "LucasPair",
    "LucasParams",
    "lucas_iter",
    "lucas_uv",
    "lucas_uv_mod",
    "MinimalHypSolution",
    "PellFundamental",
    "hyp_solutions",
    "iter_hyp_solutions",
    "iter_pell_solutions",
    "minimal_hyp_solution",
    "pell_fundamental",
    "pell_solutions",
    "DEFAULT_CONFIG",
    "Pair",
    "SieveConfig",
    "find_witness",
    "gate_even",
    "sieve",
    "structural_gates",
    "target_value",
    "CheckStatus",
    "VerificationItem",
    "VerificationReport",
    "verify_certificate",
]
