"""Weighted-norm smoothness toolkit: generalized translations on [-1, 1],
moduli of smoothness, K-functionals, and polynomial approximation checks."""

from .approx import (
    BestApproxResult,
    JacksonParams,
    KFunctionalResult,
    bernstein_markov_ratios,
    best_approx,
    gamma_norm,
    jackson_degree_bound,
    jackson_kernel,
    jackson_operator,
    k_functional,
)
from .errors import (
    ConvergenceError,
    DegenerateReferenceError,
    DegreeViolationError,
    EvaluationError,
    InvalidArgumentError,
    ReportIOError,
    SmoothnessLabError,
)
from .harness import (
    Config,
    CorpusEntry,
    VerificationReport,
    corpus,
    emit_report,
    run_lemma_suite,
    run_theorem_sweep,
)
from .jacobi import (
    DOperatorParams,
    PolynomialRep,
    apply_D_func,
    apply_D_poly,
    expand_in_jacobi,
    fourier_jacobi_coeff,
    jacobi_eval,
    jacobi_h,
    jacobi_matrix,
    jacobi_poly,
    jacobi_series_eval,
    poly_lincomb,
)
from .quadrature import (
    QuadratureRule,
    gauss_chebyshev,
    gauss_jacobi,
    gauss_legendre,
    integrate,
    integrate_unit_circle,
    ordered_sum,
)
from .space import (
    Admissibility,
    FunctionHandle,
    SpaceParams,
    make_grid,
    validate_params,
    weighted_norm,
)
from .translation import (
    MultiplierTable,
    TranslationParams,
    abs_rotation_average,
    asym_translate,
    asym_translate_t,
    build_multiplier_table,
    compute_R,
    kernel_B,
    modulus,
    multiplier_psi,
    sym_translate,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Admissibility",
    "BestApproxResult",
    "Config",
    "ConvergenceError",
    "CorpusEntry",
    "DOperatorParams",
    "DegenerateReferenceError",
    "DegreeViolationError",
    "EvaluationError",
    "FunctionHandle",
    "InvalidArgumentError",
    "JacksonParams",
    "KFunctionalResult",
    "MultiplierTable",
    "PolynomialRep",
    "QuadratureRule",
    "ReportIOError",
    "SmoothnessLabError",
    "SpaceParams",
    "TranslationParams",
    "VerificationReport",
    "abs_rotation_average",
    "apply_D_func",
    "apply_D_poly",
    "asym_translate",
    "asym_translate_t",
    "bernstein_markov_ratios",
    "best_approx",
    "build_multiplier_table",
    "compute_R",
    "corpus",
    "emit_report",
    "expand_in_jacobi",
    "fourier_jacobi_coeff",
    "gamma_norm",
    "gauss_chebyshev",
    "gauss_jacobi",
    "gauss_legendre",
    "integrate",
    "integrate_unit_circle",
    "jacobi_eval",
    "jacobi_h",
    "jacobi_matrix",
    "jacobi_poly",
    "jacobi_series_eval",
    "jackson_degree_bound",
    "jackson_kernel",
    "jackson_operator",
    "k_functional",
    "kernel_B",
    "make_grid",
    "modulus",
    "multiplier_psi",
    "ordered_sum",
    "poly_lincomb",
    "run_lemma_suite",
    "run_theorem_sweep",
    "sym_translate",
    "validate_params",
    "weighted_norm",
]
