"""Verification toolkit for a generalized weighted fractional integral.

The package computes a six-parameter weighted integral operator, checks
Gruss-, Young- and Polya-Szego-type bounds built on it, and runs
deterministic randomized campaigns over parameter grids with JSON/CSV
reports and optional figures.
"""

from .specfun import beta, log_beta, log_gamma
from .quadrature import (
    ConvergenceError,
    IntegrandEvaluationError,
    QuadratureRule,
    gauss_jacobi_rule,
    integrate_weighted,
    reference_integrate,
)
from .operators import (
    DEFAULT_ORDER,
    Function1D,
    OperatorParams,
    SPECIALIZATIONS,
    SpecializationDirective,
    constant,
    lambda_factor,
    left_integral,
    monomial,
    right_integral,
    specialize,
    xpc_norm,
)
from .oracles import (
    MonomialSpec,
    hadamard_log_monomial,
    monomial_integral,
    rl_monomial,
)
from .inequalities import (
    FAMILIES,
    POLYA_ITEMS,
    YOUNG_DUAL_ITEMS,
    YOUNG_ITEMS_3,
    YOUNG_ITEMS_4,
    BoundedFunctionSpec,
    CheckResult,
    RatioBoundedPair,
    YoungExponents,
    classical_gruss_check,
    function_family_sampler,
    gruss_check,
    lemma1_residual,
    lemma2_check,
    lemma3_residual,
    polya_szego_suite_check,
    ratio_bounded_pair,
    theorem2_check,
    young_suite_check,
)
from .campaign import (
    CampaignConfig,
    CaseRow,
    ConfigError,
    Report,
    SUITES,
    exit_code,
    run_campaign,
    summarize,
)
from .reporting import CSV_COLUMNS, render_csv, render_json, write_report

__version__ = "1.0.0"

__all__ = [
    "BoundedFunctionSpec",
    "CSV_COLUMNS",
    "CampaignConfig",
    "CaseRow",
    "CheckResult",
    "ConfigError",
    "ConvergenceError",
    "DEFAULT_ORDER",
    "FAMILIES",
    "Function1D",
    "IntegrandEvaluationError",
    "MonomialSpec",
    "OperatorParams",
    "POLYA_ITEMS",
    "QuadratureRule",
    "RatioBoundedPair",
    "Report",
    "SPECIALIZATIONS",
    "SUITES",
    "SpecializationDirective",
    "YOUNG_DUAL_ITEMS",
    "YOUNG_ITEMS_3",
    "YOUNG_ITEMS_4",
    "YoungExponents",
    "beta",
    "classical_gruss_check",
    "constant",
    "exit_code",
    "function_family_sampler",
    "gauss_jacobi_rule",
    "gruss_check",
    "hadamard_log_monomial",
    "integrate_weighted",
    "lambda_factor",
    "left_integral",
    "lemma1_residual",
    "lemma2_check",
    "lemma3_residual",
    "log_beta",
    "log_gamma",
    "monomial",
    "monomial_integral",
    "polya_szego_suite_check",
    "ratio_bounded_pair",
    "reference_integrate",
    "render_csv",
    "render_json",
    "rl_monomial",
    "right_integral",
    "run_campaign",
    "specialize",
    "summarize",
    "theorem2_check",
    "write_report",
    "xpc_norm",
    "young_suite_check",
]
