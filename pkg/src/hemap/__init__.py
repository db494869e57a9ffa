"""Analysis of harmonic entire mappings from power-series coefficient streams.

Growth order and type estimation, numerical verification of the growth and
univalence statements the package is built around, radius-of-univalence
certificates for derivative maps, and gap-sequence bounds, all over
log-domain coefficient streams that tolerate factorial-scale magnitudes.
"""

from .catalog import CATALOG_SCHEMA, CatalogEntry, catalog_map, hyp1f2_coeffs, log_gamma
from .coeffcore import (
    CoeffStream,
    EvalResult,
    HarmonicMap,
    ScaledComplex,
    affine_combine,
    conjugate_map,
    derivative_stream,
    evaluate,
    jacobian,
    normalized_shifted_derivative,
    shifted_derivative_map,
)
from .gapseq import (
    GapAnalysis,
    GapSequence,
    GapStats,
    exp_type_bound,
    gap_stats,
    rf_lower_bound,
    rho_upper_bound,
    second_difference_report,
    stirling_sandwich,
    univalent_gap_analysis,
)
from .growth import (
    ConvergenceRadii,
    EmpiricalOrderResult,
    GrowthReport,
    cauchy_pair_bound_check,
    convergence_radii,
    empirical_order,
    f_rho_stream,
    max_modulus,
    order_from_coeffs,
    order_of_sum_check,
    recover_coefficients,
    type_from_coeffs,
)
from .univalence import (
    AnalysisConfig,
    CoefficientTestResult,
    UnivalenceCertificate,
    coeff_growth_bound_check,
    coefficient_ratio_delta,
    coefficient_univalence_test,
    exponential_type_bound_check,
    gamma_empirical,
    normalize_map,
    ozaki_close_to_convex_check,
    radius_certificate,
    sense_preserving_at_origin,
    shc_membership_check,
    univalence_radius_lower,
    univalence_radius_upper,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisConfig",
    "CATALOG_SCHEMA",
    "CatalogEntry",
    "CoeffStream",
    "CoefficientTestResult",
    "ConvergenceRadii",
    "EmpiricalOrderResult",
    "EvalResult",
    "GapAnalysis",
    "GapSequence",
    "GapStats",
    "GrowthReport",
    "HarmonicMap",
    "ScaledComplex",
    "UnivalenceCertificate",
    "affine_combine",
    "catalog_map",
    "cauchy_pair_bound_check",
    "coeff_growth_bound_check",
    "coefficient_ratio_delta",
    "coefficient_univalence_test",
    "conjugate_map",
    "convergence_radii",
    "derivative_stream",
    "empirical_order",
    "evaluate",
    "exp_type_bound",
    "exponential_type_bound_check",
    "f_rho_stream",
    "gamma_empirical",
    "gap_stats",
    "hyp1f2_coeffs",
    "jacobian",
    "log_gamma",
    "max_modulus",
    "normalize_map",
    "normalized_shifted_derivative",
    "order_from_coeffs",
    "order_of_sum_check",
    "ozaki_close_to_convex_check",
    "radius_certificate",
    "recover_coefficients",
    "rf_lower_bound",
    "rho_upper_bound",
    "second_difference_report",
    "sense_preserving_at_origin",
    "shc_membership_check",
    "shifted_derivative_map",
    "stirling_sandwich",
    "type_from_coeffs",
    "univalence_radius_lower",
    "univalence_radius_upper",
    "univalent_gap_analysis",
]
