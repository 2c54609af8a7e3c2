"""Exact and numerical toolkit for Bergman-space indices of Reinhardt domains.

Computes allowable monomial index sets, threshold exponents, and the duality,
regularity, and integrability indices of the unit polydisc, the unit ball,
and the rational power-cut triangles in C^2, together with Bergman kernel
evaluation, the duality pairing, and the exact Bergman projection on mixed
monomials.  Every membership predicate runs in exact rational arithmetic; a
tensor quadrature oracle independently validates all closed forms.
"""

from .domains import (DomainSpec, Family, Moment, ball, conjugate_exponent,
                      hartogs, holomorphy_ok, moment, parse_domain, polydisc,
                      radial_moment, shadow_contains, volume)
from .duality_projection import (InequalityCheck, MixedMonomialSum,
                                 ProjectionRatio, holder_check,
                                 injectivity_witness_scan, laurent,
                                 laurent_norm, lyapunov_check, pairing,
                                 project, projection_ratio)
from .errors import (ChainViolation, DimensionMismatch, IllConditionedGram,
                     Inconclusive, NotIntegrable, ParseError, WindowTooSmall)
from .exact import ExactMix, ExactValue, QComplex
from .index_sets import (IndexReport, IndexSetWindow, IndexValue, Threshold,
                         beta_upper, duality_bound, hartogs_regularity_formula,
                         index_report, index_set_window, member,
                         regularity_probe, sets_equal, thresholds)
from .kernel import (KernelSeries, PNormEstimate, density_residual,
                     kernel_closed_form, kernel_pnorm_estimate, kernel_series,
                     kernel_truncated, reproduce_check)
from .quadrature import (AbsPowerIntegrand, BlackBoxIntegrand, IntegralResult,
                         MonomialSumIntegrand, ProbeResult, QuadConfig,
                         divergence_probe, integrate, lp_norm)

__version__ = "0.1.0"

__all__ = [
    "AbsPowerIntegrand", "BlackBoxIntegrand", "ChainViolation",
    "DimensionMismatch", "DomainSpec", "ExactMix", "ExactValue", "Family",
    "IllConditionedGram", "Inconclusive", "IndexReport", "IndexSetWindow",
    "IndexValue", "InequalityCheck", "IntegralResult", "KernelSeries",
    "MixedMonomialSum", "Moment", "MonomialSumIntegrand", "NotIntegrable",
    "PNormEstimate", "ParseError", "ProbeResult", "ProjectionRatio",
    "QComplex", "QuadConfig", "Threshold", "WindowTooSmall", "ball",
    "beta_upper", "conjugate_exponent", "density_residual", "divergence_probe",
    "duality_bound", "hartogs", "hartogs_regularity_formula", "holder_check",
    "holomorphy_ok", "index_report", "index_set_window",
    "injectivity_witness_scan", "integrate", "kernel_closed_form",
    "kernel_pnorm_estimate", "kernel_series", "kernel_truncated", "laurent",
    "laurent_norm", "lp_norm", "lyapunov_check", "member", "moment",
    "pairing", "parse_domain", "polydisc", "project", "projection_ratio",
    "radial_moment", "regularity_probe", "reproduce_check", "sets_equal",
    "shadow_contains", "thresholds", "volume",
]
