# Scalar model definitions
from .fkdv import (
    StabilityClass,
    fkdv_existence,
    fkdv_model,
    fkdv_p_max,
    fkdv_p_star,
    fkdv_p_star_max,
    fkdv_stability,
)
from .hypotheses import HypothesisReport, HypothesisStatus, check_hypotheses
from .nonlinearity import (
    PolynomialNonlinearity,
    evaluate_f,
    f_derivative_at,
    taylor_coefficients,
)
from .scalar import (
    ScalarModel,
    benjamin_ono_symbol,
    benjamin_symbol,
    kdv_symbol,
    power_symbol,
    sum_of_powers_symbol,
)

__all__ = [
    "PolynomialNonlinearity",
    "ScalarModel",
    "StabilityClass",
    "HypothesisReport",
    "HypothesisStatus",
    "evaluate_f",
    "f_derivative_at",
    "taylor_coefficients",
    "check_hypotheses",
    "fkdv_model",
    "fkdv_p_max",
    "fkdv_p_star",
    "fkdv_p_star_max",
    "fkdv_existence",
    "fkdv_stability",
    "power_symbol",
    "kdv_symbol",
    "benjamin_ono_symbol",
    "benjamin_symbol",
    "sum_of_powers_symbol",
]
