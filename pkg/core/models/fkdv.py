"""
Fractional KdV family: alpha(xi) = |xi|^mu, f(u) = u^(p-1)/(p-1).

Also carries the existence bound p_max(mu) and the spectral stability
classification through the critical power p*(mu).
"""

from __future__ import annotations

import logging
import math
from enum import Enum

from scipy.optimize import minimize_scalar

from config import STABILITY_BOUNDARY_TOLERANCE
from core.errors import ArgumentError
from core.models.nonlinearity import PolynomialNonlinearity
from core.models.scalar import ScalarModel, power_symbol

logger = logging.getLogger(__name__)


class StabilityClass(str, Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"
    OUTSIDE_THEORY = "outside-theory"


def _check_mu(mu: float) -> float:
    mu = float(mu)
    if not (math.isfinite(mu) and 0.0 < mu <= 2.0):
        raise ArgumentError(f"fKdV exponent mu must lie in (0, 2], got {mu}")
    return mu


def fkdv_model(mu: float, p: int) -> ScalarModel:
    mu = _check_mu(mu)
    if int(p) != p or p < 3:
        raise ArgumentError(f"fKdV power p must be an integer >= 3, got {p}")
    p = int(p)
    # f(u) = u^(p-1)/(p-1) means p*gamma_p = 1/(p-1)
    gammas = [0.0] * (p - 3) + [1.0 / (p * (p - 1))]
    return ScalarModel(
        nonlinearity=PolynomialNonlinearity(gammas, permissive=True),
        dispersion=power_symbol(mu),
        power_law=mu,
        name=f"fkdv(mu={mu:g}, p={p})",
    )


def fkdv_p_max(mu: float) -> float:
    """Existence bound: 2/(1-mu) for mu < 1, infinite otherwise."""
    mu = _check_mu(mu)
    return 2.0 / (1.0 - mu) if mu < 1.0 else math.inf


def fkdv_existence(mu: float, p: float) -> bool:
    return p < fkdv_p_max(mu)


def fkdv_p_star(mu: float) -> float:
    mu = _check_mu(mu)
    two_mu = 2.0**mu
    numerator = (3.0 + mu) * two_mu - 2.0 * mu + (mu - 1.0) * 2.0 ** (mu + 1.0)
    return numerator / (2.0 + (mu - 1.0) * two_mu)


def fkdv_p_star_max() -> float:
    """Largest critical power over mu in [1, 2]."""
    result = minimize_scalar(lambda mu: -fkdv_p_star(mu), bounds=(1.0, 2.0), method="bounded")
    candidates = [fkdv_p_star(1.0), fkdv_p_star(2.0)]
    if result.success:
        candidates.append(-float(result.fun))
    return max(candidates)


def fkdv_stability(mu: float, p: float) -> StabilityClass:
    mu, p = float(mu), float(p)
    if not (0.0 < mu <= 2.0) or p < 1.0:
        return StabilityClass.OUTSIDE_THEORY
    if mu <= 0.5 or mu == 1.0:
        return StabilityClass.OUTSIDE_THEORY
    if mu < 1.0:
        return StabilityClass.UNSTABLE

    p_star = fkdv_p_star(mu)
    if abs(p - p_star) <= STABILITY_BOUNDARY_TOLERANCE * max(1.0, p_star):
        logger.debug("p = %g sits on p*(%g); no classification", p, mu)
        return StabilityClass.OUTSIDE_THEORY
    return StabilityClass.STABLE if p < p_star else StabilityClass.UNSTABLE
