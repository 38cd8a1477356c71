"""
Scalar model u_t + (L u + f(u))_x = 0 and the dispersion symbol families
used to build it.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from config import SYMBOL_EVEN_TOLERANCE, SYMBOL_SAMPLE_POINTS
from core.errors import ArgumentError, OperatorDefinitionError
from core.models.nonlinearity import PolynomialNonlinearity
from core.spectral import FourierMultiplier

logger = logging.getLogger(__name__)


# =============================================================================
# SYMBOL FAMILIES
# =============================================================================

def power_symbol(mu: float) -> FourierMultiplier:
    """|xi|^mu."""
    if not (np.isfinite(mu) and mu > 0):
        raise ArgumentError(f"power symbol exponent must be positive, got {mu}")
    mu = float(mu)
    return FourierMultiplier(lambda xi: np.abs(xi) ** mu, label=f"|xi|^{mu:g}")


def kdv_symbol() -> FourierMultiplier:
    return FourierMultiplier(lambda xi: xi**2, label="xi^2")


def benjamin_ono_symbol() -> FourierMultiplier:
    return FourierMultiplier(np.abs, label="|xi|")


def benjamin_symbol(beta: float, gamma: float) -> FourierMultiplier:
    """beta*xi^2 + gamma*|xi| (Fourier image of -beta d_xx - gamma H d_x)."""
    beta, gamma = float(beta), float(gamma)
    return FourierMultiplier(
        lambda xi: beta * xi**2 + gamma * np.abs(xi),
        label=f"{beta:g} xi^2 + {gamma:g} |xi|",
    )


def sum_of_powers_symbol(terms: Sequence[Tuple[float, float]]) -> FourierMultiplier:
    """sum_i a_i |xi|^e_i with every e_i > 0."""
    terms = tuple((float(a), float(e)) for a, e in terms)
    if not terms:
        raise ArgumentError("sum_of_powers_symbol needs at least one term")
    if any(e <= 0 for _, e in terms):
        raise ArgumentError(f"exponents must be positive, got {terms}")

    def symbol(xi):
        magnitude = np.abs(xi)
        return sum(a * magnitude**e for a, e in terms)

    label = " + ".join(f"{a:g}|xi|^{e:g}" for a, e in terms)
    return FourierMultiplier(symbol, label=label)


# =============================================================================
# MODEL
# =============================================================================

@dataclass(frozen=True)
class ScalarModel:
    """
    Dispersion symbol alpha plus polynomial nonlinearity f.

    dispersion_exponents is the declared pair (s_tilde, s) describing the
    behaviour of alpha near 0 and near infinity; power_law is set when
    alpha is exactly |xi|^mu.
    """

    nonlinearity: PolynomialNonlinearity
    dispersion: FourierMultiplier
    dispersion_exponents: Optional[Tuple[float, float]] = None
    power_law: Optional[float] = None
    name: str = "custom"

    def __post_init__(self):
        self._validate_symbol()

    def _validate_symbol(self) -> None:
        xi = np.concatenate([np.linspace(0.0, 10.0, SYMBOL_SAMPLE_POINTS),
                             np.logspace(1, 4, SYMBOL_SAMPLE_POINTS // 4)])
        plus = np.asarray(self.dispersion(xi), dtype=float)
        minus = np.asarray(self.dispersion(-xi), dtype=float)
        if not (np.all(np.isfinite(plus)) and np.all(np.isfinite(minus))):
            raise OperatorDefinitionError(f"symbol '{self.dispersion.label}' is not finite")
        scale = np.maximum(1.0, np.abs(plus))
        if np.any(np.abs(plus - minus) > SYMBOL_EVEN_TOLERANCE * scale):
            raise OperatorDefinitionError(f"symbol '{self.dispersion.label}' is not even")
        if abs(plus[0]) > SYMBOL_EVEN_TOLERANCE:
            raise OperatorDefinitionError(
                f"symbol '{self.dispersion.label}' has alpha(0) = {plus[0]:g}, expected 0"
            )

    @property
    def degree(self) -> int:
        return self.nonlinearity.degree

    def __str__(self) -> str:
        return f"{self.name}: alpha = {self.dispersion.label}, p = {self.degree}"
