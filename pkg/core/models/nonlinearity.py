"""
Polynomial nonlinearity f(z) = 3*g3*z^2 + ... + p*gp*z^(p-1).

The polynomial is held as a numpy Polynomial so that values, derivatives
and Taylor coefficients about a constant all come from the same object.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import numpy as np
from numpy.polynomial import Polynomial

from core.errors import ArgumentError


@dataclass(frozen=True)
class PolynomialNonlinearity:
    """Coefficients gamma_3 ... gamma_p of f; gammas[0] is gamma_3."""

    gammas: Sequence[float]
    permissive: bool = False

    def __post_init__(self):
        gammas = tuple(float(g) for g in self.gammas)
        if not gammas:
            raise ArgumentError("need at least gamma_3")
        if not all(np.isfinite(gammas)):
            raise ArgumentError(f"gammas must be finite, got {gammas}")
        if gammas[-1] == 0.0:
            raise ArgumentError("leading coefficient gamma_p must be nonzero")
        if not self.permissive:
            if any(g < 0 for g in gammas[:-1]) or gammas[-1] <= 0:
                raise ArgumentError(
                    f"need gamma_j >= 0 for j < p and gamma_p > 0, got {gammas}"
                )
        object.__setattr__(self, "gammas", gammas)

    @property
    def degree(self) -> int:
        """p: the largest j with a gamma_j term."""
        return len(self.gammas) + 2

    @property
    def lowest_degree(self) -> Optional[int]:
        """p0 = min{j : gamma_j > 0}, or None."""
        for j, g in enumerate(self.gammas, start=3):
            if g > 0:
                return j
        return None

    def gamma(self, j: int) -> float:
        if not 3 <= j <= self.degree:
            raise ArgumentError(f"gamma_{j} undefined for p = {self.degree}")
        return self.gammas[j - 3]

    @cached_property
    def polynomial(self) -> Polynomial:
        coef = np.zeros(self.degree)
        for j, g in enumerate(self.gammas, start=3):
            coef[j - 1] = j * g
        return Polynomial(coef)

    @property
    def satisfies_standard_form(self) -> bool:
        return all(g >= 0 for g in self.gammas[:-1]) and self.gammas[-1] > 0


def evaluate_f(nl: PolynomialNonlinearity, z):
    """f(z); accepts scalars or arrays."""
    value = nl.polynomial(z)
    return float(value) if np.ndim(value) == 0 else value


def f_derivative_at(nl: PolynomialNonlinearity, order: int, C: float) -> float:
    """f^(order)(C), 1 <= order <= p-1."""
    if not 1 <= order <= nl.degree - 1:
        raise ArgumentError(f"derivative order must lie in [1, {nl.degree - 1}], got {order}")
    return float(nl.polynomial.deriv(order)(C))


def taylor_coefficients(nl: PolynomialNonlinearity, C: float) -> tuple[float, ...]:
    """b_j = f^(j)(C)/j! for j = 2 .. p-1."""
    return tuple(
        f_derivative_at(nl, j, C) / math.factorial(j) for j in range(2, nl.degree)
    )
