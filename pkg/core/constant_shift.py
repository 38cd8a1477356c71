"""
Constant branches and the shifted profile equation.

A traveling wave phi of speed c_s satisfies

    -c_s phi - L phi + f(phi) = A.

Writing phi = C + psi with C a real root of P(z) = f(z) - c_s z - A gives

    (c_s + L - f'(C)) psi = sum_{j=2}^{p-1} b_j psi^j,   b_j = f^(j)(C)/j!

whose right side has no constant or linear part.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np
from numpy.polynomial import Polynomial

from config import DENOMINATOR_GUARD
from core.errors import ArgumentError, SingularDenominatorError
from core.models.nonlinearity import evaluate_f, f_derivative_at, taylor_coefficients
from core.models.scalar import ScalarModel
from core.roots import polished_real_roots
from core.spectral import (
    PeriodicGrid,
    SpectralField,
    apply_multiplier,
    dealiased_product,
    forward_transform,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConstantBranch:
    C: float
    residual: float
    multiplicity_hint: int = 1


def constant_polynomial(model: ScalarModel, c_s: float, A: float) -> Polynomial:
    """P(z) = -A - c_s z + f(z)."""
    return model.nonlinearity.polynomial - Polynomial([A, c_s])


def find_constants(model: ScalarModel, c_s: float, A: float) -> List[ConstantBranch]:
    """All real constant solutions, sorted by |C|; may be empty."""
    if not (np.isfinite(c_s) and c_s > 0):
        raise ArgumentError(f"speed must be positive, got {c_s}")
    if not np.isfinite(A):
        raise ArgumentError(f"integration constant must be finite, got {A}")

    roots = polished_real_roots(constant_polynomial(model, c_s, A))
    branches = [ConstantBranch(r.value, r.residual, r.multiplicity) for r in roots]
    branches.sort(key=lambda b: abs(b.C))
    if not branches:
        logger.info("No real constant branch for %s at c_s=%g, A=%g", model.name, c_s, A)
    return branches


# =============================================================================
# SHIFTED PROBLEM
# =============================================================================

@dataclass(frozen=True)
class ShiftedProblem:
    model: ScalarModel
    speed: float
    constant: float
    A: float
    linear_shift: float
    term_coeffs: Tuple[float, ...]

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(range(2, 2 + len(self.term_coeffs)))

    def term_coefficient(self, j: int) -> float:
        if j not in self.degrees:
            raise ArgumentError(f"no degree-{j} term; degrees are {self.degrees}")
        return self.term_coeffs[j - 2]

    def linear_symbol(self, grid: PeriodicGrid) -> np.ndarray:
        """c_s + alpha(n pi / l) - f'(C) per mode."""
        return self.speed + self.model.dispersion.sample(grid) - self.linear_shift

    def bind(self, grid: PeriodicGrid) -> "BoundShiftedProblem":
        return BoundShiftedProblem(self, grid)


def build_shifted(model: ScalarModel, c_s: float, A: float, branch: ConstantBranch) -> ShiftedProblem:
    C = float(branch.C)
    coeffs = taylor_coefficients(model.nonlinearity, C)
    if coeffs[-1] == 0.0:
        raise ArgumentError(f"leading shifted coefficient vanishes at C = {C}")
    return ShiftedProblem(
        model=model,
        speed=float(c_s),
        constant=C,
        A=float(A),
        linear_shift=f_derivative_at(model.nonlinearity, 1, C),
        term_coeffs=coeffs,
    )


class BoundShiftedProblem:
    """ShiftedProblem on a grid; satisfies the LinearizedProblem protocol."""

    n_components = 1

    def __init__(self, problem: ShiftedProblem, grid: PeriodicGrid):
        symbol = problem.linear_symbol(grid)
        small = np.abs(symbol) <= DENOMINATOR_GUARD
        if small.any():
            modes = grid.mode_indices[small][:5].tolist()
            raise SingularDenominatorError(
                f"c_s + alpha - f'(C) vanishes at modes {modes} (C = {problem.constant:g})"
            )
        self.problem = problem
        self.grid = grid
        self._symbol = symbol

    @property
    def symbol(self) -> np.ndarray:
        return self._symbol

    def apply_linear(self, vec: np.ndarray) -> np.ndarray:
        return self._symbol * vec

    def solve_linear(self, vec: np.ndarray) -> np.ndarray:
        return vec / self._symbol

    def nonlinear_parts(self, vec: np.ndarray) -> Dict[int, np.ndarray]:
        u = SpectralField(self.grid, vec)
        parts = {}
        for j, b in zip(self.problem.degrees, self.problem.term_coeffs):
            if b == 0.0:
                continue
            parts[j] = b * dealiased_product([u] * j, j).coeffs
        return parts


def shift_equivalence_residual(sp: ShiftedProblem, psi: SpectralField) -> Tuple[float, float]:
    """
    (r1, r2): grid residuals of the full equation at phi = psi + C and of the
    shifted equation at psi, both as ||.||_2 / sqrt(N).
    """
    grid = psi.grid
    model = sp.model
    x = psi.values()
    phi = x + sp.constant
    L_phi = apply_multiplier(model.dispersion, forward_transform(phi, grid)).values()
    L_psi = apply_multiplier(model.dispersion, psi).values()

    full = -sp.speed * phi - L_phi + evaluate_f(model.nonlinearity, phi) - sp.A
    shifted = (sp.speed - sp.linear_shift) * x + L_psi
    for j, b in zip(sp.degrees, sp.term_coeffs):
        shifted = shifted - b * x**j

    scale = 1.0 / np.sqrt(grid.n_modes)
    return float(np.linalg.norm(full) * scale), float(np.linalg.norm(shifted) * scale)
