"""
Interfacial Boussinesq system for two-layer flow.

Traveling waves (eta, W) of speed c satisfy, after one integration,

    c eta - (d1 + d2 d_xx) W - d4 eta W + d5 eta^2 W          = A1
    -eta/d1 + c (1 + d3 d_xx) W - (d4/2) W^2 + d5 eta W^2    = A2

Constants (C1, C2) solving the algebraic version absorb (A1, A2); the
differences (eta~, W~) = (eta - C1, W - C2) solve

    (Lin + M_C) (eta~, W~) = N2(eta~, W~) + N3(eta~, W~)

which the Petviashvili engine handles with one 2x2 solve per mode.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Tuple

import numpy as np
from numpy.polynomial import Polynomial

from config import (
    BOUSSINESQ_SEED_AMPLITUDE,
    BOUSSINESQ_SEED_WIDTH,
    DENOMINATOR_GUARD,
    ROOT_RESIDUAL_TOLERANCE,
    SPEED_UNIT_TOLERANCE,
)
from core.errors import ArgumentError, ConfigurationError, SingularDenominatorError
from core.mpe import MpeConfig
from core.petviashvili import IterationSettings, IterationTrace, Outcome, run_iteration, seed_shape
from core.roots import polished_real_roots
from core.spectral import (
    FourierMultiplier,
    PeriodicGrid,
    SpectralField,
    apply_multiplier,
    dealiased_product,
    deviation,
    forward_transform,
)

logger = logging.getLogger(__name__)

_SECOND_DERIVATIVE = FourierMultiplier(lambda xi: -(xi**2), label="d_xx")


# =============================================================================
# PHYSICAL PARAMETERS
# =============================================================================

@dataclass(frozen=True)
class BoussinesqParams:
    """Density ratio r, depth ratio H and interface-depth parameter s."""

    r: float
    H: float
    s: float

    def __post_init__(self):
        for name in ("r", "H"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ArgumentError(f"{name} must be positive, got {value}")
        if not np.isfinite(self.s):
            raise ArgumentError(f"s must be finite, got {self.s}")
        low, high = self.s_range
        slack = 1e-12 * max(1.0, abs(low))
        if not (low - slack <= self.s <= high + slack):
            logger.warning("s = %g outside the usual range [%g, %g]", self.s, low, high)

    @property
    def s_range(self) -> Tuple[float, float]:
        rh = 1.0 + self.r * self.H
        return -rh, -2.0 * rh / 3.0

    @property
    def d1(self) -> float:
        return self.H / (self.r + self.H)

    @property
    def d2(self) -> float:
        return self.H**2 / (2.0 * (self.r + self.H) ** 2) * (self.s + 2.0 * (1.0 + self.r * self.H) / 3.0)

    @property
    def d3(self) -> float:
        return self.s * self.d1 / 2.0

    @property
    def d4(self) -> float:
        return (self.H**2 - self.r) / (self.r + self.H) ** 2

    @property
    def d5(self) -> float:
        return self.r * (1.0 + self.H) ** 2 / (self.r + self.H) ** 3

    @property
    def v_max(self) -> float:
        return boussinesq_vmax(self)


def boussinesq_vmax(params: BoussinesqParams) -> float:
    r, H = params.r, params.H
    return 1.0 + (H**2 - r) ** 2 / (8.0 * r * H * (1.0 + H) ** 2)


# =============================================================================
# CONSTANT SOLUTIONS
# =============================================================================

@dataclass(frozen=True)
class BoussinesqConstants:
    C1: float
    C2: float
    residual1: float
    residual2: float


def _flux_factor(params: BoussinesqParams) -> Polynomial:
    """D(z) = d1 + d4 z - d5 z^2."""
    return Polynomial([params.d1, params.d4, -params.d5])


def constant_polynomial(params: BoussinesqParams, c_s: float, A1: float, A2: float) -> Polynomial:
    """Quintic whose real roots are the admissible C1."""
    d1, d4, d5 = params.d1, params.d4, params.d5
    z = Polynomial([0.0, 1.0])
    D = _flux_factor(params)
    flux = c_s * z - A1
    return -(1.0 / d1) * z * D**2 + c_s * flux * D + (d5 * z - d4 / 2.0) * flux**2 - A2 * D**2


def algebraic_residuals(params: BoussinesqParams, c_s: float, A1: float, A2: float,
                        C1: float, C2: float) -> Tuple[float, float]:
    d1, d4, d5 = params.d1, params.d4, params.d5
    r1 = c_s * C1 - d1 * C2 - d4 * C1 * C2 + d5 * C1**2 * C2 - A1
    r2 = -C1 / d1 + c_s * C2 - (d4 / 2.0) * C2**2 + d5 * C1 * C2**2 - A2
    return float(r1), float(r2)


def find_boussinesq_constants(params: BoussinesqParams, c_s: float,
                              A1: float, A2: float) -> List[BoussinesqConstants]:
    """Real (C1, C2) pairs sorted by |C1|."""
    if abs(c_s**2 - 1.0) < SPEED_UNIT_TOLERANCE:
        raise ArgumentError("c_s^2 = 1 makes the constant system degenerate")

    D = _flux_factor(params)
    found = []
    for root in polished_real_roots(constant_polynomial(params, c_s, A1, A2)):
        C1 = root.value
        denominator = float(D(C1))
        if abs(denominator) <= DENOMINATOR_GUARD:
            logger.warning("Discarding C1 = %.12g: d1 + d4 C1 - d5 C1^2 vanishes", C1)
            continue
        C2 = (c_s * C1 - A1) / denominator
        r1, r2 = algebraic_residuals(params, c_s, A1, A2, C1, C2)
        gate = ROOT_RESIDUAL_TOLERANCE * max(1.0, abs(c_s * C1), abs(C2), abs(A1), abs(A2))
        if max(abs(r1), abs(r2)) > gate:
            logger.warning("Discarding (C1, C2) = (%.12g, %.12g): residuals %.3e, %.3e",
                           C1, C2, r1, r2)
            continue
        found.append(BoussinesqConstants(C1, C2, abs(r1), abs(r2)))
    found.sort(key=lambda pair: abs(pair.C1))
    return found


# =============================================================================
# SHIFTED SYSTEM
# =============================================================================

@dataclass(frozen=True)
class BoussinesqShifted:
    params: BoussinesqParams
    speed: float
    A1: float
    A2: float
    constants: BoussinesqConstants

    @cached_property
    def coupling(self) -> np.ndarray:
        """M_C: the part of the linearization contributed by (C1, C2)."""
        p = self.params
        C1, C2 = self.constants.C1, self.constants.C2
        return np.array([
            [(-p.d4 + 2.0 * p.d5 * C1) * C2, C1 * (-p.d4 + p.d5 * C1)],
            [p.d5 * C2**2, 2.0 * C2 * (-p.d4 / 2.0 + p.d5 * C1)],
        ])

    def mode_entries(self, k) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """(a11, a12, a21, a22) of the mode matrix, vectorized over k."""
        p = self.params
        k2 = np.asarray(k, dtype=float) ** 2
        M = self.coupling
        c = self.speed
        a11 = np.full_like(k2, c + M[0, 0])
        a12 = -(p.d1 - p.d2 * k2) + M[0, 1]
        a21 = np.full_like(k2, -1.0 / p.d1 + M[1, 0])
        a22 = c * (1.0 - p.d3 * k2) + M[1, 1]
        return a11, a12, a21, a22

    def symmetric_margins(self, grid: PeriodicGrid) -> np.ndarray:
        """Smallest eigenvalue of the symmetric part of every mode matrix (FFT order)."""
        a11, a12, a21, a22 = self.mode_entries(grid.wavenumbers)
        return 0.5 * (a11 + a22) - np.hypot(0.5 * (a11 - a22), 0.5 * (a12 + a21))

    def bind(self, grid: PeriodicGrid) -> "BoundBoussinesqProblem":
        return BoundBoussinesqProblem(self, grid)


def build_boussinesq_shifted(params: BoussinesqParams, c_s: float, A1: float, A2: float,
                             constants: BoussinesqConstants) -> BoussinesqShifted:
    return BoussinesqShifted(params, float(c_s), float(A1), float(A2), constants)


def mode_matrix(shifted: BoussinesqShifted, k: float) -> np.ndarray:
    a11, a12, a21, a22 = shifted.mode_entries(k)
    return np.array([[float(a11), float(a12)], [float(a21), float(a22)]])


def _quadratic_cubic_terms(shifted: BoussinesqShifted, eta: SpectralField, w: SpectralField):
    p = shifted.params
    C1, C2 = shifted.constants.C1, shifted.constants.C2
    d4, d5 = p.d4, p.d5

    we = dealiased_product([w, eta], 2).coeffs
    ee = dealiased_product([eta, eta], 2).coeffs
    ww = dealiased_product([w, w], 2).coeffs
    wee = dealiased_product([w, eta, eta], 3).coeffs
    wwe = dealiased_product([w, w, eta], 3).coeffs

    quad = ((d4 - 2.0 * d5 * C1) * we - d5 * C2 * ee,
            (d4 / 2.0 - d5 * C1) * ww - 2.0 * d5 * C2 * we)
    cubic = (-d5 * wee, -d5 * wwe)
    return quad, cubic


def boussinesq_nonlinearity(shifted: BoussinesqShifted, eta: SpectralField, w: SpectralField):
    """((N2_eta, N2_W), (N3_eta, N3_W)) as SpectralField pairs."""
    if eta.grid != w.grid:
        raise ConfigurationError("eta and W live on different grids")
    quad, cubic = _quadratic_cubic_terms(shifted, eta, w)
    grid = eta.grid
    return (
        (SpectralField(grid, quad[0]), SpectralField(grid, quad[1])),
        (SpectralField(grid, cubic[0]), SpectralField(grid, cubic[1])),
    )


class BoundBoussinesqProblem:
    """Two-component LinearizedProblem; vectors stack eta~ then W~."""

    n_components = 2

    def __init__(self, shifted: BoussinesqShifted, grid: PeriodicGrid):
        a11, a12, a21, a22 = shifted.mode_entries(grid.wavenumbers)
        det = a11 * a22 - a12 * a21
        small = np.abs(det) <= DENOMINATOR_GUARD
        if small.any():
            modes = grid.mode_indices[small][:5].tolist()
            raise SingularDenominatorError(f"mode matrix singular at modes {modes}")
        self.shifted = shifted
        self.grid = grid
        self._entries = (a11, a12, a21, a22)
        self._det = det

    def _split(self, vec: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        n = self.grid.n_modes
        return vec[:n], vec[n:]

    def apply_linear(self, vec: np.ndarray) -> np.ndarray:
        a11, a12, a21, a22 = self._entries
        eta, w = self._split(vec)
        return np.concatenate([a11 * eta + a12 * w, a21 * eta + a22 * w])

    def solve_linear(self, vec: np.ndarray) -> np.ndarray:
        a11, a12, a21, a22 = self._entries
        f, g = self._split(vec)
        return np.concatenate([(a22 * f - a12 * g) / self._det,
                               (a11 * g - a21 * f) / self._det])

    def nonlinear_parts(self, vec: np.ndarray) -> Dict[int, np.ndarray]:
        eta, w = (SpectralField(self.grid, part) for part in self._split(vec))
        quad, cubic = _quadratic_cubic_terms(self.shifted, eta, w)
        return {2: np.concatenate(quad), 3: np.concatenate(cubic)}


def seed_pair(shifted: BoussinesqShifted, grid: PeriodicGrid,
              amplitude: float = BOUSSINESQ_SEED_AMPLITUDE,
              width: float = BOUSSINESQ_SEED_WIDTH,
              kind: str = "sech2") -> Tuple[SpectralField, SpectralField]:
    """eta~ = a bump(kappa x) (sech^2 by default), W~ = (c_s/d1) eta~."""
    bump = seed_shape(kind, grid.nodes, grid.half_length, amplitude, width)
    ratio = shifted.speed / shifted.params.d1
    return forward_transform(bump, grid), forward_transform(ratio * bump, grid)


def solve_boussinesq(
    shifted: BoussinesqShifted,
    grid: PeriodicGrid,
    initial: Optional[Tuple[SpectralField, SpectralField]] = None,
    settings: Optional[IterationSettings] = None,
    accel: Optional[MpeConfig] = None,
) -> Tuple[SpectralField, SpectralField, IterationTrace]:
    """Returns the full profiles eta = eta~ + C1 and W = W~ + C2."""
    if initial is None:
        initial = seed_pair(shifted, grid)
    eta0, w0 = initial
    if eta0.grid != grid or w0.grid != grid:
        raise ConfigurationError("initial pair lives on a different grid")

    logger.info("System stabilizing factor uses the unweighted sum of both component inner products")
    try:
        bound = shifted.bind(grid)
    except SingularDenominatorError as exc:
        trace = IterationTrace()
        trace.finish(Outcome.SINGULAR_DENOMINATOR, str(exc))
        logger.warning("Mode matrix singular on this grid: %s", exc)
        return eta0.shifted(shifted.constants.C1), w0.shifted(shifted.constants.C2), trace

    vec, trace = run_iteration(bound, np.concatenate([eta0.coeffs, w0.coeffs]), settings, accel)
    n = grid.n_modes
    eta = SpectralField(grid, vec[:n]).shifted(shifted.constants.C1)
    w = SpectralField(grid, vec[n:]).shifted(shifted.constants.C2)
    return eta, w, trace


# =============================================================================
# RESIDUALS
# =============================================================================

def _system_left_sides(params: BoussinesqParams, c_s: float,
                       eta: SpectralField, w: SpectralField) -> Tuple[np.ndarray, np.ndarray]:
    """Both integrated equations at the nodes, without A1, A2."""
    e, v = eta.values(), w.values()
    w_xx = apply_multiplier(_SECOND_DERIVATIVE, w).values()
    d1, d2, d3, d4, d5 = params.d1, params.d2, params.d3, params.d4, params.d5
    g1 = c_s * e - d1 * v - d2 * w_xx - d4 * e * v + d5 * e**2 * v
    g2 = -e / d1 + c_s * (v + d3 * w_xx) - (d4 / 2.0) * v**2 + d5 * e * v**2
    return g1, g2


def profile_residuals(shifted: BoussinesqShifted, eta: SpectralField,
                      w: SpectralField) -> Tuple[np.ndarray, np.ndarray]:
    """Nodal residuals of the full system at (eta, W)."""
    g1, g2 = _system_left_sides(shifted.params, shifted.speed, eta, w)
    return g1 - shifted.A1, g2 - shifted.A2


def shifted_residuals(shifted: BoussinesqShifted, eta_t: SpectralField,
                      w_t: SpectralField) -> Tuple[np.ndarray, np.ndarray]:
    """Nodal residuals of the difference system at (eta~, W~)."""
    p = shifted.params
    a11, a12, a21, a22 = shifted.mode_entries(0.0)
    e, v = eta_t.values(), w_t.values()
    w_xx = apply_multiplier(_SECOND_DERIVATIVE, w_t).values()
    lin1 = float(a11) * e + float(a12) * v - p.d2 * w_xx
    lin2 = float(a21) * e + float(a22) * v + shifted.speed * p.d3 * w_xx

    C1, C2 = shifted.constants.C1, shifted.constants.C2
    n1 = (p.d4 - 2.0 * p.d5 * C1) * v * e - p.d5 * C2 * e**2 - p.d5 * v * e**2
    n2 = (p.d4 / 2.0 - p.d5 * C1) * v**2 - 2.0 * p.d5 * C2 * v * e - p.d5 * v**2 * e
    return lin1 - n1, lin2 - n2


def _dealiased_left_sides(params: BoussinesqParams, c_s: float,
                          eta: SpectralField, w: SpectralField) -> Tuple[SpectralField, SpectralField]:
    """Both integrated equations without A1, A2, products taken alias-free."""
    if eta.grid != w.grid:
        raise ConfigurationError("eta and W live on different grids")
    d1, d2, d3, d4, d5 = params.d1, params.d2, params.d3, params.d4, params.d5
    w_xx = apply_multiplier(_SECOND_DERIVATIVE, w)
    ew = dealiased_product([eta, w], 2)
    ww = dealiased_product([w, w], 2)
    eew = dealiased_product([eta, eta, w], 3)
    eww = dealiased_product([eta, w, w], 3)
    g1 = eta * c_s - w * d1 - w_xx * d2 - ew * d4 + eew * d5
    g2 = eta * (-1.0 / d1) + (w + w_xx * d3) * c_s - ww * (d4 / 2.0) + eww * d5
    return g1, g2


def reconstruct_boussinesq_constants(params: BoussinesqParams, c_s: float,
                                     eta: SpectralField, w: SpectralField):
    """((A1 mean, A1 std), (A2 mean, A2 std)) over the grid."""
    g1, g2 = _dealiased_left_sides(params, c_s, eta, w)
    return (g1.mean(), deviation(g1)), (g2.mean(), deviation(g2))
