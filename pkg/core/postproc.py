"""
Post-processing of computed profiles: phase portraits, reconstruction of the
integration constant, shape metrics and the verification used by the CLI.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from typing import Dict, Tuple

import numpy as np

from config import PLATEAU_HIGH, PLATEAU_LOW, VERIFY_MEAN_TOLERANCE, VERIFY_STD_TOLERANCE
from core.boussinesq import BoussinesqParams, reconstruct_boussinesq_constants
from core.models.scalar import ScalarModel
from core.spectral import (
    SpectralField,
    apply_multiplier,
    dealiased_product,
    deviation,
    spectral_derivative,
)

logger = logging.getLogger(__name__)


def phase_portrait(field: SpectralField) -> np.ndarray:
    """(phi, phi') at every node, closed by repeating the first point."""
    values = field.values()
    slopes = spectral_derivative(field).values()
    points = np.column_stack([values, slopes])
    return np.vstack([points, points[:1]])


def _power(phi: SpectralField, m: int) -> SpectralField:
    if m == 0:
        return SpectralField.constant(phi.grid, 1.0)
    if m == 1:
        return phi
    return dealiased_product([phi] * m, m)


def reconstruct_constant(model: ScalarModel, c_s: float, phi: SpectralField) -> Tuple[float, float]:
    """
    Mean and standard deviation of -c_s phi - L phi + f(phi), with the powers
    of phi formed by the same dealiased products the iteration uses.
    """
    g = phi * (-c_s) - apply_multiplier(model.dispersion, phi)
    for m, a in enumerate(model.nonlinearity.polynomial.coef):
        if a != 0.0:
            g = g + _power(phi, m) * float(a)
    return g.mean(), deviation(g)


@dataclass(frozen=True)
class ProfileMetrics:
    maximum: float
    minimum: float
    peak_location: float
    plateau_ratio: float

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


def _width_above(values: np.ndarray, level: float, spacing: float) -> float:
    return float(np.count_nonzero(values > level)) * spacing


def profile_metrics(field: SpectralField) -> ProfileMetrics:
    """
    Amplitude, crest position and plateau ratio; the ratio compares the
    width above min + 0.95*(max - min) to the width above min + 0.5*(max - min).
    """
    values = field.values()
    grid = field.grid
    top, bottom = float(values.max()), float(values.min())
    peak = float(grid.nodes[int(np.argmax(values))])
    span = top - bottom
    if span <= 1e-14 * max(1.0, abs(top)):
        return ProfileMetrics(top, bottom, peak, 1.0)

    high = _width_above(values, bottom + PLATEAU_HIGH * span, grid.spacing)
    low = _width_above(values, bottom + PLATEAU_LOW * span, grid.spacing)
    ratio = high / low if low > 0 else 1.0
    return ProfileMetrics(top, bottom, peak, ratio)


# =============================================================================
# VERIFICATION
# =============================================================================

@dataclass(frozen=True)
class VerifyResult:
    passed: bool
    reconstructed: Dict[str, Tuple[float, float]]
    message: str = ""


def _within(mean: float, std: float, target: float) -> bool:
    scale = 1.0 + abs(target)
    return std <= VERIFY_STD_TOLERANCE * scale and abs(mean - target) <= VERIFY_MEAN_TOLERANCE * scale


def verify_scalar_profile(model: ScalarModel, c_s: float, A: float, phi: SpectralField) -> VerifyResult:
    mean, std = reconstruct_constant(model, c_s, phi)
    passed = _within(mean, std, A)
    message = f"A = {mean:.12g} +/- {std:.3e} (configured {A:g})"
    logger.info("Scalar verification %s: %s", "passed" if passed else "failed", message)
    return VerifyResult(passed, {"A": (mean, std)}, message)


def verify_boussinesq_profile(params: BoussinesqParams, c_s: float, A1: float, A2: float,
                              eta: SpectralField, w: SpectralField) -> VerifyResult:
    (m1, s1), (m2, s2) = reconstruct_boussinesq_constants(params, c_s, eta, w)
    passed = _within(m1, s1, A1) and _within(m2, s2, A2)
    message = (f"A1 = {m1:.12g} +/- {s1:.3e} (configured {A1:g}), "
               f"A2 = {m2:.12g} +/- {s2:.3e} (configured {A2:g})")
    logger.info("Boussinesq verification %s: %s", "passed" if passed else "failed", message)
    return VerifyResult(passed, {"A1": (m1, s1), "A2": (m2, s2)}, message)
