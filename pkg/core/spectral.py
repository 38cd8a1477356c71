"""
Spectral Core - periodic grid, DFT conventions, Fourier multipliers,
spectral differentiation and dealiased polynomial products.

Conventions:
- Nodes x_j = -l + 2lj/N, j = 0..N-1 (the period is 2l).
- Coefficients carry the 1/N factor, so coeff(0) is the node mean.
- Coefficient arrays are kept in numpy FFT order
  (n = 0, 1, ..., N/2-1, -N/2, ..., -1); use SpectralField.coeff(n)
  for signed access. Because x_0 = -l, mode n picks up the phase (-1)^n
  relative to the plain FFT.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from config import (
    IMAGINARY_RESIDUE_TOLERANCE,
    MAX_PRODUCT_DEGREE,
    MIN_MODES,
    RESOLUTION_TAIL_FRACTION,
    SYMMETRY_TOLERANCE,
)
from core.errors import (
    ArgumentError,
    ConfigurationError,
    InternalConsistencyError,
    OperatorDefinitionError,
)

logger = logging.getLogger(__name__)


# =============================================================================
# GRID
# =============================================================================

@dataclass(frozen=True)
class PeriodicGrid:
    """Uniform grid on [-l, l) with N (even) nodes."""

    half_length: float
    n_modes: int

    def __post_init__(self):
        if not (np.isfinite(self.half_length) and self.half_length > 0):
            raise ConfigurationError(f"half_length must be positive, got {self.half_length}")
        if int(self.n_modes) != self.n_modes:
            raise ConfigurationError(f"n_modes must be an integer, got {self.n_modes}")
        n = int(self.n_modes)
        if n % 2 or n < MIN_MODES:
            raise ConfigurationError(f"n_modes must be even and >= {MIN_MODES}, got {n}")
        object.__setattr__(self, "n_modes", n)
        object.__setattr__(self, "half_length", float(self.half_length))

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_length / self.n_modes

    @cached_property
    def nodes(self) -> np.ndarray:
        return _readonly(-self.half_length + self.spacing * np.arange(self.n_modes))

    @cached_property
    def mode_indices(self) -> np.ndarray:
        """Signed integer mode numbers n in FFT order."""
        return _readonly(_mode_indices(self.n_modes))

    @cached_property
    def wavenumbers(self) -> np.ndarray:
        """Wavenumbers n*pi/l in FFT order."""
        return _readonly(self.mode_indices * (np.pi / self.half_length))

    @property
    def nyquist_position(self) -> int:
        """Array position of the n = -N/2 mode."""
        return self.n_modes // 2


def _readonly(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def _mode_indices(size: int) -> np.ndarray:
    return np.rint(np.fft.fftfreq(size, d=1.0 / size)).astype(np.int64)


def _phase(size: int) -> np.ndarray:
    """(-1)^n in FFT order: the shift from x_0 = 0 to x_0 = -l."""
    return np.where(_mode_indices(size) % 2 == 0, 1.0, -1.0)


def _values_to_coeffs(values: np.ndarray) -> np.ndarray:
    """Exactly conjugate-symmetric coefficients of real node values."""
    size = values.shape[-1]
    half = np.fft.rfft(values)
    coeffs = np.empty(size, dtype=complex)
    coeffs[: size // 2] = half[: size // 2]
    coeffs[size // 2] = half[size // 2].real
    coeffs[size // 2 + 1:] = np.conj(half[1: size // 2][::-1])
    coeffs[0] = coeffs[0].real
    return _phase(size) * coeffs / size


def _coeffs_to_real_values(coeffs: np.ndarray) -> np.ndarray:
    """Node values of conjugate-symmetric coefficients (Hermitian half only)."""
    size = coeffs.shape[-1]
    half = (_phase(size) * coeffs)[: size // 2 + 1]
    return np.fft.irfft(half, n=size) * size


def conjugate_symmetry_defect(coeffs: np.ndarray) -> float:
    """max |c(-n) - conj(c(n))| over all n, including the self-paired modes."""
    size = coeffs.shape[-1]
    mirror = (-np.arange(size)) % size
    return float(np.max(np.abs(coeffs - np.conj(coeffs[..., mirror])), initial=0.0))


def enforce_conjugate_symmetry(coeffs: np.ndarray) -> np.ndarray:
    """Project onto conjugate-symmetric arrays along the last axis."""
    size = coeffs.shape[-1]
    mirror = (-np.arange(size)) % size
    return 0.5 * (coeffs + np.conj(coeffs[..., mirror]))


# =============================================================================
# FIELDS
# =============================================================================

@dataclass(frozen=True, eq=False)
class SpectralField:
    """A real periodic function held as its Fourier coefficients."""

    grid: PeriodicGrid
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=complex)
        if coeffs.shape != (self.grid.n_modes,):
            raise ConfigurationError(
                f"expected {self.grid.n_modes} coefficients, got shape {coeffs.shape}"
            )
        object.__setattr__(self, "coeffs", _readonly(coeffs))

    @classmethod
    def zeros(cls, grid: PeriodicGrid) -> "SpectralField":
        return cls(grid, np.zeros(grid.n_modes, dtype=complex))

    @classmethod
    def constant(cls, grid: PeriodicGrid, value: float) -> "SpectralField":
        coeffs = np.zeros(grid.n_modes, dtype=complex)
        coeffs[0] = value
        return cls(grid, coeffs)

    @classmethod
    def from_function(cls, grid: PeriodicGrid, fn: Callable[[np.ndarray], np.ndarray]) -> "SpectralField":
        return forward_transform(np.asarray(fn(grid.nodes), dtype=float), grid)

    def coeff(self, n: int) -> complex:
        """Coefficient of exp(i n pi x / l), n in [-N/2, N/2)."""
        half = self.grid.n_modes // 2
        if not -half <= n < half:
            raise ArgumentError(f"mode {n} outside [-{half}, {half})")
        return complex(self.coeffs[n % self.grid.n_modes])

    def values(self) -> np.ndarray:
        return inverse_transform(self)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def mean(self) -> float:
        return float(self.coeffs[0].real)

    def shifted(self, constant: float) -> "SpectralField":
        """The field plus a constant (only the mean mode changes)."""
        coeffs = self.coeffs.copy()
        coeffs[0] += constant
        return SpectralField(self.grid, coeffs)

    def _check_grid(self, other: "SpectralField") -> None:
        if other.grid != self.grid:
            raise ConfigurationError("fields live on different grids")

    def __add__(self, other: "SpectralField") -> "SpectralField":
        self._check_grid(other)
        return SpectralField(self.grid, self.coeffs + other.coeffs)

    def __sub__(self, other: "SpectralField") -> "SpectralField":
        self._check_grid(other)
        return SpectralField(self.grid, self.coeffs - other.coeffs)

    def __mul__(self, scalar: float) -> "SpectralField":
        return SpectralField(self.grid, self.coeffs * float(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> "SpectralField":
        return SpectralField(self.grid, -self.coeffs)


def forward_transform(values: np.ndarray, grid: PeriodicGrid) -> SpectralField:
    """coeff(n) = (1/N) sum_j values_j exp(-i n pi x_j / l)."""
    values = np.asarray(values)
    if values.ndim != 1 or values.shape[0] != grid.n_modes:
        raise ConfigurationError(
            f"expected {grid.n_modes} node values, got shape {values.shape}"
        )
    if np.iscomplexobj(values):
        raise ConfigurationError("forward_transform expects real node values")
    return SpectralField(grid, _values_to_coeffs(values.astype(float)))


def inverse_transform(field: SpectralField) -> np.ndarray:
    """Node values sum_n coeff(n) exp(i n pi x_j / l), checked to be real."""
    coeffs = field.coeffs
    scale = max(1.0, float(np.max(np.abs(coeffs), initial=0.0)))
    defect = conjugate_symmetry_defect(coeffs)
    if defect > SYMMETRY_TOLERANCE * scale:
        raise InternalConsistencyError(f"conjugate symmetry violated by {defect:.3e}")
    size = coeffs.shape[0]
    values = np.fft.ifft(_phase(size) * coeffs) * size
    residue = float(np.max(np.abs(values.imag), initial=0.0))
    if residue > IMAGINARY_RESIDUE_TOLERANCE * scale:
        raise InternalConsistencyError(f"imaginary residue {residue:.3e} after inverse transform")
    return values.real.copy()


# =============================================================================
# MULTIPLIERS
# =============================================================================

@dataclass(frozen=True)
class FourierMultiplier:
    """Operator acting as multiplication by symbol(xi) on mode xi = n pi / l."""

    symbol: Callable[[np.ndarray], np.ndarray]
    label: str = "multiplier"

    def __call__(self, xi) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        return np.broadcast_to(np.asarray(self.symbol(xi), dtype=float), xi.shape)

    def sample(self, grid: PeriodicGrid) -> np.ndarray:
        """Symbol at every grid wavenumber (FFT order)."""
        values = np.array(self(grid.wavenumbers), dtype=float)
        bad = ~np.isfinite(values)
        if bad.any():
            modes = grid.mode_indices[bad][:5].tolist()
            raise OperatorDefinitionError(f"symbol '{self.label}' not finite at modes {modes}")
        return values


def apply_multiplier(multiplier: FourierMultiplier, field: SpectralField) -> SpectralField:
    return SpectralField(field.grid, multiplier.sample(field.grid) * field.coeffs)


def spectral_derivative(field: SpectralField) -> SpectralField:
    """d/dx; the Nyquist mode is dropped so the result stays real."""
    grid = field.grid
    factor = 1j * grid.wavenumbers
    factor = factor.copy()
    factor[grid.nyquist_position] = 0.0
    return SpectralField(grid, factor * field.coeffs)


# =============================================================================
# PRODUCTS
# =============================================================================

def padded_size(n_modes: int, degree: int) -> int:
    """Smallest even M > (degree + 1) * N / 2: no product mode aliases into |n| <= N/2."""
    size = (degree + 1) * n_modes // 2 + 1
    return size + (size % 2)


def _pad(coeffs: np.ndarray, size: int) -> np.ndarray:
    n = coeffs.shape[0]
    half = n // 2
    padded = np.zeros(size, dtype=complex)
    padded[:half] = coeffs[:half]
    padded[size - half + 1:] = coeffs[half + 1:]
    # Nyquist split evenly between -N/2 and +N/2
    padded[half] = 0.5 * coeffs[half]
    padded[size - half] = 0.5 * coeffs[half]
    return padded


def _truncate(padded: np.ndarray, n: int) -> np.ndarray:
    size = padded.shape[0]
    half = n // 2
    coeffs = np.empty(n, dtype=complex)
    coeffs[:half] = padded[:half]
    coeffs[half + 1:] = padded[size - half + 1:]
    coeffs[half] = padded[size - half] + padded[half]
    return coeffs


def dealiased_product(fields: Sequence[SpectralField], degree: int) -> SpectralField:
    """Alias-free product of `degree` fields, evaluated on a zero-padded grid."""
    if not 2 <= degree <= MAX_PRODUCT_DEGREE:
        raise ArgumentError(f"product degree must lie in [2, {MAX_PRODUCT_DEGREE}], got {degree}")
    if len(fields) != degree:
        raise ArgumentError(f"degree {degree} product needs {degree} fields, got {len(fields)}")
    grid = fields[0].grid
    for other in fields[1:]:
        if other.grid != grid:
            raise ConfigurationError("dealiased_product: fields live on different grids")

    size = padded_size(grid.n_modes, degree)
    product = np.ones(size)
    for item in fields:
        product = product * _coeffs_to_real_values(_pad(item.coeffs, size))
    return SpectralField(grid, _truncate(_values_to_coeffs(product), grid.n_modes))


def inner_product(a: SpectralField, b: SpectralField) -> float:
    """Re sum_n a_n conj(b_n); no measure factor."""
    if a.grid != b.grid:
        raise ConfigurationError("inner_product: fields live on different grids")
    return float(np.real(np.vdot(b.coeffs, a.coeffs)))


# =============================================================================
# DIAGNOSTICS
# =============================================================================

def deviation(field: SpectralField) -> float:
    """Standard deviation of the node values, read off the non-mean coefficients."""
    return float(np.linalg.norm(field.coeffs[1:]))


def tail_ratio(field: SpectralField, fraction: float = RESOLUTION_TAIL_FRACTION) -> float:
    """
    Largest |coeff(n)| over the top `fraction` of the band, |n| >= (1/2 - fraction) N,
    relative to the largest non-mean |coeff(n)|. Zero for a constant field.
    """
    if not 0.0 < fraction <= 0.5:
        raise ArgumentError(f"fraction must lie in (0, 1/2], got {fraction}")
    grid = field.grid
    magnitudes = np.abs(field.coeffs)
    magnitudes[0] = 0.0
    peak = float(magnitudes.max())
    if peak == 0.0:
        return 0.0
    band = np.abs(grid.mode_indices) >= (0.5 - fraction) * grid.n_modes
    return float(magnitudes[band].max()) / peak
