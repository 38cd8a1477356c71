"""
Extended Petviashvili iteration for  L u = sum_j N_j(u)  with N_j
homogeneous of degree j:

    s(u)    = <L u, u> / <N(u), u>
    u_next  = L^{-1} sum_j s(u)^(j/(j-1)) N_j(u)

The engine works on flat coefficient vectors through the LinearizedProblem
protocol; the scalar entry points below bind a ShiftedProblem to a grid.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Deque, Dict, List, Optional, Tuple

import numpy as np

from config import (
    DIVERGENCE_CAP,
    MAX_ITER,
    QUOTIENT_FLOOR,
    SEED_KINDS,
    SYMMETRY_TOLERANCE,
    TOL_RES,
    TOL_SFE,
)
from core.constant_shift import ShiftedProblem
from core.errors import (
    ArgumentError,
    ConfigurationError,
    InternalConsistencyError,
    SignBreakdownError,
    SingularDenominatorError,
)
from core.mpe import MpeConfig, accelerated_solve_cycle, mpe_extrapolate
from core.protocols import LinearizedProblem
from core.spectral import (
    PeriodicGrid,
    SpectralField,
    conjugate_symmetry_defect,
    enforce_conjugate_symmetry,
    forward_transform,
)

logger = logging.getLogger(__name__)


# =============================================================================
# SETTINGS AND TRACE
# =============================================================================

class Outcome(str, Enum):
    CONVERGED = "converged"
    MAX_ITER = "max-iter"
    DIVERGED = "diverged"
    SINGULAR_DENOMINATOR = "singular-denominator"
    SIGN_BREAKDOWN = "sign-breakdown"
    INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class IterationSettings:
    max_iter: int = MAX_ITER
    tol_res: float = TOL_RES
    tol_sfe: float = TOL_SFE
    divergence_cap: float = DIVERGENCE_CAP
    record_iterates: bool = False

    def __post_init__(self):
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise ArgumentError(f"max_iter must be an integer >= 1, got {self.max_iter}")
        for name in ("tol_res", "tol_sfe", "divergence_cap"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ArgumentError(f"{name} must be positive, got {value}")
        object.__setattr__(self, "max_iter", int(self.max_iter))


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    res: float
    sfe: float
    s: float


@dataclass
class IterationTrace:
    records: List[IterationRecord] = field(default_factory=list)
    outcome: Outcome = Outcome.MAX_ITER
    message: str = ""
    extrapolations: int = 0
    rejected_extrapolations: int = 0
    iterates: List[np.ndarray] = field(default_factory=list)

    def append(self, iteration: int, res: float, s: float, iterate: Optional[np.ndarray] = None) -> None:
        self.records.append(IterationRecord(iteration, float(res), sfe(s), float(s)))
        if iterate is not None:
            self.iterates.append(iterate.copy())

    def finish(self, outcome: Outcome, message: str = "") -> None:
        self.outcome = outcome
        self.message = message

    @property
    def converged(self) -> bool:
        return self.outcome is Outcome.CONVERGED

    @property
    def iterations(self) -> int:
        return len(self.records)

    @property
    def final_res(self) -> float:
        return self.records[-1].res if self.records else float("nan")

    @property
    def final_sfe(self) -> float:
        return self.records[-1].sfe if self.records else float("nan")

    def as_rows(self) -> np.ndarray:
        """(iter, res, sfe, s) rows."""
        if not self.records:
            return np.empty((0, 4))
        return np.array([(r.iteration, r.res, r.sfe, r.s) for r in self.records], dtype=float)


def sfe(s_value: float) -> float:
    return abs(float(s_value) - 1.0)


def exponent(degree: int) -> float:
    return degree / (degree - 1.0)


# =============================================================================
# ENGINE (protocol level)
# =============================================================================

def _total(parts: Dict[int, np.ndarray], like: np.ndarray) -> np.ndarray:
    total = np.zeros_like(like, dtype=complex)
    for part in parts.values():
        total = total + part
    return total


def quotient(problem: LinearizedProblem, vec: np.ndarray,
             parts: Optional[Dict[int, np.ndarray]] = None) -> float:
    if parts is None:
        parts = problem.nonlinear_parts(vec)
    numerator = np.real(np.vdot(vec, problem.apply_linear(vec)))
    denominator = np.real(np.vdot(vec, _total(parts, vec)))
    if not np.isfinite(denominator) or abs(denominator) <= QUOTIENT_FLOOR:
        raise SingularDenominatorError(f"<N(u), u> = {denominator:.3e}")
    return float(numerator / denominator)


def residual(problem: LinearizedProblem, vec: np.ndarray,
             parts: Optional[Dict[int, np.ndarray]] = None) -> float:
    if parts is None:
        parts = problem.nonlinear_parts(vec)
    return float(np.linalg.norm(problem.apply_linear(vec) - _total(parts, vec)))


def _realify(problem: LinearizedProblem, vec: np.ndarray) -> np.ndarray:
    blocks = vec.reshape(problem.n_components, problem.grid.n_modes)
    scale = max(1.0, float(np.max(np.abs(blocks), initial=0.0)))
    defect = conjugate_symmetry_defect(blocks)
    if defect > SYMMETRY_TOLERANCE * scale:
        raise InternalConsistencyError(f"iterate lost conjugate symmetry ({defect:.3e})")
    return enforce_conjugate_symmetry(blocks).reshape(-1)


def step(problem: LinearizedProblem, vec: np.ndarray, s: Optional[float] = None,
         parts: Optional[Dict[int, np.ndarray]] = None) -> np.ndarray:
    """One Petviashvili update, sharing one s(u) over every degree."""
    if parts is None:
        parts = problem.nonlinear_parts(vec)
    if s is None:
        s = quotient(problem, vec, parts)
    forcing = np.zeros_like(vec, dtype=complex)
    for degree, part in parts.items():
        power = exponent(degree)
        if s < 0 and not power.is_integer():
            raise SignBreakdownError(f"s(u) = {s:.6g} < 0 with exponent {power:g}")
        forcing = forcing + s**power * part
    return _realify(problem, problem.solve_linear(forcing))


def _is_converged(res: float, s: float, settings: IterationSettings) -> bool:
    return res <= settings.tol_res and sfe(s) <= settings.tol_sfe


class _Halt(Exception):
    """Ends run_iteration with an outcome; `result` overrides the last measured iterate."""

    def __init__(self, outcome: Outcome, message: str = "", result: Optional[np.ndarray] = None):
        super().__init__(message)
        self.outcome = outcome
        self.message = message
        self.result = result


def run_iteration(
    problem: LinearizedProblem,
    vec0: np.ndarray,
    settings: Optional[IterationSettings] = None,
    accel: Optional[MpeConfig] = None,
) -> Tuple[np.ndarray, IterationTrace]:
    """
    Iterate until RES and SFE meet their tolerances or a breakdown occurs.
    Breakdowns end up in the trace outcome, never raised. The returned
    vector is always the one the last trace row was measured on.
    """
    settings = settings or IterationSettings()
    vec = np.array(vec0, dtype=complex).reshape(-1)
    if not np.any(vec):
        raise ArgumentError("initial iterate must be nonzero")

    trace = IterationTrace()
    last = vec

    def advance(v: np.ndarray) -> np.ndarray:
        """Measure v, record its row and return the next plain iterate."""
        nonlocal last
        last = v
        try:
            parts = problem.nonlinear_parts(v)
            res = residual(problem, v, parts)
            s = quotient(problem, v, parts)
        except SingularDenominatorError as exc:
            raise _Halt(Outcome.SINGULAR_DENOMINATOR, str(exc)) from exc

        trace.append(trace.iterations, res, s, v if settings.record_iterates else None)
        logger.debug("iter %d | RES %.3e | SFE %.3e | s %.12g", trace.iterations - 1, res, sfe(s), s)
        if _is_converged(res, s, settings):
            raise _Halt(Outcome.CONVERGED)
        if trace.iterations >= settings.max_iter:
            raise _Halt(Outcome.MAX_ITER, f"no convergence in {settings.max_iter} iterations")

        try:
            new = step(problem, v, s, parts)
        except SignBreakdownError as exc:
            raise _Halt(Outcome.SIGN_BREAKDOWN, str(exc)) from exc
        except InternalConsistencyError as exc:
            raise _Halt(Outcome.INCONSISTENT, str(exc)) from exc

        norm = np.linalg.norm(new)
        if not np.isfinite(norm) or norm > settings.divergence_cap:
            raise _Halt(Outcome.DIVERGED, f"iterate norm {norm:.3e}")
        return new

    def residual_of(v: np.ndarray) -> float:
        return residual(problem, v)

    try:
        if accel is None:
            while True:
                vec = advance(vec)
        elif accel.restart:
            while True:
                vec, accepted = accelerated_solve_cycle(advance, vec, accel, residual_of)
                trace.extrapolations += 1
                trace.rejected_extrapolations += int(not accepted)
        else:
            window: Deque[np.ndarray] = deque([vec], maxlen=accel.window)
            while True:
                vec = advance(vec)
                window.append(vec)
                if len(window) == accel.window:
                    trace.extrapolations += 1
                    candidate = mpe_extrapolate(list(window), accel.ls_tolerance)
                    _check_candidate(problem, candidate, settings, trace)
    except _Halt as halt:
        trace.finish(halt.outcome, halt.message)
        if halt.result is not None:
            last = halt.result

    logger.info(
        "Petviashvili %s after %d iterations (RES %.3e, SFE %.3e, %d/%d extrapolations kept)",
        trace.outcome.value, trace.iterations, trace.final_res, trace.final_sfe,
        trace.extrapolations - trace.rejected_extrapolations, trace.extrapolations,
    )
    return last, trace


def _check_candidate(problem, candidate, settings, trace) -> None:
    """Sliding-window mode: extrapolants are only monitored, never fed back."""
    try:
        parts = problem.nonlinear_parts(candidate)
        res = residual(problem, candidate, parts)
        s = quotient(problem, candidate, parts)
    except SingularDenominatorError:
        return
    if _is_converged(res, s, settings):
        trace.append(trace.iterations, res, s, candidate if settings.record_iterates else None)
        raise _Halt(Outcome.CONVERGED, "extrapolated iterate", result=candidate)


# =============================================================================
# SCALAR ENTRY POINTS
# =============================================================================

def seed_shape(kind: str, x: np.ndarray, half_length: float, amplitude: float, width: float) -> np.ndarray:
    """Node values of a*sech^2(kappa x), a*exp(-(kappa x)^2) or a*cos(pi x / l)."""
    if kind not in SEED_KINDS:
        raise ConfigurationError(f"unknown seed kind '{kind}', expected one of {SEED_KINDS}")
    if kind == "cos":
        return amplitude * np.cos(np.pi * x / half_length)
    if kind == "gaussian":
        return amplitude * np.exp(-((width * x) ** 2))
    return amplitude / np.cosh(width * x) ** 2


def seed_profile(grid: PeriodicGrid, c_s: float, kind: str = "sech2",
                 amplitude: Optional[float] = None, width: Optional[float] = None) -> SpectralField:
    """Seed bump with a = c_s and kappa = sqrt(c_s)/2 unless given."""
    a = c_s if amplitude is None else amplitude
    kappa = 0.5 * np.sqrt(abs(c_s)) if width is None else width
    return forward_transform(seed_shape(kind, grid.nodes, grid.half_length, a, kappa), grid)


def stabilizing_factor(sp: ShiftedProblem, u: SpectralField) -> float:
    return quotient(sp.bind(u.grid), u.coeffs)


def petviashvili_step(sp: ShiftedProblem, u: SpectralField) -> SpectralField:
    return SpectralField(u.grid, step(sp.bind(u.grid), u.coeffs))


def residual_norm(sp: ShiftedProblem, u: SpectralField) -> float:
    """||L~ u - N(u)||_2 over Fourier coefficients."""
    return residual(sp.bind(u.grid), u.coeffs)


def solve(
    sp: ShiftedProblem,
    grid: PeriodicGrid,
    u0: SpectralField,
    settings: Optional[IterationSettings] = None,
    accel: Optional[MpeConfig] = None,
) -> Tuple[SpectralField, IterationTrace]:
    """Returns the profile in the shifted variable; add sp.constant for phi."""
    if u0.grid != grid:
        raise ConfigurationError("initial iterate lives on a different grid")
    if not np.any(u0.coeffs):
        raise ArgumentError("initial iterate must be nonzero")
    try:
        bound = sp.bind(grid)
    except SingularDenominatorError as exc:
        trace = IterationTrace()
        trace.finish(Outcome.SINGULAR_DENOMINATOR, str(exc))
        logger.warning("Shifted operator is singular on this grid: %s", exc)
        return u0, trace
    vec, trace = run_iteration(bound, u0.coeffs, settings, accel)
    return SpectralField(grid, vec), trace
