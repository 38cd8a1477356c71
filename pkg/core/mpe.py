"""
Minimal polynomial extrapolation (MPE) of a fixed-point sequence.

Given iterates x_0 ... x_{k+1} with differences u_i = x_{i+1} - x_i, solve

    min || sum_{i<k} c_i u_i + u_k ||,   c_k = 1,

normalize gamma = c / sum(c) and return sum_{i<=k} gamma_i x_i.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from config import MPE_CYCLE_WIDTH, MPE_LS_TOLERANCE, MPE_RESTART, MPE_SAFEGUARD_SLACK
from core.errors import ArgumentError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MpeConfig:
    cycle_width: int = MPE_CYCLE_WIDTH
    restart: bool = MPE_RESTART
    ls_tolerance: float = MPE_LS_TOLERANCE

    def __post_init__(self):
        if int(self.cycle_width) != self.cycle_width or self.cycle_width < 1:
            raise ArgumentError(f"cycle_width must be an integer >= 1, got {self.cycle_width}")
        if not (np.isfinite(self.ls_tolerance) and self.ls_tolerance > 0):
            raise ArgumentError(f"ls_tolerance must be positive, got {self.ls_tolerance}")
        object.__setattr__(self, "cycle_width", int(self.cycle_width))

    @property
    def window(self) -> int:
        """Number of vectors one extrapolation consumes (k + 2)."""
        return self.cycle_width + 2


def _as_real_rows(stack: np.ndarray) -> np.ndarray:
    if np.iscomplexobj(stack):
        return np.concatenate([stack.real, stack.imag], axis=1)
    return stack


def mpe_extrapolate(vectors: Sequence, ls_tolerance: float = MPE_LS_TOLERANCE):
    if len(vectors) < 3:
        raise ArgumentError(f"MPE needs at least 3 vectors, got {len(vectors)}")
    shape = np.shape(vectors[0])
    if any(np.shape(v) != shape for v in vectors):
        raise ArgumentError("MPE vectors differ in shape")

    stack = np.array([np.ravel(np.asarray(v)) for v in vectors])
    diffs = _as_real_rows(np.diff(stack, axis=0))
    if not np.any(diffs):
        return _reshape(stack[0], shape)

    c, *_ = np.linalg.lstsq(diffs[:-1].T, -diffs[-1], rcond=ls_tolerance)
    c = np.append(c, 1.0)
    total = c.sum()
    if abs(total) <= np.finfo(float).eps * np.abs(c).sum():
        logger.warning("MPE weights sum to ~0; keeping the last iterate")
        return _reshape(stack[-1], shape)

    gamma = c / total
    return _reshape(gamma @ stack[:-1], shape)


def _reshape(flat: np.ndarray, shape):
    if shape == ():
        return flat.item()
    return flat.reshape(shape)


def safeguarded_extrapolation(
    vectors: Sequence[np.ndarray],
    residual: Callable[[np.ndarray], float],
    cfg: MpeConfig,
    start_residual: Optional[float] = None,
) -> Tuple[np.ndarray, bool]:
    """
    Extrapolate and accept only if the residual does not grow past that of
    vectors[0]; otherwise return the last plain iterate. Returns
    (vector, accepted).
    """
    extrapolated = mpe_extrapolate(vectors, cfg.ls_tolerance)
    reference = residual(vectors[0]) if start_residual is None else start_residual
    candidate = residual(extrapolated)
    if np.isfinite(candidate) and candidate <= reference * (1.0 + MPE_SAFEGUARD_SLACK):
        return extrapolated, True

    logger.debug("Rejected extrapolation: residual %.3e > %.3e", candidate, reference)
    return vectors[-1], False


def accelerated_solve_cycle(
    step: Callable[[np.ndarray], np.ndarray],
    x: np.ndarray,
    cfg: MpeConfig,
    residual: Callable[[np.ndarray], float],
    start_residual: Optional[float] = None,
) -> Tuple[np.ndarray, bool]:
    """
    k+1 plain steps from x, then one safeguarded extrapolation over the
    k+2 vectors. Returns (next cycle start, accepted).
    """
    vectors = [x]
    for _ in range(cfg.cycle_width + 1):
        vectors.append(step(vectors[-1]))
    return safeguarded_extrapolation(vectors, residual, cfg, start_residual)
