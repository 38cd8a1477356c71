"""
Real roots of low-degree polynomials: companion-matrix eigenvalues,
Newton polishing, clustering and a residual gate.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from typing import List

import numpy as np
from numpy.polynomial import Polynomial
from scipy.optimize import newton

from config import (
    NEWTON_MAX_ITER,
    REAL_ROOT_IMAG_TOLERANCE,
    ROOT_CLUSTER_TOLERANCE,
    ROOT_RESIDUAL_TOLERANCE,
)
from core.errors import ArgumentError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RealRoot:
    value: float
    residual: float
    multiplicity: int = 1


def coefficient_scale(poly: Polynomial) -> float:
    return max(1.0, float(np.max(np.abs(poly.coef))))


def _polish(poly: Polynomial, guess: float) -> float:
    dpoly = poly.deriv()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        try:
            polished = float(newton(poly, guess, fprime=dpoly, tol=1e-15,
                                    maxiter=NEWTON_MAX_ITER, disp=False))
        except (RuntimeError, ArithmeticError):
            return guess
    if not np.isfinite(polished) or abs(poly(polished)) > abs(poly(guess)):
        return guess
    return polished


def polished_real_roots(poly: Polynomial) -> List[RealRoot]:
    """Real roots of poly, sorted ascending; rejected candidates are logged."""
    poly = poly.trim()
    if not np.any(poly.coef):
        raise ArgumentError("degenerate polynomial: all coefficients are zero")
    if poly.degree() == 0:
        return []

    candidates = [
        _polish(poly, float(root.real))
        for root in poly.roots()
        if abs(root.imag) < REAL_ROOT_IMAG_TOLERANCE * (1.0 + abs(root))
    ]
    candidates.sort()

    clusters: List[List[float]] = []
    for value in candidates:
        if clusters and abs(value - clusters[-1][-1]) <= ROOT_CLUSTER_TOLERANCE * (1.0 + abs(value)):
            clusters[-1].append(value)
        else:
            clusters.append([value])

    gate = ROOT_RESIDUAL_TOLERANCE * coefficient_scale(poly)
    roots = []
    for members in clusters:
        best = min(members, key=lambda v: abs(poly(v)))
        residual = float(abs(poly(best)))
        if residual > gate:
            logger.warning("Dropping root %.12g: residual %.3e above %.3e", best, residual, gate)
            continue
        roots.append(RealRoot(best, residual, len(members)))
    return roots
