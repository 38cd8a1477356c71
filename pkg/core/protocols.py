"""
core/protocols.py
Defines the contract between the fixed-point engine and the problems it solves.
Scalar shifted equations and the two-component Boussinesq system both satisfy
it, so the iteration and its acceleration never look at the physics.
"""

from typing import Dict, Protocol

import numpy as np

from core.spectral import PeriodicGrid


# =============================================================================
# PROBLEM PROTOCOLS
# =============================================================================

class LinearizedProblem(Protocol):
    """
    A problem  L u = N(u)  bound to a grid, in coefficient space.

    Vectors are flat complex arrays: N coefficients per component,
    components stacked one after another.
    """

    grid: PeriodicGrid
    n_components: int

    def apply_linear(self, vec: np.ndarray) -> np.ndarray:
        """Applies the linear operator L mode by mode."""
        ...

    def solve_linear(self, vec: np.ndarray) -> np.ndarray:
        """Applies L^{-1} mode by mode."""
        ...

    def nonlinear_parts(self, vec: np.ndarray) -> Dict[int, np.ndarray]:
        """
        Homogeneous pieces of N(u), keyed by degree.
        The full nonlinearity is the sum of the values.
        """
        ...
