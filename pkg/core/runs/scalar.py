from __future__ import annotations

import logging
import time
from typing import Dict, List, Sequence

import numpy as np

from core.constant_shift import build_shifted, find_constants, shift_equivalence_residual
from core.models import (
    PolynomialNonlinearity,
    ScalarModel,
    check_hypotheses,
    fkdv_existence,
    fkdv_model,
    fkdv_stability,
    sum_of_powers_symbol,
)
from core.petviashvili import seed_profile, solve
from core.postproc import VerifyResult, reconstruct_constant, verify_scalar_profile
from core.run_config import RunConfig

from .base import RunReport, RunStrategy

logger = logging.getLogger(__name__)


def build_scalar_model(config: RunConfig) -> ScalarModel:
    if config.model == "fkdv":
        return fkdv_model(config.mu, config.p)

    terms = config.symbol_terms
    power_law = terms[0][1] if len(terms) == 1 and terms[0][0] == 1.0 else None
    return ScalarModel(
        nonlinearity=PolynomialNonlinearity(config.gammas, permissive=True),
        dispersion=sum_of_powers_symbol(terms),
        dispersion_exponents=config.exponents,
        power_law=power_law,
        name=config.name,
    )


class ScalarRunStrategy(RunStrategy):
    """fKdV and custom-symbol scalar equations."""

    kind = "scalar"

    def constants(self, config: RunConfig) -> List[Dict[str, float]]:
        model = build_scalar_model(config)
        branches = find_constants(model, config.resolve_speed(), config.A)
        return [
            {"index": i, "C": b.C, "residual": b.residual, "multiplicity": b.multiplicity_hint}
            for i, b in enumerate(branches)
        ]

    def _notes(self, config: RunConfig, model: ScalarModel) -> List[str]:
        notes = check_hypotheses(model).lines()
        if config.model == "fkdv":
            notes.append(f"existence: p < p_max(mu) is {fkdv_existence(config.mu, config.p)}")
            notes.append(f"stability: {fkdv_stability(config.mu, config.p).value}")
        return notes

    def solve(self, config: RunConfig) -> RunReport:
        started = time.perf_counter()
        model = build_scalar_model(config)
        c_s = config.resolve_speed()
        branch = self._pick(find_constants(model, c_s, config.A), config.branch, "constant branches")
        logger.info("Using C = %.15g (branch %d) for %s", branch.C, config.branch, model)

        shifted = build_shifted(model, c_s, config.A, branch)
        grid = config.grid
        notes = self._notes(config, model)
        notes += self._definiteness_notes(shifted.linear_symbol(grid), grid)
        u0 = seed_profile(grid, c_s, config.seed, config.seed_amplitude, config.seed_width)
        psi, trace = solve(shifted, grid, u0, config.settings, config.mpe)

        phi = psi.shifted(shifted.constant)
        mean, std = reconstruct_constant(model, c_s, phi)
        r1, r2 = shift_equivalence_residual(shifted, psi)
        notes.append(f"full-equation residual {r1:.3e}, shifted residual {r2:.3e}")

        return self._finalize(
            config,
            profiles={"phi": phi},
            portrait_of="phi",
            trace=trace,
            branch={"C": branch.C, "residual": branch.residual},
            reconstructed={"A": [mean, std]},
            started=started,
            notes=notes,
        )

    def verify(self, config: RunConfig, names: Sequence[str], table: np.ndarray) -> VerifyResult:
        model = build_scalar_model(config)
        (phi,) = self._profiles_from_table(config.grid, names, table, ["phi"])
        return verify_scalar_profile(model, config.resolve_speed(), config.A, phi)
