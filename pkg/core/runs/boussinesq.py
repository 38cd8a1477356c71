from __future__ import annotations

import logging
import time
from typing import Dict, List, Sequence

import numpy as np

from config import BOUSSINESQ_SEED_AMPLITUDE, BOUSSINESQ_SEED_WIDTH
from core.boussinesq import (
    BoussinesqParams,
    build_boussinesq_shifted,
    find_boussinesq_constants,
    reconstruct_boussinesq_constants,
    seed_pair,
    solve_boussinesq,
)
from core.postproc import VerifyResult, verify_boussinesq_profile
from core.run_config import RunConfig

from .base import RunReport, RunStrategy

logger = logging.getLogger(__name__)


def build_params(config: RunConfig) -> BoussinesqParams:
    return BoussinesqParams(config.r, config.H, config.s)


class BoussinesqRunStrategy(RunStrategy):
    """Two-layer interfacial system."""

    kind = "boussinesq"

    def constants(self, config: RunConfig) -> List[Dict[str, float]]:
        params = build_params(config)
        c_s = config.resolve_speed(params.v_max)
        pairs = find_boussinesq_constants(params, c_s, config.A1, config.A2)
        return [
            {"index": i, "C1": pair.C1, "C2": pair.C2,
             "residual": max(pair.residual1, pair.residual2)}
            for i, pair in enumerate(pairs)
        ]

    def solve(self, config: RunConfig) -> RunReport:
        started = time.perf_counter()
        params = build_params(config)
        c_s = config.resolve_speed(params.v_max)
        logger.info("Boussinesq run %s: v_max = %.9f, c_s = %.9f", config.name, params.v_max, c_s)

        pairs = find_boussinesq_constants(params, c_s, config.A1, config.A2)
        constants = self._pick(pairs, config.branch, "constant pairs")
        shifted = build_boussinesq_shifted(params, c_s, config.A1, config.A2, constants)

        grid = config.grid
        amplitude = BOUSSINESQ_SEED_AMPLITUDE if config.seed_amplitude is None else config.seed_amplitude
        width = BOUSSINESQ_SEED_WIDTH if config.seed_width is None else config.seed_width
        initial = seed_pair(shifted, grid, amplitude, width, config.seed)
        eta, w, trace = solve_boussinesq(shifted, grid, initial, config.settings, config.mpe)

        (m1, s1), (m2, s2) = reconstruct_boussinesq_constants(params, c_s, eta, w)
        notes = [f"v_max = {params.v_max:.9f}, c_s = {c_s:.9f}",
                 f"d = ({params.d1:.6g}, {params.d2:.6g}, {params.d3:.6g}, {params.d4:.6g}, {params.d5:.6g})"]
        notes += self._definiteness_notes(shifted.symmetric_margins(grid), grid)
        return self._finalize(
            config,
            profiles={"eta": eta, "W": w},
            portrait_of="eta",
            trace=trace,
            branch={"C1": constants.C1, "C2": constants.C2,
                    "residual": max(constants.residual1, constants.residual2)},
            reconstructed={"A1": [m1, s1], "A2": [m2, s2]},
            started=started,
            notes=notes,
        )

    def verify(self, config: RunConfig, names: Sequence[str], table: np.ndarray) -> VerifyResult:
        params = build_params(config)
        eta, w = self._profiles_from_table(config.grid, names, table, ["eta", "W"])
        return verify_boussinesq_profile(params, config.resolve_speed(params.v_max),
                                         config.A1, config.A2, eta, w)
