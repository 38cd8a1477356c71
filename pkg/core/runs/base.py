from __future__ import annotations

import logging
import time
from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Sequence

import numpy as np

from config import RESOLUTION_TOLERANCE
from core.artifacts import write_manifest, write_portrait_csv, write_profile_csv, write_trace_csv
from core.errors import ConfigurationError
from core.petviashvili import IterationTrace
from core.postproc import VerifyResult, phase_portrait, profile_metrics
from core.run_config import RunConfig
from core.spectral import PeriodicGrid, SpectralField, forward_transform, tail_ratio

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"


@dataclass
class RunReport:
    """Unified summary of one solve, written as the run manifest."""

    name: str
    model: str
    outcome: str
    iterations: int
    final_res: float
    final_sfe: float
    branch: Dict[str, float]
    reconstructed: Dict[str, List[float]]
    metrics: Dict[str, float]
    files: List[str]
    wall_time: float
    extrapolations: int = 0
    rejected_extrapolations: int = 0
    notes: List[str] = field(default_factory=list)

    @property
    def converged(self) -> bool:
        return self.outcome == "converged"

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


class RunStrategy(ABC):
    """Strategy interface for running one model family end to end."""

    kind: str = ""

    @abstractmethod
    def constants(self, config: RunConfig) -> List[Dict[str, float]]:
        """All real constant branches, one row per branch."""
        raise NotImplementedError

    @abstractmethod
    def solve(self, config: RunConfig) -> RunReport:
        """Constants, shift, iteration, post-processing and artifacts."""
        raise NotImplementedError

    @abstractmethod
    def verify(self, config: RunConfig, names: Sequence[str], table: np.ndarray) -> VerifyResult:
        """Re-check a stored profile table against the configured equation."""
        raise NotImplementedError

    @staticmethod
    def _pick(branches: Sequence, index: int, what: str):
        if not branches:
            raise ConfigurationError(f"no real {what} for this configuration")
        if index >= len(branches):
            raise ConfigurationError(f"branch {index} requested but only {len(branches)} {what} exist")
        return branches[index]

    @staticmethod
    def _definiteness_notes(margins: np.ndarray, grid: PeriodicGrid) -> List[str]:
        """One note when the linear operator has modes with a non-positive margin."""
        bad = margins <= 0.0
        if not bad.any():
            return []
        worst = int(np.argmin(margins))
        note = (f"linear operator not positive definite on {int(bad.sum())} of {grid.n_modes} modes "
                f"(margin {margins[worst]:.4g} at mode {int(grid.mode_indices[worst])}); s(u) can turn negative")
        logger.warning("Shifted problem: %s", note)
        return [note]

    @staticmethod
    def _profiles_from_table(grid: PeriodicGrid, names: Sequence[str], table: np.ndarray,
                             expected: Sequence[str]) -> List[SpectralField]:
        if list(names) != ["x", *expected]:
            raise ConfigurationError(f"expected columns {['x', *expected]}, found {list(names)}")
        if table.shape[0] != grid.n_modes:
            raise ConfigurationError(f"profile has {table.shape[0]} rows, grid has {grid.n_modes} nodes")
        if not np.allclose(table[:, 0], grid.nodes, rtol=0.0, atol=1e-9 * grid.half_length):
            raise ConfigurationError("profile nodes do not match the configured grid")
        return [forward_transform(table[:, i + 1], grid) for i in range(len(expected))]

    def _finalize(self, config: RunConfig, profiles: Dict[str, SpectralField], portrait_of: str,
                  trace: IterationTrace, branch: Dict[str, float],
                  reconstructed: Dict[str, List[float]], started: float,
                  notes: Sequence[str] = ()) -> RunReport:
        out = Path(config.output_dir)
        grid = config.grid
        notes = list(notes)
        tail = max(tail_ratio(profile) for profile in profiles.values())
        if tail > RESOLUTION_TOLERANCE:
            notes.append(f"under-resolved: tail coefficients at {tail:.3e} of the peak, "
                         "raise n_modes or shrink half_length")
            logger.warning("Run %s is under-resolved (tail ratio %.3e)", config.name, tail)
        paths = [
            write_profile_csv(out / "profile.csv", grid.nodes,
                              {key: profile.values() for key, profile in profiles.items()}),
            write_portrait_csv(out / "portrait.csv", phase_portrait(profiles[portrait_of])),
            write_trace_csv(out / "trace.csv", trace.as_rows()),
        ]
        report = RunReport(
            name=config.name,
            model=config.model,
            outcome=trace.outcome.value,
            iterations=trace.iterations,
            final_res=trace.final_res,
            final_sfe=trace.final_sfe,
            branch=branch,
            reconstructed=reconstructed,
            metrics={**profile_metrics(profiles[portrait_of]).to_dict(), "tail_ratio": tail},
            files=[str(p) for p in paths] + [str(out / MANIFEST_NAME)],
            wall_time=time.perf_counter() - started,
            extrapolations=trace.extrapolations,
            rejected_extrapolations=trace.rejected_extrapolations,
            notes=notes,
        )
        write_manifest(out / MANIFEST_NAME, report.to_dict())
        logger.info("Run %s: %s in %d iterations (%.2fs)",
                    config.name, report.outcome, report.iterations, report.wall_time)
        return report
