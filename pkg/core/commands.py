"""
CLI command implementations. Each returns a process exit code:
0 success, 2 configuration error, 3 solver did not converge.
"""

from __future__ import annotations

import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, TextIO, Tuple

from config import EXIT_CONFIG_ERROR, EXIT_NOT_CONVERGED, EXIT_OK, SWEEP_WORKERS_ENV
from core.artifacts import read_profile_csv
from core.errors import ConfigurationError, WaveSolverError
from core.run_config import RunConfig
from core.run_factory import RunFactory
from core.runs.base import RunReport

logger = logging.getLogger(__name__)


def _out(stream: Optional[TextIO]) -> TextIO:
    return stream if stream is not None else sys.stdout


def run_solve(config: RunConfig, factory: Optional[RunFactory] = None) -> RunReport:
    factory = factory or RunFactory()
    return factory.strategy_for(config.model).solve(config)


def cmd_constants(config: RunConfig, factory: Optional[RunFactory] = None,
                  stream: Optional[TextIO] = None) -> int:
    factory = factory or RunFactory()
    rows = factory.strategy_for(config.model).constants(config)
    out = _out(stream)
    if not rows:
        print(f"{config.name}: no real constant branches", file=out)
        return EXIT_OK
    for row in rows:
        print("  ".join(f"{key}={value:.15g}" if isinstance(value, float) else f"{key}={value}"
                        for key, value in row.items()), file=out)
    return EXIT_OK


def cmd_solve(config: RunConfig, factory: Optional[RunFactory] = None,
              stream: Optional[TextIO] = None) -> int:
    report = run_solve(config, factory)
    out = _out(stream)
    print(f"{report.name}: {report.outcome} after {report.iterations} iterations "
          f"(RES {report.final_res:.3e}, SFE {report.final_sfe:.3e})", file=out)
    for key, (mean, std) in report.reconstructed.items():
        print(f"  {key} = {mean:.12g} +/- {std:.3e}", file=out)
    for path in report.files:
        print(f"  wrote {path}", file=out)
    return EXIT_OK if report.converged else EXIT_NOT_CONVERGED


def cmd_verify(profile_path: Path, config: RunConfig, factory: Optional[RunFactory] = None,
               stream: Optional[TextIO] = None) -> int:
    factory = factory or RunFactory()
    names, table = read_profile_csv(profile_path)
    result = factory.strategy_for(config.model).verify(config, names, table)
    print(f"{'PASS' if result.passed else 'FAIL'}: {result.message}", file=_out(stream))
    return EXIT_OK if result.passed else EXIT_NOT_CONVERGED


# =============================================================================
# SWEEP
# =============================================================================

def sweep_workers(default: Optional[int] = None) -> int:
    raw = os.environ.get(SWEEP_WORKERS_ENV)
    if raw is None:
        return default or os.cpu_count() or 1
    try:
        workers = int(raw)
    except ValueError:
        raise ConfigurationError(f"{SWEEP_WORKERS_ENV} must be an integer, got {raw!r}") from None
    if workers < 1:
        raise ConfigurationError(f"{SWEEP_WORKERS_ENV} must be >= 1, got {workers}")
    return workers


def _sweep_one(path: str, out_dir: Optional[str]) -> Tuple[str, int]:
    """Worker body; must stay importable at module level for the process pool."""
    try:
        config = RunConfig.from_file(path)
        if out_dir is not None:
            config = config.with_overrides(output_dir=str(Path(out_dir) / config.name))
        report = run_solve(config)
    except WaveSolverError as e:
        if isinstance(e, ValueError):
            logger.error("Sweep entry %s rejected: %s", path, e)
            return path, EXIT_CONFIG_ERROR
        logger.error("Sweep entry %s failed: %s", path, e)
        return path, EXIT_NOT_CONVERGED
    return path, EXIT_OK if report.converged else EXIT_NOT_CONVERGED


def cmd_sweep(config_dir: Path, out_dir: Optional[Path] = None, workers: Optional[int] = None,
              stream: Optional[TextIO] = None) -> int:
    config_dir = Path(config_dir)
    if not config_dir.is_dir():
        raise ConfigurationError(f"{config_dir} is not a directory")
    paths = sorted(str(p) for p in config_dir.glob("*.yaml"))
    if not paths:
        raise ConfigurationError(f"no *.yaml configurations in {config_dir}")

    workers = workers or sweep_workers()
    logger.info("Sweeping %d configurations with %d workers", len(paths), workers)
    target = str(out_dir) if out_dir is not None else None
    with ProcessPoolExecutor(max_workers=min(workers, len(paths))) as pool:
        results = list(pool.map(_sweep_one, paths, [target] * len(paths)))

    out = _out(stream)
    for path, code in results:
        print(f"{Path(path).name}: exit {code}", file=out)
    return max(code for _, code in results)
