"""
Run artifacts: CSV tables and the JSON run manifest.

- CSV: header row, comma separated, 17 significant digits.
- Manifest: atomic write (temp file in the target directory + os.replace),
  so a reader never sees a half-written manifest.
"""

import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Sequence, Tuple

import numpy as np

from config import CSV_FORMAT
from core.errors import ConfigurationError

logger = logging.getLogger(__name__)


def write_csv(path: Path, columns: Sequence[np.ndarray], names: Sequence[str]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    table = np.column_stack([np.asarray(c, dtype=float) for c in columns])
    np.savetxt(path, table, delimiter=",", header=",".join(names), comments="", fmt=CSV_FORMAT)
    logger.debug("Wrote %s (%d rows)", path, table.shape[0])
    return path


def write_profile_csv(path: Path, x: np.ndarray, profiles: Dict[str, np.ndarray]) -> Path:
    """x followed by one column per named profile."""
    return write_csv(path, [x, *profiles.values()], ["x", *profiles.keys()])


def write_portrait_csv(path: Path, portrait: np.ndarray) -> Path:
    return write_csv(path, [portrait[:, 0], portrait[:, 1]], ["value", "derivative"])


def write_trace_csv(path: Path, rows: np.ndarray) -> Path:
    rows = np.asarray(rows, dtype=float).reshape(-1, 4)
    return write_csv(path, [rows[:, 0].astype(int), rows[:, 1], rows[:, 2], rows[:, 3]],
                     ["iter", "res", "sfe", "s"])


def read_profile_csv(path: Path) -> Tuple[list, np.ndarray]:
    """(column names, table) of a CSV written by write_csv."""
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            names = f.readline().strip().split(",")
        table = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    except (OSError, ValueError) as e:
        raise ConfigurationError(f"cannot read profile CSV {path}: {e}") from e
    if table.shape[1] != len(names):
        raise ConfigurationError(f"{path}: header has {len(names)} columns, rows have {table.shape[1]}")
    return names, table


def write_manifest(path: Path, payload: Dict[str, Any]) -> Path:
    """JSON manifest written atomically."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    handle = tempfile.NamedTemporaryFile(
        "w", encoding="utf-8", dir=path.parent, prefix=f".{path.name}.", suffix=".tmp", delete=False
    )
    try:
        with handle:
            json.dump(payload, handle, indent=2, sort_keys=True, default=_jsonable)
        os.replace(handle.name, path)
    except (OSError, TypeError, ValueError):
        if os.path.exists(handle.name):
            os.unlink(handle.name)
        raise
    logger.info("Manifest saved to %s", path)
    return path


def _jsonable(value):
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"not JSON serializable: {type(value).__name__}")
