"""Pytest configuration: project root on sys.path plus shared grid/model fixtures."""
from __future__ import annotations

import math
import sys
from pathlib import Path

import pytest

# Guarantee the repository root is on sys.path so imports like `import core` work
# even when pytest is invoked via the console script entrypoint.
ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from core.models import fkdv_model  # noqa: E402
from core.spectral import PeriodicGrid  # noqa: E402


@pytest.fixture
def small_grid() -> PeriodicGrid:
    """[-pi, pi) with 16 nodes: wavenumbers are the integers -8..7."""
    return PeriodicGrid(math.pi, 16)


@pytest.fixture
def soliton_grid() -> PeriodicGrid:
    """Wide enough that sech^2(x/2) is periodic to round-off."""
    return PeriodicGrid(40.0, 256)


@pytest.fixture
def kdv_model():
    """alpha = xi^2, f(u) = u^2/2."""
    return fkdv_model(2.0, 3)
