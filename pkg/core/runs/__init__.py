# Run strategies and presets
from .base import RunReport, RunStrategy
from .boussinesq import BoussinesqRunStrategy
from .presets import PRESETS, preset_mapping, preset_names
from .scalar import ScalarRunStrategy, build_scalar_model

__all__ = [
    "RunReport",
    "RunStrategy",
    "ScalarRunStrategy",
    "BoussinesqRunStrategy",
    "build_scalar_model",
    "PRESETS",
    "preset_mapping",
    "preset_names",
]
