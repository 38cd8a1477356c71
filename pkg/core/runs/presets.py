"""
Bundled run presets.
Each entry is a plain config mapping, loaded through RunConfig.from_mapping
exactly like a YAML file.
"""

from core.errors import ConfigurationError

_TOLERANCES = {"max_iter": 500, "tol_res": 1e-10, "tol_sfe": 1e-10}

# Scalar fKdV runs at A = c_s = 1
PRESETS = {
    "fig1": {
        "model": {"kind": "fkdv", "mu": 0.8, "p": 3},
        "wave": {"speed": 1.0, "A": 1.0, "branch": 0},
        "grid": {"half_length": 50.0, "n_modes": 8192},
        "iteration": dict(_TOLERANCES),
        "mpe": {"enabled": True, "cycle_width": 6},
    },
    # z^3/3 - z - 1 has the single root C ~ 2.104 with f'(C) > c_s, so the shifted
    # operator is indefinite and both cubic runs stop with sign-breakdown
    "fig2a": {
        "model": {"kind": "fkdv", "mu": 1.5, "p": 4},
        "wave": {"speed": 1.0, "A": 1.0, "branch": 0},
        "grid": {"half_length": 50.0, "n_modes": 512},
        "iteration": dict(_TOLERANCES),
        "mpe": {"enabled": True, "cycle_width": 6},
    },
    "fig2b": {
        "model": {"kind": "fkdv", "mu": 1.2, "p": 4},
        "wave": {"speed": 1.0, "A": 1.0, "branch": 0},
        "grid": {"half_length": 50.0, "n_modes": 512},
        "iteration": dict(_TOLERANCES),
        "mpe": {"enabled": True, "cycle_width": 6},
    },
    # Interfacial waves just below the maximal speed; s = -(1 + r H). Both stop
    # with sign-breakdown within two iterations from the sech^2 seed pair
    "fig3": {
        "model": {"kind": "boussinesq", "r": 0.8, "H": 0.95, "s": -1.76},
        "wave": {"speed_below_vmax": 1e-4, "A1": -1.0, "A2": -2.0, "branch": 0},
        "grid": {"half_length": 60.0, "n_modes": 512},
        "iteration": {"max_iter": 2000, "tol_res": 1e-10, "tol_sfe": 1e-10},
        "mpe": {"enabled": True, "cycle_width": 6},
    },
    "fig4": {
        "model": {"kind": "boussinesq", "r": 0.8, "H": 1.8, "s": -2.44},
        "wave": {"speed_below_vmax": 1e-4, "A1": 1.0, "A2": 1.0, "branch": 0},
        "grid": {"half_length": 60.0, "n_modes": 512},
        "iteration": {"max_iter": 2000, "tol_res": 1e-10, "tol_sfe": 1e-10},
        "mpe": {"enabled": False},
    },
    # Classical KdV: the C = 0 branch gives 3 sech^2(x/2); the Gaussian seed is not that shape
    "kdv": {
        "model": {"kind": "fkdv", "mu": 2.0, "p": 3},
        "wave": {"speed": 1.0, "A": 0.0, "branch": 0},
        "grid": {"half_length": 50.0, "n_modes": 1024},
        "iteration": dict(_TOLERANCES),
        "mpe": {"enabled": False},
        "seed": {"kind": "gaussian"},
    },
    # Cubic fKdV on the smallest constant of z^3 - 3z + 1, where the shifted operator stays positive
    "quartic": {
        "model": {"kind": "fkdv", "mu": 1.5, "p": 4},
        "wave": {"speed": 1.0, "A": -1.0 / 3.0, "branch": 0},
        "grid": {"half_length": 50.0, "n_modes": 2048},
        "iteration": {"max_iter": 1000, "tol_res": 1e-10, "tol_sfe": 1e-10},
        "mpe": {"enabled": True, "cycle_width": 6},
    },
}

PRESET_ALIASES = {"fig2": "fig2a"}


def preset_names() -> list[str]:
    return sorted([*PRESETS, *PRESET_ALIASES])


def preset_mapping(name: str) -> dict:
    """A fresh copy of the named preset, with name and output directory filled in."""
    key = PRESET_ALIASES.get(name, name)
    if key not in PRESETS:
        raise ConfigurationError(f"unknown preset {name!r}, expected one of {preset_names()}")
    mapping = {section: dict(body) for section, body in PRESETS[key].items()}
    mapping["name"] = key
    return mapping
