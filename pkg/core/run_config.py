"""
Run configuration: YAML files (or preset mappings) turned into a validated,
immutable RunConfig.

Layout of a config file:

    name: fig1
    model:     {kind: fkdv, mu: 0.8, p: 3}
    wave:      {speed: 1.0, A: 1.0, branch: 0}
    grid:      {half_length: 50, n_modes: 512}
    iteration: {max_iter: 500, tol_res: 1.0e-10, tol_sfe: 1.0e-10}
    mpe:       {enabled: true, cycle_width: 6}
    seed:      {kind: sech2}
    output:    {directory: runs/fig1}

For `kind: boussinesq` the model section carries r, H, s and the wave
section A1, A2. Instead of a fixed speed, a boussinesq wave may give
`speed_below_vmax: 1.0e-4`, resolved against the model's maximal speed.
"""

from __future__ import annotations

import dataclasses
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Optional, Tuple, Union

import yaml

from config import DEFAULT_OUTPUT_DIR, SEED_KINDS
from core.errors import ConfigurationError, WaveSolverError
from core.mpe import MpeConfig
from core.petviashvili import IterationSettings
from core.spectral import PeriodicGrid

logger = logging.getLogger(__name__)

MODEL_KINDS = ("fkdv", "custom", "boussinesq")

_SECTIONS = {
    "model": {"kind", "mu", "p", "gammas", "symbol", "exponents", "r", "H", "s"},
    "wave": {"speed", "speed_below_vmax", "A", "A1", "A2", "branch"},
    "grid": {"half_length", "n_modes"},
    "iteration": {"max_iter", "tol_res", "tol_sfe", "divergence_cap"},
    "mpe": {"enabled", "cycle_width", "restart", "ls_tolerance"},
    "seed": {"kind", "amplitude", "width"},
    "output": {"directory"},
}

def _number(value: Any, what: str) -> float:
    if isinstance(value, bool):
        raise ConfigurationError(f"{what} must be a number, got {value!r}")
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise ConfigurationError(f"{what} must be a number, got {value!r}") from None
    if not math.isfinite(number):
        raise ConfigurationError(f"{what} must be finite, got {value!r}")
    return number


def _integer(value: Any, what: str) -> int:
    number = _number(value, what)
    if number != int(number):
        raise ConfigurationError(f"{what} must be an integer, got {value!r}")
    return int(number)


@dataclass(frozen=True)
class RunConfig:
    name: str
    model: str
    half_length: float
    n_modes: int
    speed: float = 1.0
    speed_below_vmax: Optional[float] = None
    mu: Optional[float] = None
    p: Optional[int] = None
    gammas: Optional[Tuple[float, ...]] = None
    symbol_terms: Optional[Tuple[Tuple[float, float], ...]] = None
    exponents: Optional[Tuple[float, float]] = None
    r: Optional[float] = None
    H: Optional[float] = None
    s: Optional[float] = None
    A: float = 0.0
    A1: float = 0.0
    A2: float = 0.0
    branch: int = 0
    settings: IterationSettings = field(default_factory=IterationSettings)
    mpe: Optional[MpeConfig] = None
    seed: str = "sech2"
    seed_amplitude: Optional[float] = None
    seed_width: Optional[float] = None
    output_dir: str = DEFAULT_OUTPUT_DIR

    def __post_init__(self):
        if self.model not in MODEL_KINDS:
            raise ConfigurationError(f"unknown model kind {self.model!r}, expected one of {MODEL_KINDS}")
        if self.seed not in SEED_KINDS:
            raise ConfigurationError(f"unknown seed kind {self.seed!r}, expected one of {SEED_KINDS}")
        if self.branch < 0:
            raise ConfigurationError(f"branch index must be >= 0, got {self.branch}")
        PeriodicGrid(self.half_length, self.n_modes)

        if self.speed_below_vmax is not None:
            if self.model != "boussinesq":
                raise ConfigurationError("wave.speed_below_vmax is only valid for the boussinesq model")
            if self.speed_below_vmax < 0:
                raise ConfigurationError(f"wave.speed_below_vmax must be >= 0, got {self.speed_below_vmax}")
        if self.model == "fkdv" and (self.mu is None or self.p is None):
            raise ConfigurationError("fkdv model needs mu and p")
        if self.model == "custom" and (not self.gammas or not self.symbol_terms):
            raise ConfigurationError("custom model needs gammas and symbol terms")
        if self.model == "boussinesq" and None in (self.r, self.H, self.s):
            raise ConfigurationError("boussinesq model needs r, H and s")

    @property
    def grid(self) -> PeriodicGrid:
        return PeriodicGrid(self.half_length, self.n_modes)

    def resolve_speed(self, v_max: Optional[float] = None) -> float:
        if self.speed_below_vmax is None:
            return float(self.speed)
        if v_max is None:
            raise ConfigurationError("speed_below_vmax needs the model's v_max")
        return v_max - self.speed_below_vmax

    def with_overrides(self, branch: Optional[int] = None, mpe: Optional[bool] = None,
                       output_dir: Optional[str] = None) -> "RunConfig":
        changes = {}
        if branch is not None:
            changes["branch"] = int(branch)
        if mpe is not None:
            changes["mpe"] = (self.mpe or MpeConfig()) if mpe else None
        if output_dir is not None:
            changes["output_dir"] = str(output_dir)
        return dataclasses.replace(self, **changes) if changes else self

    # -------------------------------------------------------------------------
    # Loading
    # -------------------------------------------------------------------------

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Any], name: Optional[str] = None) -> "RunConfig":
        if not isinstance(mapping, Mapping):
            raise ConfigurationError("run configuration must be a mapping")
        unknown = set(mapping) - set(_SECTIONS) - {"name"}
        if unknown:
            raise ConfigurationError(f"unknown configuration sections: {sorted(unknown)}")

        sections = {}
        for section, allowed in _SECTIONS.items():
            body = mapping.get(section) or {}
            if not isinstance(body, Mapping):
                raise ConfigurationError(f"section '{section}' must be a mapping")
            extra = set(body) - allowed
            if extra:
                raise ConfigurationError(f"unknown keys in '{section}': {sorted(extra)}")
            sections[section] = body

        run_name = str(mapping.get("name") or name or "run")
        model, wave, grid = sections["model"], sections["wave"], sections["grid"]
        if "kind" not in model:
            raise ConfigurationError("model.kind is required")
        if "half_length" not in grid or "n_modes" not in grid:
            raise ConfigurationError("grid.half_length and grid.n_modes are required")

        kwargs: dict = {
            "name": run_name,
            "model": str(model["kind"]),
            "half_length": _number(grid["half_length"], "grid.half_length"),
            "n_modes": _integer(grid["n_modes"], "grid.n_modes"),
        }
        kwargs.update(cls._model_fields(model))
        kwargs.update(cls._wave_fields(wave))
        kwargs["settings"] = cls._settings(sections["iteration"])
        kwargs["mpe"] = cls._mpe(sections["mpe"])

        seed = sections["seed"]
        kwargs["seed"] = str(seed.get("kind", "sech2"))
        if "amplitude" in seed:
            kwargs["seed_amplitude"] = _number(seed["amplitude"], "seed.amplitude")
        if "width" in seed:
            kwargs["seed_width"] = _number(seed["width"], "seed.width")

        directory = sections["output"].get("directory")
        kwargs["output_dir"] = str(directory) if directory else str(Path(DEFAULT_OUTPUT_DIR) / run_name)
        return cls(**kwargs)

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "RunConfig":
        path = Path(path)
        try:
            with open(path, "r", encoding="utf-8") as f:
                mapping = yaml.safe_load(f)
        except OSError as e:
            raise ConfigurationError(f"cannot read {path}: {e}") from e
        except yaml.YAMLError as e:
            raise ConfigurationError(f"malformed YAML in {path}: {e}") from e
        logger.debug("Loaded run configuration %s", path)
        return cls.from_mapping(mapping, name=path.stem)

    @staticmethod
    def _model_fields(model: Mapping[str, Any]) -> dict:
        out: dict = {}
        if "mu" in model:
            out["mu"] = _number(model["mu"], "model.mu")
        if "p" in model:
            out["p"] = _integer(model["p"], "model.p")
        if "gammas" in model:
            out["gammas"] = tuple(_number(g, "model.gammas") for g in model["gammas"])
        if "symbol" in model:
            try:
                out["symbol_terms"] = tuple(
                    (_number(a, "symbol coefficient"), _number(e, "symbol exponent"))
                    for a, e in model["symbol"]
                )
            except (TypeError, ValueError):
                raise ConfigurationError("model.symbol must be a list of [coefficient, exponent] pairs") from None
        if "exponents" in model:
            pair = tuple(_number(e, "model.exponents") for e in model["exponents"])
            if len(pair) != 2:
                raise ConfigurationError("model.exponents must be [s_tilde, s]")
            out["exponents"] = pair
        for key in ("r", "H", "s"):
            if key in model:
                out[key] = _number(model[key], f"model.{key}")
        return out

    @staticmethod
    def _wave_fields(wave: Mapping[str, Any]) -> dict:
        out: dict = {}
        if "speed" in wave and "speed_below_vmax" in wave:
            raise ConfigurationError("give either wave.speed or wave.speed_below_vmax, not both")
        if "speed" in wave:
            out["speed"] = _number(wave["speed"], "wave.speed")
        if "speed_below_vmax" in wave:
            out["speed_below_vmax"] = _number(wave["speed_below_vmax"], "wave.speed_below_vmax")
        for key in ("A", "A1", "A2"):
            if key in wave:
                out[key] = _number(wave[key], f"wave.{key}")
        if "branch" in wave:
            out["branch"] = _integer(wave["branch"], "wave.branch")
        return out

    @staticmethod
    def _settings(body: Mapping[str, Any]) -> IterationSettings:
        values = {key: _number(value, f"iteration.{key}") for key, value in body.items()}
        if "max_iter" in values:
            values["max_iter"] = _integer(values["max_iter"], "iteration.max_iter")
        try:
            return IterationSettings(**values)
        except WaveSolverError as e:
            raise ConfigurationError(str(e)) from e

    @staticmethod
    def _mpe(body: Mapping[str, Any]) -> Optional[MpeConfig]:
        if not body.get("enabled", False):
            return None
        values = {}
        if "cycle_width" in body:
            values["cycle_width"] = _integer(body["cycle_width"], "mpe.cycle_width")
        if "restart" in body:
            values["restart"] = bool(body["restart"])
        if "ls_tolerance" in body:
            values["ls_tolerance"] = _number(body["ls_tolerance"], "mpe.ls_tolerance")
        try:
            return MpeConfig(**values)
        except WaveSolverError as e:
            raise ConfigurationError(str(e)) from e
