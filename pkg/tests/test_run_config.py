# tests/test_run_config.py
"""Tests for run configuration loading and the bundled presets."""
import importlib.util
from pathlib import Path

import pytest
import yaml

from core.errors import ConfigurationError
from core.mpe import MpeConfig
from core.run_config import RunConfig
from core.runs import PRESETS, preset_mapping, preset_names

FKDV_MAPPING = {
    "model": {"kind": "fkdv", "mu": 0.8, "p": 3},
    "wave": {"speed": 1.0, "A": 1.0},
    "grid": {"half_length": 50, "n_modes": 512},
}


def test_minimal_mapping_uses_defaults():
    config = RunConfig.from_mapping(FKDV_MAPPING, name="demo")
    assert config.name == "demo"
    assert config.model == "fkdv"
    assert config.n_modes == 512
    assert config.branch == 0
    assert config.mpe is None
    assert config.seed == "sech2"
    assert Path(config.output_dir) == Path("runs") / "demo"
    assert config.settings.max_iter == 500


def test_full_mapping(tmp_path: Path):
    mapping = dict(FKDV_MAPPING)
    mapping.update({
        "name": "full",
        "iteration": {"max_iter": 50, "tol_res": 1e-9, "tol_sfe": 1e-8},
        "mpe": {"enabled": True, "cycle_width": 4, "restart": False},
        "seed": {"kind": "cos", "amplitude": 0.3},
        "output": {"directory": str(tmp_path / "out")},
    })
    config = RunConfig.from_mapping(mapping)
    assert config.settings.max_iter == 50
    assert config.settings.tol_sfe == 1e-8
    assert config.mpe == MpeConfig(cycle_width=4, restart=False)
    assert config.seed == "cos"
    assert config.seed_amplitude == 0.3
    assert config.output_dir == str(tmp_path / "out")


@pytest.mark.parametrize(
    "patch",
    [
        {"grid": {"half_length": 50, "n_modes": 11}},
        {"grid": {"half_length": -1, "n_modes": 512}},
        {"grid": {"half_length": 50}},
        {"model": {"kind": "kawahara"}},
        {"model": {"kind": "fkdv", "mu": 0.8}},
        {"model": {"kind": "fkdv", "mu": "fast", "p": 3}},
        {"wave": {"speed": "vmax-1e-4"}},
        {"wave": {"speed": 1.0, "branch": -1}},
        {"wave": {"speed": True}},
        {"iteration": {"max_iter": 0}},
        {"iteration": {"tolerance": 1e-9}},
        {"mpe": {"enabled": True, "cycle_width": 0}},
        {"seed": {"kind": "tophat"}},
        {"wave": {"speed_below_vmax": 1e-4}},
        {"plots": {}},
    ],
)
def test_malformed_mappings_are_configuration_errors(patch: dict):
    mapping = {**FKDV_MAPPING, **patch}
    with pytest.raises(ConfigurationError):
        RunConfig.from_mapping(mapping)


def test_boussinesq_speed_below_vmax():
    config = RunConfig.from_mapping(preset_mapping("fig3"))
    assert config.model == "boussinesq"
    assert (config.r, config.H, config.s) == (0.8, 0.95, -1.76)
    assert config.resolve_speed(1.000454) == pytest.approx(1.000354)
    with pytest.raises(ConfigurationError):
        config.resolve_speed()


@pytest.mark.parametrize(
    "wave",
    [
        {"speed_below_vmax": -1e-4},
        {"speed_below_vmax": "vmax-1e-4"},
        {"speed": 1.0, "speed_below_vmax": 1e-4},
    ],
)
def test_malformed_boussinesq_speeds(wave: dict):
    mapping = preset_mapping("fig3")
    mapping["wave"] = {**wave, "A1": -1.0, "A2": -2.0}
    with pytest.raises(ConfigurationError):
        RunConfig.from_mapping(mapping)


def test_fixed_boussinesq_speed_ignores_vmax():
    mapping = preset_mapping("fig4")
    mapping["wave"] = {"speed": 1.05, "A1": 1.0, "A2": 1.0}
    config = RunConfig.from_mapping(mapping)
    assert config.speed_below_vmax is None
    assert config.resolve_speed(1.2) == 1.05


def test_overrides():
    config = RunConfig.from_mapping(FKDV_MAPPING)
    changed = config.with_overrides(branch=1, mpe=True, output_dir="elsewhere")
    assert changed.branch == 1
    assert changed.mpe == MpeConfig()
    assert changed.output_dir == "elsewhere"
    assert changed.with_overrides(mpe=False).mpe is None
    assert config.with_overrides() is config


def test_yaml_file_round_trip(tmp_path: Path):
    path = tmp_path / "quartic.yaml"
    path.write_text(yaml.safe_dump(preset_mapping("fig2b")), encoding="utf-8")
    config = RunConfig.from_file(path)
    assert config.name == "fig2b"
    assert (config.mu, config.p) == (1.2, 4)


def test_broken_yaml_is_a_configuration_error(tmp_path: Path):
    path = tmp_path / "broken.yaml"
    path.write_text("model: {kind: fkdv\n", encoding="utf-8")
    with pytest.raises(ConfigurationError):
        RunConfig.from_file(path)
    with pytest.raises(ConfigurationError):
        RunConfig.from_file(tmp_path / "missing.yaml")


def test_custom_model_needs_symbol_terms():
    mapping = {
        "model": {"kind": "custom", "gammas": [1.0], "symbol": [[1.0, 2.0], [0.5, 1.0]], "exponents": [0.3, 1.0]},
        "wave": {"speed": 1.0},
        "grid": {"half_length": 30, "n_modes": 128},
    }
    config = RunConfig.from_mapping(mapping)
    assert config.symbol_terms == ((1.0, 2.0), (0.5, 1.0))
    assert config.exponents == (0.3, 1.0)

    mapping["model"] = {"kind": "custom", "gammas": [1.0]}
    with pytest.raises(ConfigurationError):
        RunConfig.from_mapping(mapping)


# =============================================================================
# PRESETS
# =============================================================================

def test_every_preset_loads():
    for name in preset_names():
        config = RunConfig.from_mapping(preset_mapping(name))
        assert config.n_modes >= 512
        assert config.half_length >= 50.0


def test_preset_alias_and_copy():
    assert preset_mapping("fig2")["name"] == "fig2a"
    mapping = preset_mapping("fig1")
    mapping["grid"]["n_modes"] = 8
    assert PRESETS["fig1"]["grid"]["n_modes"] == 8192


def test_unknown_preset():
    with pytest.raises(ConfigurationError):
        preset_mapping("fig9")


def test_mpe_is_a_per_preset_choice():
    assert RunConfig.from_mapping(preset_mapping("fig3")).mpe is not None
    assert RunConfig.from_mapping(preset_mapping("fig4")).mpe is None


def test_export_presets_script_writes_loadable_files(tmp_path: Path):
    script = Path(__file__).resolve().parent.parent / "scripts" / "export_presets.py"
    spec = importlib.util.spec_from_file_location("export_presets", script)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)

    written = module.export_presets(tmp_path / "configs")
    assert sorted(p.stem for p in written) == sorted(PRESETS)
    config = RunConfig.from_file(tmp_path / "configs" / "fig3.yaml")
    assert config.model == "boussinesq"
    assert config.name == "fig3"
    assert config.speed_below_vmax == pytest.approx(1e-4)


def test_seed_kinds_of_presets():
    assert RunConfig.from_mapping(preset_mapping("kdv")).seed == "gaussian"
    assert RunConfig.from_mapping(preset_mapping("fig1")).seed == "sech2"
