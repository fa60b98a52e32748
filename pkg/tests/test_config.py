from pathlib import Path

import pytest
import yaml

from src.config.config_loader import OUTPUT_DIR_ENV, ConfigLoader
from src.config.sweep_loader import SweepSpecLoader

SWEEPS_DIR = Path(__file__).resolve().parent.parent / "sweeps"


def write_spec(tmp_path, data) -> str:
    path = tmp_path / "spec.yaml"
    path.write_text(yaml.safe_dump(data), encoding="utf-8")
    return str(path)


def test_missing_config_uses_defaults(tmp_path, monkeypatch):
    monkeypatch.delenv(OUTPUT_DIR_ENV, raising=False)
    loader = ConfigLoader(str(tmp_path / "absent.yaml"))
    sim = loader.get_simulation_config()
    assert (sim["agents"], sim["propositions"], sim["max_steps"], sim["convergence_window"]) == (100, 100, 10000, 100)
    assert loader.get_harness_config()["runs_per_cell"] == 100
    assert loader.get_harness_config()["output_dir"] == "./results"
    assert loader.get_logging_config()["level"] == "INFO"
    assert loader.get_log_fields()["error"] is True


def test_config_sections_override_defaults(config_loader):
    sim = config_loader.get_simulation_config()
    assert sim["agents"] == 20
    assert sim["max_steps"] == 10000


def test_output_dir_env_override(config_loader, monkeypatch, tmp_path):
    monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path / "elsewhere"))
    assert config_loader.get_harness_config()["output_dir"] == str(tmp_path / "elsewhere")


def test_malformed_config(tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text("simulation: [unclosed", encoding="utf-8")
    with pytest.raises(ValueError, match="Malformed"):
        ConfigLoader(str(path))


def test_sweep_spec_loading(tmp_path):
    spec = SweepSpecLoader(write_spec(tmp_path, {
        "base": {"agents": 30, "propositions": 12, "max_steps": 500},
        "k_values": [2, 4, 29],
        "rho_values": [0, 0.5],
        "r_values": 0.1,
        "epsilon_values": [0.2],
        "runs_per_cell": 4,
        "base_seed": 9,
    })).load()
    assert spec.base.num_agents == 30
    assert spec.base.num_propositions == 12
    assert spec.base.max_steps == 500
    assert spec.base.convergence_window == 100
    assert spec.k_values == (2, 4, 29)
    assert spec.rho_values == (0.0, 0.5)
    assert spec.r_values == (0.1,)
    assert (spec.runs_per_cell, spec.base_seed) == (4, 9)


def test_sweep_spec_overrides(tmp_path):
    path = write_spec(tmp_path, {"k_values": [4], "rho_values": [0], "r_values": [0.1], "epsilon_values": [0]})
    spec = SweepSpecLoader(path, {"agents": 12}).load(runs_per_cell=2, base_seed=5)
    assert spec.base.num_agents == 12
    assert (spec.runs_per_cell, spec.base_seed) == (2, 5)


def test_sweep_spec_rejects_unknown_keys(tmp_path):
    path = write_spec(tmp_path, {"k_values": [4], "rho_values": [0], "r_values": [0.1],
                                 "epsilon_values": [0], "noise": 0.1})
    with pytest.raises(ValueError, match="noise"):
        SweepSpecLoader(path)


def test_sweep_spec_requires_lists(tmp_path):
    path = write_spec(tmp_path, {"k_values": [4], "rho_values": [0], "r_values": [0.1]})
    with pytest.raises(ValueError, match="epsilon_values"):
        SweepSpecLoader(path).load()


def test_missing_sweep_spec_names_path(tmp_path):
    with pytest.raises(OSError, match="missing.file"):
        SweepSpecLoader(str(tmp_path / "missing.file"))


@pytest.mark.parametrize("name", sorted(p.name for p in SWEEPS_DIR.glob("*.yaml")))
def test_shipped_presets_are_valid(name):
    spec = SweepSpecLoader(str(SWEEPS_DIR / name)).load()
    for cell in spec.cells():
        spec.cell_config(cell, 0)


def test_full_grid_preset():
    spec = SweepSpecLoader(str(SWEEPS_DIR / "full_grid.yaml")).load()
    assert spec.k_values == tuple(range(2, 99, 2)) + (99,)
    assert spec.rho_values == (0.0, 0.01, 0.05, 0.1, 0.5, 1.0)
    assert spec.r_values == (0.001, 0.005, 0.01, 0.05, 0.1, 0.5, 1.0)
    assert spec.epsilon_values == (0.0, 0.1, 0.2, 0.3, 0.4, 0.5)
    assert spec.runs_per_cell == 100


def test_runs_fall_back_to_harness_default(tmp_path):
    path = write_spec(tmp_path, {"k_values": [4], "rho_values": [0], "r_values": [0.1], "epsilon_values": [0]})
    assert SweepSpecLoader(path).load(default_runs=7).runs_per_cell == 7
    assert SweepSpecLoader(path).load(runs_per_cell=3, default_runs=7).runs_per_cell == 3
