import os

import hypothesis
import numpy as np
import pytest
import yaml

from src.config.config_loader import ConfigLoader
from src.core.engine import SimulationConfig

hypothesis.settings.register_profile("fast", max_examples=20)
hypothesis.settings.register_profile("thorough", max_examples=1000, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def config_file(tmp_path):
    """config.yaml с логом во временном каталоге"""
    path = tmp_path / "config.yaml"
    path.write_text(yaml.safe_dump({
        "simulation": {"agents": 20, "propositions": 10, "seed": 3},
        "harness": {"workers": 1, "output_dir": str(tmp_path / "results")},
        "logging": {"path": str(tmp_path / "logs" / "netlearn.log"), "level": "DEBUG",
                    "rotate_size_mb": 1, "rotate_backups": 1},
    }), encoding="utf-8")
    return path


@pytest.fixture
def config_loader(config_file):
    return ConfigLoader(str(config_file))


@pytest.fixture
def small_config():
    return SimulationConfig.build(
        num_agents=20, k=4, rho=0.0, evidence_rate=0.2, epsilon=0.0,
        num_propositions=10, max_steps=3000, seed=42,
    )
