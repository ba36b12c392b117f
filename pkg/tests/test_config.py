"""Tests for configuration loading."""

from pathlib import Path

import pytest

from src.config import Config, Grid, load_config

REPO_ROOT = Path(__file__).parent.parent


@pytest.fixture(autouse=True)
def clean_env(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("CHEBYSHEV_OUTPUT_DIR", raising=False)


def test_defaults_without_file():
    """Test that no config.yaml means built-in defaults."""
    config = load_config()
    assert config.sweeps.continuous.start == 0.5
    assert config.sweeps.discrete.stop == 3.0
    assert config.monte_carlo.samples == 1_000_000
    assert config.output.significant_digits == 12
    assert config.solver_options() == {"residual_scale": 1e-12, "newton_steps": 3}


def test_yaml_values_are_loaded(tmp_path):
    """Test that values in config.yaml override defaults and are validated."""
    (tmp_path / "config.yaml").write_text(
        "solver:\n  newton_steps: 5\nsweeps:\n  workers: 4\nlogging:\n  level: debug\n"
    )
    config = load_config()
    assert config.solver.newton_steps == 5
    assert config.sweeps.workers == 4
    assert config.logging.level == "DEBUG", "Level names are case-insensitive"


def test_missing_explicit_file(tmp_path):
    """Test that an explicit path that doesn't exist points at the example file."""
    with pytest.raises(FileNotFoundError, match="config.example.yaml"):
        load_config(tmp_path / "missing.yaml")


def test_validation_failure(tmp_path):
    """Test that out-of-range values are reported as a ValueError."""
    path = tmp_path / "bad.yaml"
    path.write_text("monte_carlo:\n  samples: 100\n")
    with pytest.raises(ValueError, match="Configuration validation failed"):
        load_config(path)


def test_env_overrides_output_directory(tmp_path, monkeypatch):
    """Test the CHEBYSHEV_OUTPUT_DIR override."""
    monkeypatch.setenv("CHEBYSHEV_OUTPUT_DIR", str(tmp_path / "out"))
    assert load_config().output.directory == tmp_path / "out"


def test_grid_order():
    """Test that a grid ending before it starts is rejected."""
    with pytest.raises(ValueError, match="below start"):
        Grid(start=2.0, stop=1.0, step=0.1)


def test_example_config_is_valid():
    """Test that config.example.yaml loads and matches the defaults."""
    config = load_config(REPO_ROOT / "config.example.yaml")
    assert config == Config()
