"""Configuration loading and validation for the bounds toolkit."""

import logging
import os
from pathlib import Path
from typing import Optional

import yaml
from pydantic import BaseModel, Field, field_validator, model_validator

logger = logging.getLogger(__name__)


DEFAULT_CONFIG_PATH = Path("config.yaml")
OUTPUT_DIR_ENV = "CHEBYSHEV_OUTPUT_DIR"


class Solver(BaseModel):
    """Root-solver settings for the cubic."""

    residual_scale: float = Field(default=1e-12, gt=0, le=1e-6)
    newton_steps: int = Field(default=3, ge=0, le=20)
    bisection_iterations: int = Field(default=200, ge=10, le=2000)


class Tolerances(BaseModel):
    validity_slack: float = Field(default=1e-12, ge=0, le=1e-3)
    mass_deficit: float = Field(default=1e-9, gt=0, le=1e-3)
    tail_truncation: float = Field(default=1e-14, gt=0, le=1e-6)
    quad_epsabs: float = Field(default=1e-13, gt=0, le=1e-6)
    quad_limit: int = Field(default=400, ge=50, le=10000)


class Grid(BaseModel):
    """Evenly spaced epsilon grid start:stop:step."""

    start: float = Field(gt=0)
    stop: float = Field(gt=0)
    step: float = Field(gt=0)

    @model_validator(mode="after")
    def validate_order(self) -> "Grid":
        if self.stop < self.start:
            raise ValueError(f"grid stop ({self.stop}) is below start ({self.start})")
        return self


class Sweeps(BaseModel):
    continuous: Grid = Field(default_factory=lambda: Grid(start=0.5, stop=4.0, step=0.1))
    discrete: Grid = Field(default_factory=lambda: Grid(start=0.5, stop=3.0, step=0.1))
    workers: int = Field(default=1, ge=1, le=64)


class MonteCarlo(BaseModel):
    samples: int = Field(default=1_000_000, ge=10_000)
    seed: int = Field(default=0, ge=0)


class Verify(BaseModel):
    property_cases: int = Field(default=500, ge=1, le=100_000)
    set_identity_cases: int = Field(default=50, ge=1, le=10_000)


class Output(BaseModel):
    directory: Path = Path(".")
    significant_digits: int = Field(default=12, ge=6, le=17)


class Logging(BaseModel):
    level: str = Field(default="WARNING", pattern="^(DEBUG|INFO|WARNING|ERROR)$")
    file: Optional[Path] = None

    @field_validator("level", mode="before")
    @classmethod
    def normalize_level(cls, v: str) -> str:
        return str(v).upper()


class Config(BaseModel):
    """Main configuration model."""

    solver: Solver = Field(default_factory=Solver)
    tolerances: Tolerances = Field(default_factory=Tolerances)
    sweeps: Sweeps = Field(default_factory=Sweeps)
    monte_carlo: MonteCarlo = Field(default_factory=MonteCarlo)
    verify: Verify = Field(default_factory=Verify)
    output: Output = Field(default_factory=Output)
    logging: Logging = Field(default_factory=Logging)

    def solver_options(self) -> dict:
        """Keyword arguments for solve_alpha and the bound functions."""
        return {
            "residual_scale": self.solver.residual_scale,
            "newton_steps": self.solver.newton_steps,
        }


def load_config(config_path: Optional[Path] = None) -> Config:
    """
    Load and validate configuration from a YAML file.

    No file is required: without an explicit path, config.yaml in the working
    directory is used when present and built-in defaults otherwise. The
    CHEBYSHEV_OUTPUT_DIR environment variable overrides output.directory.

    Args:
        config_path: Path to a YAML config file, or None

    Returns:
        Validated Config object

    Raises:
        FileNotFoundError: If an explicit config_path doesn't exist
        ValueError: If config validation fails
    """
    if config_path is not None and not config_path.exists():
        raise FileNotFoundError(
            f"Config file not found: {config_path}\n"
            f"Create one based on config.example.yaml"
        )

    path = config_path if config_path is not None else DEFAULT_CONFIG_PATH
    config_data = {}
    if path.exists():
        with open(path) as f:
            config_data = yaml.safe_load(f) or {}
        logger.info(f"Loaded configuration from {path}")

    try:
        config = Config(**config_data)
    except Exception as e:
        raise ValueError(f"Configuration validation failed: {e}") from e

    output_dir = os.environ.get(OUTPUT_DIR_ENV)
    if output_dir:
        config.output.directory = Path(output_dir)

    return config
