"""Epsilon sweeps comparing exact tails against every requested bound."""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from pydantic import BaseModel, Field, field_validator

from ..bounds.core import (
    bound_1d_corollary,
    bound_1d_theorem,
    bound_chebyshev_classical,
    bound_chebyshev_one_sided,
    bound_multivariate_chen,
    bound_multivariate_improved,
)
from ..bounds.discrete import build_discrete_report
from ..oracles.base import DistributionOracle, OracleKind
from ..oracles.registry import build_oracle

logger = logging.getLogger(__name__)


# Canonical column order
BOUND_NAMES = (
    "theorem",
    "corollary",
    "chebyshev",
    "one_sided",
    "chen",
    "multivariate",
    "discrete_theorem",
    "discrete_corollary",
)

COMPATIBLE_BOUNDS = {
    OracleKind.CONTINUOUS_1D: {"theorem", "corollary", "chebyshev", "one_sided"},
    OracleKind.CONTINUOUS_MULTI: {"chen", "multivariate"},
    OracleKind.DISCRETE: {"chebyshev", "discrete_theorem", "discrete_corollary"},
}

# Columns compared with actual_inner (the D'_eps tail) instead of actual
INNER_SET_BOUNDS = {"discrete_theorem"}

# one_sided bounds a different event and is never checked
UNCHECKED_BOUNDS = {"one_sided"}


class SweepConfigError(ValueError):
    """Sweep request that cannot run (grid, bound names, oracle pairing)."""


class BoundViolationError(RuntimeError):
    """An exact tail probability exceeded a bound that should dominate it."""

    def __init__(self, eps: float, bound_name: str, actual: float, bound: float):
        self.eps = eps
        self.bound_name = bound_name
        self.actual = actual
        self.bound = bound
        super().__init__(
            f"actual probability {actual:.12g} exceeds {bound_name} bound {bound:.12g} at eps={eps}"
        )


class OracleRef(BaseModel):
    name: str
    params: dict = Field(default_factory=dict)


class SweepConfig(BaseModel):
    """One sweep request: an oracle, an epsilon grid and the bound columns."""

    oracle: OracleRef
    eps_grid: list[float]
    bounds: list[str] = Field(default_factory=list)
    output_format: str = Field(default="csv", pattern="^(csv|json)$")
    validity_slack: float = Field(default=1e-12, ge=0)
    workers: int = Field(default=1, ge=1)

    @field_validator("eps_grid")
    @classmethod
    def validate_grid(cls, v: list[float]) -> list[float]:
        if not v:
            raise ValueError("eps_grid is empty")
        if any(not math.isfinite(e) or e <= 0 for e in v):
            raise ValueError("eps_grid values must be positive")
        for a, b in zip(v, v[1:]):
            if b <= a:
                raise ValueError(f"eps_grid must be strictly increasing ({a} then {b})")
        return v

    @field_validator("bounds")
    @classmethod
    def canonical_bounds(cls, v: list[str]) -> list[str]:
        unknown = sorted(set(v) - set(BOUND_NAMES))
        if unknown:
            raise ValueError(f"unknown bound(s): {', '.join(unknown)}")
        return [name for name in BOUND_NAMES if name in v]


@dataclass
class SweepRow:
    eps: float
    actual: Optional[float]
    m_eps: float
    bounds: dict[str, float] = field(default_factory=dict)
    clamped: list[str] = field(default_factory=list)
    actual_inner: Optional[float] = None


def grid_values(start: float, stop: float, step: float) -> list[float]:
    """
    Evenly spaced grid from start to stop inclusive.

    Values are start + i * step rounded to 12 decimals so that repeated
    additions never drift off the printed grid.
    """
    if step <= 0 or start <= 0 or stop < start:
        raise SweepConfigError(f"invalid grid {start}:{stop}:{step}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(count)]


def parse_grid(text: str) -> list[float]:
    """Parse "start:stop:step" or a comma-separated list of epsilons."""
    try:
        if ":" in text:
            start, stop, step = (float(part) for part in text.split(":"))
            return grid_values(start, stop, step)
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise SweepConfigError(f"invalid grid {text!r}: {e}") from e


def check_compatibility(oracle: DistributionOracle, bounds: list[str]):
    allowed = COMPATIBLE_BOUNDS[oracle.kind]
    rejected = [name for name in bounds if name not in allowed]
    if rejected:
        raise SweepConfigError(
            f"bound(s) {', '.join(rejected)} do not apply to {oracle.kind.value} oracle {oracle.name}"
        )


def _continuous_row(oracle, eps: float, bounds: list[str], solver_options: dict) -> SweepRow:
    spec = oracle.moment_spec(eps)
    row = SweepRow(eps=eps, actual=oracle.exact_tail(eps), m_eps=spec.m_eps)
    for name in bounds:
        if name == "theorem":
            result = bound_1d_theorem(eps, spec, **solver_options)
            row.bounds[name] = result.bound
            if result.clamped:
                row.clamped.append(name)
        elif name == "corollary":
            result = bound_1d_corollary(eps, spec)
            row.bounds[name] = result.bound
            if result.clamped:
                row.clamped.append(name)
        elif name == "chebyshev":
            row.bounds[name] = bound_chebyshev_classical(eps)
            if eps < 1.0:
                row.clamped.append(name)
        elif name == "one_sided":
            row.bounds[name] = bound_chebyshev_one_sided(eps)
    return row


def _multivariate_row(oracle, eps: float, bounds: list[str]) -> SweepRow:
    spec = oracle.moment_spec(eps)
    improved = bound_multivariate_improved(eps, spec)
    row = SweepRow(eps=eps, actual=oracle.exact_tail(eps), m_eps=improved.m_eps)
    for name in bounds:
        if name == "chen":
            row.bounds[name] = bound_multivariate_chen(eps, spec.dim)
            if spec.dim / (eps * eps) > 1.0:
                row.clamped.append(name)
        elif name == "multivariate":
            row.bounds[name] = improved.bound
            if improved.clamped:
                row.clamped.append(name)
    return row


def _discrete_row(oracle, eps: float, bounds: list[str], solver_options: dict) -> SweepRow:
    report = build_discrete_report(eps, oracle.spec, **solver_options)
    row = SweepRow(
        eps=eps,
        actual=oracle.exact_tail(eps),
        m_eps=report.m_eps,
        actual_inner=oracle.exact_inner_tail(eps),
    )
    for name in bounds:
        if name == "discrete_theorem":
            row.bounds[name] = report.theorem_bound
        elif name == "discrete_corollary":
            row.bounds[name] = report.corollary_bound
        elif name == "chebyshev":
            row.bounds[name] = bound_chebyshev_classical(eps)
            if eps < 1.0:
                row.clamped.append(name)
    if report.clamped:
        row.clamped.extend(n for n in ("discrete_theorem", "discrete_corollary") if n in bounds)
    return row


def compute_row(oracle: DistributionOracle, eps: float, bounds: list[str], solver_options: Optional[dict] = None) -> SweepRow:
    solver_options = solver_options or {}
    if oracle.kind == OracleKind.CONTINUOUS_1D:
        return _continuous_row(oracle, eps, bounds, solver_options)
    if oracle.kind == OracleKind.CONTINUOUS_MULTI:
        return _multivariate_row(oracle, eps, bounds)
    return _discrete_row(oracle, eps, bounds, solver_options)


def check_row(row: SweepRow, slack: float):
    """Raise BoundViolationError if an exact tail exceeds a bound column."""
    for name, bound in row.bounds.items():
        if name in UNCHECKED_BOUNDS:
            continue
        actual = row.actual_inner if name in INNER_SET_BOUNDS or (
            name == "chebyshev" and row.actual_inner is not None
        ) else row.actual
        if actual is not None and actual > bound + slack:
            logger.error(f"Bound violated at eps={row.eps}: {name}={bound:.12g} < actual={actual:.12g}")
            raise BoundViolationError(row.eps, name, actual, bound)


def run_sweep(config: SweepConfig, solver_options: Optional[dict] = None) -> list[SweepRow]:
    """
    Compute one row per epsilon of the grid.

    Compatibility of the requested bounds with the oracle is checked before
    any computation. Rows are independent, so with workers > 1 they are
    computed on a thread pool; output order always follows eps_grid.

    Raises:
        SweepConfigError: Incompatible bound/oracle pairing
        BoundViolationError: An exact tail exceeded a valid bound
    """
    try:
        oracle = build_oracle(config.oracle.name, config.oracle.params)
    except ValueError as e:
        raise SweepConfigError(str(e)) from e
    check_compatibility(oracle, config.bounds)

    logger.info(
        f"Sweep {oracle!r}: {len(config.eps_grid)} points, bounds={config.bounds or 'none'}"
    )

    def compute(eps: float) -> SweepRow:
        return compute_row(oracle, eps, config.bounds, solver_options)

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            rows = list(pool.map(compute, config.eps_grid))
    else:
        rows = [compute(eps) for eps in config.eps_grid]

    for row in rows:
        check_row(row, config.validity_slack)

    logger.info(f"Sweep complete: {len(rows)} rows, all bounds valid")
    return rows
