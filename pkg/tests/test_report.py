"""Tests for sweeps, serialization and golden outputs."""

import json
from pathlib import Path

import pytest

from src.report.serialize import columns, serialize, write_output
from src.report.sweep import (
    BoundViolationError,
    OracleRef,
    SweepConfig,
    SweepConfigError,
    SweepRow,
    check_row,
    grid_values,
    parse_grid,
    run_sweep,
)

GOLDEN_DIR = Path(__file__).parent / "golden"


def sweep(name, params=None, grid=(1.0, 2.0, 3.0), bounds=(), workers=1):
    config = SweepConfig(
        oracle=OracleRef(name=name, params=params or {}),
        eps_grid=list(grid),
        bounds=list(bounds),
        workers=workers,
    )
    return run_sweep(config)


def test_normal_sweep_chebyshev_column():
    """Test three rows with the classical values 1, 1/4, 1/9."""
    rows = sweep("normal", bounds=["theorem", "chebyshev"])
    assert [row.eps for row in rows] == [1.0, 2.0, 3.0]
    assert [row.bounds["chebyshev"] for row in rows] == [1.0, 0.25, 1.0 / 9.0]
    assert all(row.actual <= row.bounds["theorem"] for row in rows)
    assert list(rows[0].bounds) == ["theorem", "chebyshev"], "Canonical column order"


def test_empty_bounds_gives_minimal_rows():
    """Test that a sweep with no bound columns keeps only eps, actual and m_eps."""
    rows = sweep("normal")
    assert columns(rows) == ["eps", "actual", "m_eps"]
    assert serialize(rows, "csv").decode().splitlines()[0] == "eps,actual,m_eps"


def test_incompatible_bound_rejected_before_computation():
    """Test that a discrete bound on a continuous oracle is a config error."""
    with pytest.raises(SweepConfigError, match="do not apply"):
        sweep("normal", bounds=["discrete_theorem"])
    with pytest.raises(SweepConfigError):
        sweep("poisson", {"lam": 4.0}, bounds=["theorem"])


@pytest.mark.parametrize("grid", [[], [1.0, 1.0], [2.0, 1.0], [0.0, 1.0], [-1.0]])
def test_invalid_grids(grid):
    """Test that grids must be nonempty, positive and strictly increasing."""
    with pytest.raises(ValueError):
        SweepConfig(oracle=OracleRef(name="normal"), eps_grid=grid)


def test_unknown_bound_name():
    """Test that unknown bound names are rejected."""
    with pytest.raises(ValueError, match="unknown bound"):
        SweepConfig(oracle=OracleRef(name="normal"), eps_grid=[1.0], bounds=["hoeffding"])


def test_grid_parsing():
    """Test start:stop:step and comma-list grids."""
    grid = parse_grid("0.5:4.0:0.1")
    assert len(grid) == 36
    assert grid[0] == 0.5 and grid[-1] == 4.0
    assert grid[7] == 1.2
    assert parse_grid("1,2,3") == [1.0, 2.0, 3.0]
    assert grid_values(0.5, 3.0, 0.1)[-1] == 3.0

    for text in ("abc", "1:0.5:0.1", "1:2"):
        with pytest.raises(SweepConfigError):
            parse_grid(text)


def test_discrete_sweep_columns():
    """Test that discrete sweeps carry the inner tail next to the symmetric tail."""
    rows = sweep("poisson", {"lam": 4.0}, bounds=["discrete_corollary", "discrete_theorem", "chebyshev"])
    assert columns(rows) == [
        "eps",
        "actual",
        "actual_inner",
        "chebyshev",
        "discrete_theorem",
        "discrete_corollary",
        "m_eps",
        "clamped",
    ]
    for row in rows:
        assert row.actual_inner <= row.actual
        assert row.actual <= row.bounds["discrete_corollary"]


def test_multivariate_sweep():
    """Test a bivariate normal sweep against exp(-eps^2 / 2)."""
    rows = sweep("mvnormal", {"dim": 2}, grid=[1.0, 2.0], bounds=["chen", "multivariate"])
    assert rows[1].actual == pytest.approx(0.135335, abs=1e-6)
    assert rows[1].bounds["chen"] == 0.5
    assert rows[0].clamped == ["chen", "multivariate"]
    assert rows[1].clamped == []


def test_parallel_rows_keep_grid_order():
    """Test that threaded evaluation returns the same rows in grid order."""
    grid = [0.5 + 0.25 * i for i in range(12)]
    sequential = sweep("laplace", grid=grid, bounds=["theorem", "corollary"])
    threaded = sweep("laplace", grid=grid, bounds=["theorem", "corollary"], workers=4)
    assert threaded == sequential


def test_violation_aborts():
    """Test that an actual probability above a bound raises with context."""
    row = SweepRow(eps=1.5, actual=0.5, m_eps=0.1, bounds={"theorem": 0.4})
    with pytest.raises(BoundViolationError) as info:
        check_row(row, 1e-12)
    assert info.value.bound_name == "theorem"
    assert info.value.eps == 1.5


def test_one_sided_is_not_checked():
    """Test that the one-sided comparator is reported but never validated."""
    check_row(SweepRow(eps=1.0, actual=0.9, m_eps=0.1, bounds={"one_sided": 0.5}), 1e-12)


def test_discrete_theorem_checked_against_inner_tail():
    """Test that discrete_theorem and chebyshev compare with actual_inner."""
    row = SweepRow(
        eps=2.0,
        actual=0.3,
        actual_inner=0.1,
        m_eps=0.05,
        bounds={"chebyshev": 0.25, "discrete_theorem": 0.2},
    )
    check_row(row, 1e-12)


def test_one_row_csv_has_two_lines():
    """Test header plus a single row."""
    rows = sweep("normal", grid=[2.0], bounds=["chebyshev"])
    lines = serialize(rows, "csv").decode().splitlines()
    assert len(lines) == 2
    assert lines[0] == "eps,actual,chebyshev,m_eps,clamped"
    assert lines[1].startswith("2,0.0455002638")


def test_serialization_is_deterministic():
    """Test that serializing the same rows twice gives identical bytes."""
    rows = sweep("normal", bounds=["theorem", "corollary", "chebyshev", "one_sided"])
    assert serialize(rows, "csv") == serialize(rows, "csv")
    assert serialize(rows, "json") == serialize(rows, "json")


def test_json_round_trip():
    """Test that parsed JSON reproduces the quantised numbers and field names."""
    rows = sweep("normal", grid=[0.5, 2.0], bounds=["theorem", "chebyshev"])
    records = json.loads(serialize(rows, "json"))
    assert list(records[0]) == ["eps", "actual", "theorem", "chebyshev", "m_eps", "clamped"]
    assert "chebyshev" in records[0]["clamped"]
    for record, row in zip(records, rows):
        assert record["theorem"] == float(f"{row.bounds['theorem']:.12g}")
        assert record["actual"] == float(f"{row.actual:.12g}")


def test_serialize_rejects_empty_and_unknown_format():
    """Test preconditions of serialize."""
    with pytest.raises(ValueError):
        serialize([], "csv")
    with pytest.raises(ValueError):
        serialize(sweep("normal", grid=[1.0]), "xml")


def test_write_output(tmp_path):
    """Test that parent directories are created and IO failures carry the path."""
    target = tmp_path / "nested" / "dir" / "out.csv"
    write_output(b"eps\n1\n", target)
    assert target.read_bytes() == b"eps\n1\n"

    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(OSError, match="out.csv"):
        write_output(b"x", blocker / "out.csv")


def _check_golden(name: str, payload: bytes):
    path = GOLDEN_DIR / name
    assert path.exists(), f"missing golden file {path}"
    assert payload == path.read_bytes(), f"{name} differs from the committed golden file"


def test_golden_normal_sweep():
    """Test the normal sweep over 0.5:4.0:0.1 against its golden CSV."""
    rows = sweep("normal", grid=parse_grid("0.5:4.0:0.1"), bounds=["theorem", "corollary", "chebyshev"])
    _check_golden("normal_0.5_4.0_0.1.csv", serialize(rows, "csv"))


def test_golden_poisson_sweep():
    """Test the Poisson(4) sweep over 0.5:3.0:0.1 against its golden CSV."""
    rows = sweep(
        "poisson",
        {"lam": 4.0},
        grid=parse_grid("0.5:3.0:0.1"),
        bounds=["chebyshev", "discrete_theorem", "discrete_corollary"],
    )
    _check_golden("poisson_4_0.5_3.0_0.1.csv", serialize(rows, "csv"))
