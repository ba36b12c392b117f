"""End-to-end tests of the command line through main()."""

import json

import pytest

from src.main import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main

PHI_2 = 0.05399096651318806  # standard normal density at 2


@pytest.fixture(autouse=True)
def isolated_cwd(tmp_path, monkeypatch):
    """Run every command from an empty directory so no config.yaml is picked up."""
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("CHEBYSHEV_OUTPUT_DIR", raising=False)
    return tmp_path


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    assert code == EXIT_OK, f"{argv} exited {code}"
    return json.loads(out)


def test_bound_from_raw_moments(capsys):
    """Test a standard normal at eps=2 given as mean, variance and supremum."""
    report = run_json(capsys, ["bound", "--eps", "2", "--mean", "0", "--variance", "1", "--sup", str(PHI_2)])
    assert report["chebyshev"] == 0.25
    assert report["theorem_bound"] < 0.25
    assert report["theorem_bound"] <= report["corollary_bound"]
    assert report["clamped"] is False


def test_bound_from_oracle_matches_raw(capsys):
    """Test that --oracle normal reproduces the raw-moment report."""
    raw = run_json(capsys, ["bound", "--eps", "2", "--mean", "0", "--variance", "1", "--sup", str(PHI_2)])
    oracle = run_json(capsys, ["bound", "--eps", "2", "--oracle", "normal"])
    assert oracle["theorem_bound"] == pytest.approx(raw["theorem_bound"], rel=1e-9)
    assert oracle["m_eps"] == pytest.approx(raw["m_eps"], rel=1e-9)


def test_bound_far_normal_tail(capsys):
    """Test that a normal oracle at eps=30 reports a tiny positive theorem bound."""
    report = run_json(capsys, ["bound", "--eps", "30", "--oracle", "normal"])
    assert 0 < report["theorem_bound"] <= report["corollary_bound"]
    assert report["clamped"] is False


def test_bound_rejects_nonpositive_eps(capsys):
    """Test that eps=0 is a usage error with a clear message."""
    code = main(["bound", "--eps", "0", "--mean", "0", "--variance", "1", "--sup", "0.1"])
    assert code == EXIT_USAGE
    assert "epsilon must be positive" in capsys.readouterr().err


def test_bound_input_modes_are_exclusive(capsys):
    """Test that raw moments and --oracle cannot be combined, and one is required."""
    assert main(["bound", "--eps", "1", "--oracle", "normal", "--mean", "0"]) == EXIT_USAGE
    assert main(["bound", "--eps", "1"]) == EXIT_USAGE
    assert main(["bound", "--eps", "1", "--mean", "0", "--variance", "1"]) == EXIT_USAGE


def test_bound_rejects_negative_supremum(capsys):
    """Test that a negative density supremum is a usage error."""
    assert main(["bound", "--eps", "1", "--mean", "0", "--variance", "1", "--sup", "-0.1"]) == EXIT_USAGE
    assert "sup density" in capsys.readouterr().err


def test_bound_discrete_and_multivariate(capsys):
    """Test the Poisson and bivariate normal report shapes."""
    poisson = run_json(capsys, ["bound", "--eps", "2", "--oracle", "poisson", "--lambda", "4"])
    assert poisson["corollary_bound"] >= poisson["theorem_bound"]
    assert poisson["chebyshev"] == 0.25

    normal = run_json(capsys, ["bound", "--eps", "2", "--oracle", "mvnormal", "--dim", "2"])
    assert normal["chen"] == 0.5
    assert normal["dim"] == 2

    raw = run_json(capsys, ["bound", "--eps", "2", "--dim", "2", "--cov-det", "1", "--sup", "0.0215392793"])
    assert raw["bound"] == pytest.approx(normal["bound"], rel=1e-6)


def test_sweep_csv_to_stdout(capsys):
    """Test the default normal sweep header and row count."""
    assert main(["sweep", "--oracle", "normal"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "eps,actual,theorem,corollary,chebyshev,m_eps,clamped"
    assert len(lines) == 1 + 36


def test_sweep_poisson_json(capsys):
    """Test Poisson(4) over its default grid in JSON."""
    records = run_json(capsys, ["sweep", "--oracle", "poisson", "--lambda", "4", "--format", "json"])
    assert len(records) == 26
    assert records[0]["eps"] == 0.5
    assert all(r["actual_inner"] <= r["discrete_theorem"] + 1e-12 for r in records)


def test_sweep_invalid_grid(capsys):
    """Test that a malformed or decreasing grid exits with a usage error."""
    assert main(["sweep", "--oracle", "normal", "--grid", "2:1:0.1"]) == EXIT_USAGE
    assert main(["sweep", "--oracle", "normal", "--grid", "1,1"]) == EXIT_USAGE
    assert main(["sweep", "--oracle", "normal", "--bounds", "discrete_theorem"]) == EXIT_USAGE
    assert main(["sweep"]) == EXIT_USAGE


def test_sweep_output_under_configured_directory(capsys, tmp_path, monkeypatch):
    """Test that relative --output paths land in CHEBYSHEV_OUTPUT_DIR."""
    out_dir = tmp_path / "results"
    monkeypatch.setenv("CHEBYSHEV_OUTPUT_DIR", str(out_dir))
    code = main(["sweep", "--oracle", "laplace", "--grid", "1,2", "--output", "laplace.csv"])
    assert code == EXIT_OK
    assert capsys.readouterr().out == ""
    written = (out_dir / "laplace.csv").read_text().splitlines()
    assert len(written) == 3


def test_verify_solver_group(capsys):
    """Test that the solver checks pass and the table is printed."""
    assert main(["verify", "--only", "solver"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "solver" in out


def test_verify_usage_errors(capsys):
    """Test bad sample counts and unknown groups."""
    assert main(["verify", "--mc-samples", "10"]) == EXIT_USAGE
    assert main(["verify", "--only", "bogus"]) == EXIT_USAGE


def test_missing_config_file(capsys, tmp_path):
    """Test that an explicit config path that doesn't exist is a usage error."""
    code = main(["verify", "--only", "solver", "--config", str(tmp_path / "nope.yaml")])
    assert code == EXIT_USAGE
    assert "Config file not found" in capsys.readouterr().err


def test_invalid_config_file(capsys, tmp_path):
    """Test that a config failing validation is a usage error."""
    path = tmp_path / "bad.yaml"
    path.write_text("solver:\n  newton_steps: -1\n")
    assert main(["bound", "--eps", "1", "--oracle", "normal", "--config", str(path)]) == EXIT_USAGE
    assert "Configuration validation failed" in capsys.readouterr().err


def test_exit_codes_are_distinct():
    assert len({EXIT_OK, EXIT_FAILURE, EXIT_USAGE}) == 3
