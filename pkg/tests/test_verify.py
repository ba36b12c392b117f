"""Tests for the verification suite and its terminal report."""

from io import StringIO

import pytest
from rich.console import Console

from src.config import Config, Verify
from src.ui.terminal import TerminalReporter
from src.verify.suite import GROUPS, CheckResult, VerificationSuite, failed


@pytest.fixture
def suite():
    config = Config(verify=Verify(property_cases=40, set_identity_cases=10))
    return VerificationSuite(config, seed=0, mc_samples=100_000)


@pytest.mark.parametrize("group", [g for g in GROUPS if g != "montecarlo"])
def test_group_passes(suite, group):
    """Test that every deterministic check group passes on the default configuration."""
    results = suite.run([group])
    assert results, f"{group} produced no checks"
    assert all(r.group == group for r in results)
    assert not failed(results), [f"{r.name}: {r.detail}" for r in failed(results)]


def test_montecarlo_group(suite):
    """Test that seeded estimates land within four standard errors."""
    results = suite.run(["montecarlo"])
    assert len(results) == 7
    assert not failed(results), [r.detail for r in failed(results)]


def test_duplicate_groups_run_once(suite):
    """Test that repeating a group name does not repeat its checks."""
    once = suite.run(["solver"])
    twice = suite.run(["solver", "solver"])
    assert len(twice) == len(once)


def test_unknown_group(suite):
    """Test that unknown group names are rejected before anything runs."""
    with pytest.raises(ValueError, match="unknown check group"):
        suite.run(["solver", "plots"])


def test_crashing_group_is_recorded(suite, monkeypatch):
    """Test that an exception inside a group becomes one failed check."""

    def explode():
        raise RuntimeError("boom")

    monkeypatch.setattr(suite, "check_bounds", explode)
    results = suite.run(["bounds", "solver"])
    crashed = [r for r in results if r.group == "bounds"]
    assert len(crashed) == 1
    assert not crashed[0].passed
    assert "RuntimeError: boom" in crashed[0].detail
    assert any(r.group == "solver" and r.passed for r in results), "Later groups still run"


def test_terminal_report():
    """Test the table and the failing-group summary."""
    buffer = StringIO()
    reporter = TerminalReporter(Console(file=buffer, width=120, color_system=None))
    reporter.show_checks(
        [
            CheckResult("solver", "agrees with bisection", True, "max relative gap 1e-15"),
            CheckResult("entropy", "normal attains the variance cap", False, "gap 0.1"),
        ]
    )
    text = buffer.getvalue()
    assert "agrees with bisection" in text
    assert "FAIL" in text
    assert "1 failed" in text
    assert "entropy (1)" in text


def test_terminal_report_all_passed():
    buffer = StringIO()
    TerminalReporter(Console(file=buffer, width=120, color_system=None)).show_checks(
        [CheckResult("bounds", "classical comparator values", True)]
    )
    assert "All 1 checks passed" in buffer.getvalue()
