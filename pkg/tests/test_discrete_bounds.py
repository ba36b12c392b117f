"""Tests for the integer-valued bounds and their tail sets."""

import dataclasses
import math

import numpy as np
import pytest

from src.bounds.discrete import (
    DiscreteSpec,
    DiscreteSpecError,
    TailStructureError,
    bound_discrete_corollary,
    bound_discrete_theorem,
    build_discrete_report,
    discrete_m_eps,
    edge_tail_mask,
    embed_variance,
    embedded_pdf,
    symmetric_tail_mask,
    tail_edges,
    tail_geometry,
    tail_probability,
)
from src.oracles.discrete import BinomialOracle, GeometricOracle, PoissonOracle

# Symmetric three-point pmf whose embedded variance is exactly 1
THREE_POINT = {-1: 11 / 24, 0: 1 / 12, 1: 11 / 24}


@pytest.fixture
def three_point():
    return DiscreteSpec.from_mapping(THREE_POINT, mean=0.0, variance=1.0 - 1.0 / 12.0)


def test_poisson_tail_geometry_at_eps_one():
    """Test the tail-set edges for Poisson(4) at eps = 1."""
    geometry = tail_geometry(1.0, PoissonOracle(lam=4.0).spec)

    assert geometry.sigma_f == pytest.approx(math.sqrt(4.0 + 1.0 / 12.0))
    assert geometry.m_eps_lo == 2, "floor(x_L)"
    assert geometry.d_eps_lo == 1
    assert geometry.d_eps_hi == 7, "ceil(x_R)"
    assert geometry.m_eps_hi == 6, "floor(x_R)"


def test_embedding_adds_one_twelfth():
    """Test that the floor embedding's variance is sigma^2 + 1/12."""
    spec = BinomialOracle(n=20, p=0.5).spec
    assert embed_variance(spec) == pytest.approx(5.0 + 1.0 / 12.0)
    f = embedded_pdf(spec)
    assert f(10.3) == pytest.approx(spec.p(10))
    assert f(-0.5) == 0.0


def test_three_point_pmf_sets(three_point):
    """Test the tail sets of a hand-checkable pmf with sigma_f = 1."""
    geometry = tail_geometry(1.0, three_point)
    assert geometry.sigma_f == pytest.approx(1.0, abs=1e-15)
    assert (geometry.x_L, geometry.x_R) == pytest.approx((-0.5, 1.5), abs=1e-14)

    # symmetric set is {-1}; D'_eps = {k <= -2 or k >= 2} is empty
    assert tail_probability(1.0, three_point, kind="corollary") == pytest.approx(11 / 24)
    assert tail_probability(1.0, three_point, kind="theorem") == 0.0
    assert discrete_m_eps(1.0, three_point) == pytest.approx(11 / 24)


def test_three_point_pmf_far_tail(three_point):
    """Test that a threshold beyond the support gives empty tails."""
    geometry = tail_geometry(4.5, three_point)
    assert (geometry.x_L, geometry.x_R) == pytest.approx((-4.0, 5.0), abs=1e-14)
    assert tail_probability(4.5, three_point) == 0.0
    assert discrete_m_eps(4.5, three_point) == 0.0
    assert bound_discrete_theorem(4.5, three_point) == 0.0


def test_from_mapping_computes_moments():
    """Test that omitted moments are computed from the mapping."""
    spec = DiscreteSpec.from_mapping({0: 0.25, 1: 0.5, 2: 0.25})
    assert spec.mean == pytest.approx(1.0)
    assert spec.variance == pytest.approx(0.5)
    assert spec.bounded
    assert spec.p(3) == 0.0


def test_unnormalised_pmf_rejected():
    """Test that a pmf not summing to one is refused."""
    with pytest.raises(DiscreteSpecError, match="sums to"):
        DiscreteSpec.from_mapping({0: 0.5, 1: 0.4})


def test_inconsistent_moments_rejected():
    """Test that declared moments must agree with the pmf."""
    with pytest.raises(DiscreteSpecError, match="mean"):
        DiscreteSpec.from_mapping({0: 0.5, 1: 0.5}, mean=0.7)


def test_unbounded_support_needs_mode():
    """Test that m_eps over an infinite tail without a declared mode is refused."""
    spec = dataclasses.replace(PoissonOracle(lam=4.0).spec, mode=None)
    with pytest.raises(TailStructureError):
        discrete_m_eps(1.0, spec)


def test_poisson_window_is_certified():
    """Test that the summation window for Poisson(4) misses at most 1e-14 of the mass."""
    spec = PoissonOracle(lam=4.0).spec
    ks, ps = spec.window_values(1e-14)
    assert ks[0] == 0
    assert 1.0 - math.fsum(ps) <= 1e-13


@pytest.mark.parametrize("eps", [0.5, 1.0, 1.3, 2.0, 2.7, 3.0])
def test_set_identity(eps):
    """Test Pr(symmetric) = Pr(D'_eps) + p(floor(x_L)) for Poisson and binomial."""
    for spec in (PoissonOracle(lam=4.0).spec, BinomialOracle(n=20, p=0.3).spec):
        geometry = tail_geometry(eps, spec)
        symmetric = tail_probability(eps, spec, kind="corollary")
        inner = tail_probability(eps, spec, kind="theorem")
        assert symmetric == pytest.approx(inner + spec.p(geometry.m_eps_lo), abs=1e-14)


@pytest.mark.parametrize(
    "mean,variance,eps",
    [
        (4.0, 4.0, 1.0),
        (-3.2, 0.7, 2.35),
        (0.0, 1.0 - 1.0 / 12.0, 1.5),  # x_L = -1
        (0.0, 1.0 - 1.0 / 12.0, 0.5),  # x_L = 0, x_R = 1
        (2.5, 4.0 - 1.0 / 12.0, 1.0),  # x_L = 1, x_R = 5
        (7.25, 12.5, 0.05),
    ],
)
def test_quadratic_set_matches_floor_edges(mean, variance, eps):
    """Test that enumerating (k - mu - 1/2)^2 >= eps^2 sigma_f^2 gives D'_eps plus floor(x_L)."""
    geometry = tail_edges(eps, mean, variance)
    ks = np.arange(math.floor(geometry.x_L) - 3, math.ceil(geometry.x_R) + 4)
    quadratic = {int(k) for k in ks if (k - mean - 0.5) ** 2 >= eps**2 * (variance + 1.0 / 12.0)}
    edges = {int(k) for k in ks[edge_tail_mask(ks, geometry)]}

    assert quadratic == edges
    assert quadratic == {int(k) for k in ks[symmetric_tail_mask(ks, geometry)]}


def test_integer_left_edge_adds_its_mass(three_point):
    """Test that x_L = -1 exactly puts -1 in the symmetric set and the corollary adds p(-1)."""
    geometry = tail_geometry(1.5, three_point)
    assert (geometry.x_L, geometry.x_R) == (-1.0, 2.0)
    assert geometry.m_eps_lo == -1

    assert tail_probability(1.5, three_point, kind="corollary") == pytest.approx(11 / 24)
    assert tail_probability(1.5, three_point, kind="theorem") == 0.0
    report = build_discrete_report(1.5, three_point)
    assert report.p_floor_x_L == pytest.approx(11 / 24)
    assert not report.clamped
    assert report.corollary_bound == pytest.approx(report.theorem_bound + 11 / 24, abs=1e-15)


def test_integer_right_edge_sets_coincide(three_point):
    """Test that x_R = 1 exactly makes the D'_eps and M_eps right edges coincide with mass beyond."""
    geometry = tail_geometry(0.5, three_point)
    assert (geometry.x_L, geometry.x_R) == (0.0, 1.0)
    assert geometry.d_eps_hi == geometry.m_eps_hi == 1

    assert tail_probability(0.5, three_point, kind="theorem") == pytest.approx(11 / 12)
    assert tail_probability(0.5, three_point, kind="corollary") == pytest.approx(1.0)
    assert discrete_m_eps(0.5, three_point) == pytest.approx(11 / 24)


@pytest.mark.parametrize("eps,edge", [(1.0, 1), (1.2, 4), (1.8, 5)])
def test_geometric_m_eps_sits_on_inner_edge(eps, edge):
    """Test that a decreasing pmf takes its M_eps maximum at the inner edge nearest the mode."""
    spec = GeometricOracle(p=0.5).spec
    geometry = tail_geometry(eps, spec)
    ks = np.arange(1, 200)
    in_m = (ks <= geometry.m_eps_lo) | (ks >= geometry.m_eps_hi)
    scanned = geometry.sigma_f * float(np.max(spec.pmf(ks[in_m])))

    assert discrete_m_eps(eps, spec) == pytest.approx(scanned, rel=1e-12)
    assert discrete_m_eps(eps, spec) == pytest.approx(geometry.sigma_f * 0.5**edge, rel=1e-12)


def test_poisson_corollary_dominates_symmetric_tail():
    """Test the discrete corollary against exact Poisson(4) tails on the default grid."""
    spec = PoissonOracle(lam=4.0).spec
    for eps in np.round(np.arange(0.5, 3.0001, 0.1), 12):
        actual = tail_probability(float(eps), spec)
        assert actual <= bound_discrete_corollary(float(eps), spec) + 1e-12, f"eps={eps}"
        inner = tail_probability(float(eps), spec, kind="theorem")
        assert inner <= bound_discrete_theorem(float(eps), spec) + 1e-12, f"eps={eps}"


def test_report_adds_edge_mass():
    """Test that the corollary is the theorem plus p(floor(x_L)) when nothing is clamped."""
    report = build_discrete_report(2.0, PoissonOracle(lam=4.0).spec)
    assert not report.clamped
    assert report.corollary_bound == pytest.approx(report.theorem_bound + report.p_floor_x_L, abs=1e-15)
    assert report.chebyshev == 0.25
    assert report.to_dict()["alpha"] == report.alpha


def test_mode_shortcut_matches_full_scan():
    """Test that the mode-based m_eps equals a brute-force scan on a finite support."""
    spec = BinomialOracle(n=20, p=0.35).spec
    scanned = dataclasses.replace(spec, mode=None)
    for eps in (0.2, 0.7, 1.0, 1.9, 2.6, 3.4):
        assert discrete_m_eps(eps, spec) == pytest.approx(discrete_m_eps(eps, scanned), rel=1e-12)


def test_unknown_tail_kind():
    """Test that only the two tail sets are accepted."""
    with pytest.raises(ValueError, match="unknown tail set"):
        tail_probability(1.0, PoissonOracle(lam=4.0).spec, kind="left")
