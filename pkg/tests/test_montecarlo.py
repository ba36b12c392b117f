"""Tests for seeded Monte Carlo tail estimates."""

import pytest

from src.oracles.base import CapabilityError
from src.oracles.continuous import LaplaceOracle, NormalOracle, UniformOracle
from src.oracles.discrete import DiscreteOracle, PoissonOracle
from src.oracles.montecarlo import make_rng, mc_tail_estimate
from src.oracles.multivariate import MultiNormalOracle


def test_normal_estimate_within_four_standard_errors():
    """Test the standard normal at eps=2 with a million draws."""
    estimate = mc_tail_estimate(NormalOracle(), 2.0, n_samples=1_000_000, seed=0)
    assert abs(estimate.estimate - 0.0455003) <= 4 * estimate.std_error


@pytest.mark.parametrize("eps", [1.0, 2.0, 3.0])
def test_laplace_estimate(eps):
    """Test Laplace estimates against exp(-eps sqrt 2)."""
    oracle = LaplaceOracle()
    estimate = mc_tail_estimate(oracle, eps, n_samples=200_000, seed=3)
    assert abs(estimate.estimate - oracle.exact_tail(eps)) <= 4 * estimate.std_error


def test_whole_space_and_empty_tail():
    """Test eps=0 (every draw) and a tail outside the uniform support (no draw)."""
    whole = mc_tail_estimate(NormalOracle(), 0.0, n_samples=10_000)
    assert whole.estimate == 1.0
    assert whole.std_error == 0.0

    empty = mc_tail_estimate(UniformOracle(), 2.0, n_samples=10_000)
    assert empty.estimate == 0.0


def test_same_seed_same_estimate():
    """Test determinism under a fixed seed."""
    first = mc_tail_estimate(NormalOracle(), 1.0, n_samples=50_000, seed=7)
    second = mc_tail_estimate(NormalOracle(), 1.0, n_samples=50_000, seed=7)
    assert first == second


def test_rng_streams_are_reproducible():
    """Test that the Philox generator repeats its stream for a seed."""
    assert make_rng(11).random(5).tolist() == make_rng(11).random(5).tolist()


def test_minimum_sample_count():
    """Test that fewer than 10^4 draws are refused."""
    with pytest.raises(ValueError, match="at least"):
        mc_tail_estimate(NormalOracle(), 1.0, n_samples=100)


def test_multivariate_and_discrete_estimates():
    """Test the Mahalanobis and discrete symmetric tails by sampling."""
    normal = MultiNormalOracle(dim=2, cov=[[2.0, 0.5], [0.5, 1.0]])
    estimate = mc_tail_estimate(normal, 1.5, n_samples=200_000, seed=1)
    assert abs(estimate.estimate - normal.exact_tail(1.5)) <= 4 * estimate.std_error

    poisson = PoissonOracle(lam=4.0)
    estimate = mc_tail_estimate(poisson, 1.3, n_samples=200_000, seed=2)
    assert abs(estimate.estimate - poisson.exact_tail(1.3)) <= 4 * estimate.std_error


def test_unsampleable_oracle():
    """Test that an oracle without a sampler cannot be simulated."""
    poisson = PoissonOracle(lam=4.0)
    bare = DiscreteOracle("bare", {}, poisson.spec)
    with pytest.raises(CapabilityError):
        mc_tail_estimate(bare, 1.0, n_samples=10_000)
