import logging
import math
from typing import NamedTuple

import numpy as np

from .base import DistributionOracle, validate_threshold

logger = logging.getLogger(__name__)


MIN_SAMPLES = 10_000


class TailEstimate(NamedTuple):
    estimate: float
    std_error: float


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based Philox generator; same seed, same stream on every platform."""
    return np.random.Generator(np.random.Philox(seed))


def mc_tail_estimate(
    oracle: DistributionOracle,
    eps: float,
    n_samples: int = 1_000_000,
    seed: int = 0,
) -> TailEstimate:
    """
    Empirical frequency of D_eps with its binomial standard error.

    Each call draws from a fresh generator seeded with `seed`, so results are
    reproducible and calls share no state.

    Args:
        oracle: Sampleable oracle
        eps: Threshold (>= 0)
        n_samples: At least 10_000 draws
        seed: Philox seed

    Returns:
        TailEstimate(estimate, std_error)
    """
    eps = validate_threshold(eps)
    oracle.require("sampleable")
    if n_samples < MIN_SAMPLES:
        raise ValueError(f"n_samples must be at least {MIN_SAMPLES}")

    samples = oracle.sample(make_rng(seed), n_samples)
    hits = int(np.count_nonzero(oracle.in_tail(samples, eps)))
    estimate = hits / n_samples
    std_error = math.sqrt(estimate * (1.0 - estimate) / n_samples)
    logger.debug(f"{oracle.name} eps={eps}: {hits}/{n_samples} in tail (seed={seed})")
    return TailEstimate(estimate=estimate, std_error=std_error)
