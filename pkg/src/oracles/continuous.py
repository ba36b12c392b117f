"""One-dimensional continuous zoo: normal, Laplace, uniform, exponential.

Every member is unimodal, so the supremum of the density on
D_eps = {|x - mu| >= eps * sigma} sits at the edge of D_eps closest to the mode.
"""

import logging
import math
from abc import abstractmethod

import numpy as np
from scipy import stats

from ..bounds.core import MomentSpec1D
from .base import CapabilityError, DistributionOracle, OracleKind, validate_threshold

logger = logging.getLogger(__name__)


SQRT3 = math.sqrt(3.0)
SQRT2 = math.sqrt(2.0)

# Quadrature windows reach this many standard deviations past the mean
WINDOW_SIGMAS = 40.0


class ContinuousOracle(DistributionOracle):
    """1-D oracle backed by a frozen scipy.stats distribution."""

    kind = OracleKind.CONTINUOUS_1D

    def __init__(self, name: str, params: dict, dist):
        super().__init__(name, params)
        self.dist = dist
        self.mean = float(dist.mean())
        self.variance = float(dist.var())
        self.std = math.sqrt(self.variance)

    def pdf(self, x):
        return self.dist.pdf(x)

    def entropy(self) -> float:
        """Closed-form differential entropy in nats."""
        return float(self.dist.entropy())

    @abstractmethod
    def sup_density(self) -> float:
        """Global ||f||_inf."""

    @abstractmethod
    def sup_on_tail(self, eps: float) -> float:
        """||f||_inf restricted to D_eps; zero when D_eps misses the support."""

    def breakpoints(self) -> list[float]:
        """Points where the density has a kink or jump."""
        return [self.mean]

    def window(self) -> tuple[float, float]:
        lo, hi = self.dist.support()
        return (
            max(float(lo), self.mean - WINDOW_SIGMAS * self.std),
            min(float(hi), self.mean + WINDOW_SIGMAS * self.std),
        )

    def moment_spec(self, eps: float) -> MomentSpec1D:
        return MomentSpec1D(
            mean=self.mean,
            variance=self.variance,
            sup_density_on_tail=self.sup_on_tail(eps),
        )

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return self.dist.rvs(size=n, random_state=rng)

    def in_tail(self, samples: np.ndarray, eps: float) -> np.ndarray:
        return (samples - self.mean) ** 2 >= (eps * self.std) ** 2


class NormalOracle(ContinuousOracle):
    PARAMS = ("mu", "sigma")

    def __init__(self, mu: float = 0.0, sigma: float = 1.0):
        if sigma <= 0:
            raise ValueError("sigma must be positive")
        super().__init__("normal", {"mu": mu, "sigma": sigma}, stats.norm(loc=mu, scale=sigma))

    def exact_tail(self, eps: float) -> float:
        eps = validate_threshold(eps)
        return float(2.0 * stats.norm.sf(eps))

    def sup_density(self) -> float:
        return float(self.dist.pdf(self.mean))

    def sup_on_tail(self, eps: float) -> float:
        eps = validate_threshold(eps)
        return float(self.dist.pdf(self.mean + eps * self.std))


class LaplaceOracle(ContinuousOracle):
    """Laplace with scale b; sigma = b * sqrt(2). Default scale gives sigma = 1."""

    PARAMS = ("mu", "scale")

    def __init__(self, mu: float = 0.0, scale: float = 1.0 / SQRT2):
        if scale <= 0:
            raise ValueError("scale must be positive")
        super().__init__("laplace", {"mu": mu, "scale": scale}, stats.laplace(loc=mu, scale=scale))
        self.scale = scale

    def exact_tail(self, eps: float) -> float:
        eps = validate_threshold(eps)
        return math.exp(-eps * SQRT2)

    def sup_density(self) -> float:
        return 1.0 / (2.0 * self.scale)

    def sup_on_tail(self, eps: float) -> float:
        eps = validate_threshold(eps)
        return math.exp(-eps * SQRT2) / (2.0 * self.scale)

    def mean_absolute_deviation(self) -> float:
        return self.scale


class UniformOracle(ContinuousOracle):
    PARAMS = ("lo", "hi")

    def __init__(self, lo: float = -SQRT3, hi: float = SQRT3):
        if hi <= lo:
            raise ValueError("uniform needs lo < hi")
        super().__init__("uniform", {"lo": lo, "hi": hi}, stats.uniform(loc=lo, scale=hi - lo))
        self.lo = lo
        self.hi = hi

    def exact_tail(self, eps: float) -> float:
        # half-width is sqrt(3) sigma
        eps = validate_threshold(eps)
        return max(0.0, 1.0 - eps / SQRT3)

    def sup_density(self) -> float:
        return 1.0 / (self.hi - self.lo)

    def sup_on_tail(self, eps: float) -> float:
        eps = validate_threshold(eps)
        if eps >= SQRT3:
            return 0.0
        return 1.0 / (self.hi - self.lo)

    def breakpoints(self) -> list[float]:
        return [self.lo, self.hi]

    def window(self) -> tuple[float, float]:
        return self.lo, self.hi


class ExponentialOracle(ContinuousOracle):
    """Exponential with rate lambda: mean = sigma = 1/lambda, support [0, inf)."""

    PARAMS = ("rate",)

    def __init__(self, rate: float = 1.0):
        if rate <= 0:
            raise ValueError("rate must be positive")
        super().__init__("exponential", {"rate": rate}, stats.expon(scale=1.0 / rate))
        self.rate = rate

    def exact_tail(self, eps: float) -> float:
        # standardized Y = rate * X - 1 lives on [-1, inf)
        eps = validate_threshold(eps)
        right = math.exp(-(1.0 + eps))
        left = -math.expm1(-(1.0 - eps)) if eps < 1.0 else 0.0
        return min(1.0, right + left)

    def sup_density(self) -> float:
        return self.rate

    def sup_on_tail(self, eps: float) -> float:
        eps = validate_threshold(eps)
        if eps < 1.0:
            # left tail reaches x = 0 where the density peaks
            return self.rate
        return self.rate * math.exp(-(1.0 + eps))

    def breakpoints(self) -> list[float]:
        return [0.0]


def exact_tail_1d(oracle: DistributionOracle, eps: float) -> float:
    """Pr((X - mu)^2 / sigma^2 >= eps^2) for a 1-D continuous oracle."""
    oracle.require("exact_tail", OracleKind.CONTINUOUS_1D)
    return oracle.exact_tail(eps)


def sup_on_tail_1d(oracle: DistributionOracle, eps: float) -> float:
    oracle.require("exact_sup", OracleKind.CONTINUOUS_1D)
    if not isinstance(oracle, ContinuousOracle):
        raise CapabilityError(f"{oracle.name} has no tail supremum")
    return oracle.sup_on_tail(eps)
