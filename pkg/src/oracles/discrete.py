"""Discrete zoo: Poisson, binomial, geometric and explicit finite pmfs."""

import logging
import math
from typing import Mapping

import numpy as np
from scipy import stats

from ..bounds.discrete import DiscreteSpec, tail_probability
from .base import Capabilities, DistributionOracle, OracleKind, validate_threshold

logger = logging.getLogger(__name__)


class DiscreteOracle(DistributionOracle):
    """
    Integer-valued oracle wrapping a DiscreteSpec.

    exact_tail is the symmetric set {(k - mu - 1/2)^2 >= eps^2 sigma_f^2};
    exact_inner_tail is D'_eps = {k <= floor(x_L) - 1 or k >= ceil(x_R)}.
    """

    kind = OracleKind.DISCRETE

    def __init__(self, name: str, params: dict, spec: DiscreteSpec, dist=None):
        super().__init__(
            name,
            params,
            Capabilities(exact_entropy=False, sampleable=dist is not None),
        )
        self.spec = spec
        self.dist = dist
        self.mean = spec.mean
        self.variance = spec.variance

    def exact_tail(self, eps: float) -> float:
        return tail_probability(eps, self.spec, kind="corollary")

    def exact_inner_tail(self, eps: float) -> float:
        return tail_probability(eps, self.spec, kind="theorem")

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        self.require("sampleable")
        return self.dist.rvs(size=n, random_state=rng)

    def in_tail(self, samples: np.ndarray, eps: float) -> np.ndarray:
        eps = validate_threshold(eps)
        sigma_f = math.sqrt(self.variance + 1.0 / 12.0)
        return (samples - self.mean - 0.5) ** 2 >= (eps * sigma_f) ** 2


class PoissonOracle(DiscreteOracle):
    PARAMS = ("lam",)

    def __init__(self, lam: float = 4.0):
        if lam <= 0:
            raise ValueError("lambda must be positive")
        dist = stats.poisson(lam)
        spec = DiscreteSpec(
            pmf=dist.pmf,
            mean=lam,
            variance=lam,
            support_lo=0,
            support_hi=None,
            mode=int(math.floor(lam)),
            log_concave=True,
            name=f"poisson(lam={lam})",
        )
        super().__init__("poisson", {"lam": lam}, spec, dist)


class BinomialOracle(DiscreteOracle):
    PARAMS = ("n", "p")

    def __init__(self, n: int = 20, p: float = 0.5):
        if int(n) != n or n < 1:
            raise ValueError("n must be a positive integer")
        if not 0 < p < 1:
            raise ValueError("p must lie strictly between 0 and 1")
        n = int(n)
        dist = stats.binom(n, p)
        spec = DiscreteSpec(
            pmf=dist.pmf,
            mean=n * p,
            variance=n * p * (1 - p),
            support_lo=0,
            support_hi=n,
            mode=min(n, int(math.floor((n + 1) * p))),
            log_concave=True,
            name=f"binomial(n={n}, p={p})",
        )
        super().__init__("binomial", {"n": n, "p": p}, spec, dist)


class GeometricOracle(DiscreteOracle):
    """Number of trials to the first success: support {1, 2, ...}, mode 1."""

    PARAMS = ("p",)

    def __init__(self, p: float = 0.5):
        if not 0 < p < 1:
            raise ValueError("p must lie strictly between 0 and 1")
        dist = stats.geom(p)
        spec = DiscreteSpec(
            pmf=dist.pmf,
            mean=1.0 / p,
            variance=(1.0 - p) / p**2,
            support_lo=1,
            support_hi=None,
            mode=1,
            log_concave=True,
            name=f"geometric(p={p})",
        )
        super().__init__("geometric", {"p": p}, spec, dist)


class MappingOracle(DiscreteOracle):
    PARAMS = ("pmf",)

    def __init__(self, pmf: Mapping[int, float]):
        mapping = {int(k): float(v) for k, v in pmf.items()}
        spec = DiscreteSpec.from_mapping(mapping)
        ks = sorted(mapping)
        dist = stats.rv_discrete(values=(ks, [mapping[k] for k in ks]))
        super().__init__("mapping", {"pmf": mapping}, spec, dist)
