"""Multivariate zoo: normal with any covariance, and the bivariate uniform square."""

import logging
import math
from typing import Optional, Sequence

import numpy as np
from scipy import stats

from ..bounds.core import MomentSpecMulti
from .base import DistributionOracle, OracleKind, validate_threshold
from .continuous import SQRT3, NormalOracle, UniformOracle

logger = logging.getLogger(__name__)


def exact_tail_multi_normal(dim: int, eps: float) -> float:
    """
    1 - F_chi2(eps^2; dim): the Mahalanobis tail of any dim-variate normal.

    The quadratic form (X - mu)^T Sigma^-1 (X - mu) is chi-squared with dim
    degrees of freedom whatever Sigma is; for dim = 2 this is exp(-eps^2 / 2).
    """
    if int(dim) != dim or dim < 1:
        raise ValueError("dimension must be a positive integer")
    eps = validate_threshold(eps)
    return float(stats.chi2.sf(eps * eps, dim))


class MultiNormalOracle(DistributionOracle):
    kind = OracleKind.CONTINUOUS_MULTI
    PARAMS = ("dim", "mean", "cov")

    def __init__(
        self,
        dim: int = 2,
        mean: Optional[Sequence[float]] = None,
        cov: Optional[Sequence[Sequence[float]]] = None,
    ):
        mean = np.zeros(dim) if mean is None else np.asarray(mean, dtype=float)
        cov = np.eye(dim) if cov is None else np.asarray(cov, dtype=float)
        if mean.shape != (dim,) or cov.shape != (dim, dim):
            raise ValueError(f"mean/cov shapes {mean.shape}/{cov.shape} do not match dim={dim}")
        sign, logdet = np.linalg.slogdet(cov)
        if sign <= 0:
            raise ValueError("covariance must be positive definite")
        super().__init__(
            "mvnormal",
            {"dim": dim, "mean": mean.tolist(), "cov": cov.tolist()},
        )
        self.dim = dim
        self.mean = mean
        self.cov = cov
        self.cov_det = math.exp(logdet)
        self.dist = stats.multivariate_normal(mean=mean, cov=cov)
        self._cholesky = np.linalg.cholesky(cov)

    @property
    def is_diagonal(self) -> bool:
        return bool(np.all(self.cov == np.diag(np.diag(self.cov))))

    def exact_tail(self, eps: float) -> float:
        return exact_tail_multi_normal(self.dim, eps)

    def sup_on_tail(self, eps: float) -> float:
        """Density on the ellipsoid boundary, where it peaks over D_eps."""
        eps = validate_threshold(eps)
        return math.exp(-eps * eps / 2.0) / math.sqrt((2.0 * math.pi) ** self.dim * self.cov_det)

    def sup_density(self) -> float:
        return self.sup_on_tail(0.0)

    def moment_spec(self, eps: float) -> MomentSpecMulti:
        return MomentSpecMulti(dim=self.dim, cov_det=self.cov_det, sup_density_on_tail=self.sup_on_tail(eps))

    def entropy(self) -> float:
        return 0.5 * math.log((2.0 * math.pi * math.e) ** self.dim * self.cov_det)

    def components(self) -> Optional[list[NormalOracle]]:
        """Independent 1-D marginals when Sigma is diagonal, else None."""
        if not self.is_diagonal:
            return None
        return [
            NormalOracle(mu=float(m), sigma=math.sqrt(float(v)))
            for m, v in zip(self.mean, np.diag(self.cov))
        ]

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return self.dist.rvs(size=n, random_state=rng).reshape(n, self.dim)

    def in_tail(self, samples: np.ndarray, eps: float) -> np.ndarray:
        centered = (samples - self.mean).T
        whitened = np.linalg.solve(self._cholesky, centered)
        return np.sum(whitened**2, axis=0) >= eps * eps


class BivariateUniformOracle(DistributionOracle):
    """
    Product of two independent uniforms.

    In standardized coordinates the support is the square [-sqrt3, sqrt3]^2 and
    D_eps is the outside of the disc of radius eps, so the tail is one minus the
    disc/square overlap area over the square area.
    """

    kind = OracleKind.CONTINUOUS_MULTI
    PARAMS = ("lo", "hi")

    def __init__(self, lo: Sequence[float] = (-SQRT3, -SQRT3), hi: Sequence[float] = (SQRT3, SQRT3)):
        lo = np.asarray(lo, dtype=float)
        hi = np.asarray(hi, dtype=float)
        if lo.shape != (2,) or hi.shape != (2,) or np.any(hi <= lo):
            raise ValueError("bivariate uniform needs lo < hi in both coordinates")
        super().__init__("bivariate_uniform", {"lo": lo.tolist(), "hi": hi.tolist()})
        self.dim = 2
        self.lo = lo
        self.hi = hi
        self.widths = hi - lo
        self.mean = (lo + hi) / 2.0
        self.cov = np.diag(self.widths**2 / 12.0)
        self.cov_det = float(np.prod(self.widths**2 / 12.0))

    def exact_tail(self, eps: float) -> float:
        eps = validate_threshold(eps)
        a = SQRT3
        if eps <= a:
            overlap = math.pi * eps * eps
        elif eps >= a * math.sqrt(2.0):
            return 0.0
        else:
            # disc minus the four circular segments cut off by the square's sides
            segment = eps * eps * math.acos(a / eps) - a * math.sqrt(eps * eps - a * a)
            overlap = math.pi * eps * eps - 4.0 * segment
        return max(0.0, 1.0 - overlap / (4.0 * a * a))

    def sup_on_tail(self, eps: float) -> float:
        eps = validate_threshold(eps)
        if eps >= SQRT3 * math.sqrt(2.0):
            return 0.0
        return self.sup_density()

    def sup_density(self) -> float:
        return float(1.0 / np.prod(self.widths))

    def moment_spec(self, eps: float) -> MomentSpecMulti:
        return MomentSpecMulti(dim=2, cov_det=self.cov_det, sup_density_on_tail=self.sup_on_tail(eps))

    def entropy(self) -> float:
        return float(np.sum(np.log(self.widths)))

    def components(self) -> list[UniformOracle]:
        return [UniformOracle(lo=float(a), hi=float(b)) for a, b in zip(self.lo, self.hi)]

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.uniform(self.lo, self.hi, size=(n, 2))

    def in_tail(self, samples: np.ndarray, eps: float) -> np.ndarray:
        standardized = (samples - self.mean) / np.sqrt(np.diag(self.cov))
        return np.sum(standardized**2, axis=1) >= eps * eps
