"""Improved Chebyshev bounds for integer-valued distributions.

An integer pmf p is embedded as the piecewise-constant density f(x) = p(floor(x)),
which has mean mu + 1/2 and variance sigma^2 + 1/12. The continuous theorem then
bounds the discrete tail sets defined below.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

import numpy as np

from .core import (
    BoundDomainError,
    ZeroSupremumError,
    clamp_probability,
    solve_alpha,
    validate_epsilon,
)

logger = logging.getLogger(__name__)


DEFAULT_TAIL_TOLERANCE = 1e-14
NORMALIZATION_TOLERANCE = 1e-12
MOMENT_TOLERANCE = 1e-9

# Chebyshev-remainder windows beyond this many points are refused
MAX_WINDOW_POINTS = 50_000_000


class DiscreteSpecError(ValueError):
    """pmf is not normalised or disagrees with the declared moments."""


class TailStructureError(ValueError):
    """Unbounded support without the structure needed to search it finitely."""


class _MappingPmf:
    """Vectorised pmf over an explicit {k: p(k)} mapping; zero elsewhere."""

    def __init__(self, mapping: Mapping[int, float]):
        self.mapping = {int(k): float(v) for k, v in mapping.items()}

    def __call__(self, k):
        ks = np.asarray(k)
        return np.vectorize(lambda j: self.mapping.get(int(j), 0.0), otypes=[float])(ks)

    def __repr__(self):
        return f"_MappingPmf({self.mapping})"


@dataclass(frozen=True)
class DiscreteSpec:
    """
    Integer pmf with its mean and variance.

    pmf must accept integer numpy arrays and return probabilities elementwise.
    support_lo/support_hi of None mean unbounded on that side. mode declares the
    pmf unimodal with that mode; log_concave declares nonincreasing ratios
    p(k+1)/p(k), which certifies tail truncation.
    """

    pmf: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    mean: float
    variance: float
    support_lo: Optional[int] = None
    support_hi: Optional[int] = None
    mode: Optional[int] = None
    log_concave: bool = False
    name: str = "pmf"

    def __post_init__(self):
        if not math.isfinite(self.mean):
            raise DiscreteSpecError("mean must be finite")
        if not math.isfinite(self.variance) or self.variance <= 0:
            raise DiscreteSpecError("variance must be positive")
        if (
            self.support_lo is not None
            and self.support_hi is not None
            and self.support_lo > self.support_hi
        ):
            raise DiscreteSpecError(f"empty support [{self.support_lo}, {self.support_hi}]")
        if self.mode is not None and not self.in_support(self.mode):
            raise DiscreteSpecError(f"mode {self.mode} outside the support")
        self._check_moments()

    @classmethod
    def from_mapping(
        cls,
        mapping: Mapping[int, float],
        mean: Optional[float] = None,
        variance: Optional[float] = None,
        name: str = "mapping",
    ) -> "DiscreteSpec":
        """
        Build a finite-support spec from {k: p(k)}.

        Missing mean/variance are computed from the mapping; supplied ones are
        checked against it.
        """
        if not mapping:
            raise DiscreteSpecError("pmf mapping is empty")
        ks = np.array(sorted(int(k) for k in mapping), dtype=np.int64)
        ps = np.array([float(mapping[k]) for k in ks])
        if np.any(ps < 0):
            raise DiscreteSpecError("pmf values must be nonnegative")
        if mean is None:
            mean = math.fsum(ks * ps)
        if variance is None:
            variance = math.fsum((ks - mean) ** 2 * ps)
        return cls(
            pmf=_MappingPmf(dict(zip(ks.tolist(), ps.tolist()))),
            mean=mean,
            variance=variance,
            support_lo=int(ks[0]),
            support_hi=int(ks[-1]),
            name=name,
        )

    @property
    def bounded(self) -> bool:
        return self.support_lo is not None and self.support_hi is not None

    def in_support(self, k: int) -> bool:
        if self.support_lo is not None and k < self.support_lo:
            return False
        if self.support_hi is not None and k > self.support_hi:
            return False
        return True

    def p(self, k: int) -> float:
        """p(k), zero outside the declared support."""
        if not self.in_support(k):
            return 0.0
        return float(np.asarray(self.pmf(np.array([k], dtype=np.int64)))[0])

    def support_window(self, tolerance: float = DEFAULT_TAIL_TOLERANCE) -> tuple[int, int]:
        """
        Finite [lo, hi] whose complement carries at most `tolerance` mass.

        Log-concave pmfs with a declared mode use the ratio certificate
        sum_{j>hi} p(j) <= p(hi+1) / (1 - rho), rho = p(hi+1)/p(hi) < 1. Other
        unbounded pmfs fall back to the Chebyshev remainder sigma^2 / t^2.
        """
        if self.bounded:
            return self.support_lo, self.support_hi

        if self.log_concave and self.mode is not None:
            lo = self.support_lo if self.support_lo is not None else self._certified_edge(-1, tolerance / 2)
            hi = self.support_hi if self.support_hi is not None else self._certified_edge(+1, tolerance / 2)
            return lo, hi

        reach = math.sqrt(self.variance / tolerance)
        lo = math.floor(self.mean - reach)
        hi = math.ceil(self.mean + reach)
        if self.support_lo is not None:
            lo = max(lo, self.support_lo)
        if self.support_hi is not None:
            hi = min(hi, self.support_hi)
        if hi - lo + 1 > MAX_WINDOW_POINTS:
            raise TailStructureError(
                f"{self.name}: Chebyshev truncation window has {hi - lo + 1} points; "
                f"declare mode and log_concave for a tighter certificate"
            )
        return lo, hi

    def _certified_edge(self, direction: int, tolerance: float) -> int:
        step = max(16, int(4 * math.sqrt(self.variance)) + 1)
        edge = self.mode + direction * step
        while True:
            p_edge, p_next = np.asarray(self.pmf(np.array([edge, edge + direction], dtype=np.int64)), dtype=float)
            if p_next == 0.0:
                return edge
            if p_edge > 0.0:
                rho = p_next / p_edge
                if rho < 1.0 and p_next / (1.0 - rho) <= tolerance:
                    return edge
            edge += direction * step
            step *= 2

    def window_values(self, tolerance: float = DEFAULT_TAIL_TOLERANCE) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = self.support_window(tolerance)
        ks = np.arange(lo, hi + 1, dtype=np.int64)
        return ks, np.asarray(self.pmf(ks), dtype=float)

    def _check_moments(self):
        ks, ps = self.window_values(NORMALIZATION_TOLERANCE)
        if np.any(ps < 0):
            raise DiscreteSpecError(f"{self.name}: negative pmf values")
        total = math.fsum(ps)
        if abs(total - 1.0) > NORMALIZATION_TOLERANCE:
            raise DiscreteSpecError(f"{self.name}: pmf sums to {total!r}, not 1")
        mean = math.fsum(ks * ps)
        variance = math.fsum((ks - mean) ** 2 * ps)
        if not math.isclose(mean, self.mean, rel_tol=MOMENT_TOLERANCE, abs_tol=MOMENT_TOLERANCE):
            raise DiscreteSpecError(f"{self.name}: declared mean {self.mean} but pmf gives {mean}")
        if not math.isclose(variance, self.variance, rel_tol=MOMENT_TOLERANCE, abs_tol=MOMENT_TOLERANCE):
            raise DiscreteSpecError(
                f"{self.name}: declared variance {self.variance} but pmf gives {variance}"
            )


@dataclass(frozen=True)
class DiscreteTailGeometry:
    sigma_f: float
    center: float  # mu + 1/2
    radius: float  # eps * sigma_f
    x_L: float
    x_R: float
    d_eps_lo: int  # floor(x_L) - 1, upper edge of the left tail of D_eps
    d_eps_hi: int  # ceil(x_R), lower edge of the right tail
    m_eps_lo: int  # floor(x_L)
    m_eps_hi: int  # floor(x_R)


@dataclass(frozen=True)
class DiscreteReport:
    epsilon: float
    m_eps: float
    alpha: Optional[float]
    theorem_bound: float
    corollary_bound: float
    p_floor_x_L: float
    chebyshev: float
    clamped: bool

    def to_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "m_eps": self.m_eps,
            "alpha": self.alpha,
            "theorem_bound": self.theorem_bound,
            "corollary_bound": self.corollary_bound,
            "p_floor_x_L": self.p_floor_x_L,
            "chebyshev": self.chebyshev,
            "clamped": self.clamped,
        }


def embed_variance(spec: DiscreteSpec) -> float:
    """Variance of the embedded density f(x) = p(floor(x)): sigma^2 + 1/12."""
    return spec.variance + 1.0 / 12.0


def embedded_pdf(spec: DiscreteSpec) -> Callable[[float], float]:
    def f(x):
        k = int(math.floor(x))
        return spec.p(k)

    return f


def tail_edges(eps: float, mean: float, variance: float) -> DiscreteTailGeometry:
    """Tail-set edges for an integer variable with the given mean and variance."""
    # eps = 0 is allowed here: the tail set is then the whole support
    eps = float(eps)
    if not math.isfinite(eps) or eps < 0:
        raise BoundDomainError("epsilon must be nonnegative")
    sigma_f = math.sqrt(variance + 1.0 / 12.0)
    center = mean + 0.5
    radius = eps * sigma_f
    x_L = center - radius
    x_R = center + radius
    floor_x_L = math.floor(x_L)
    return DiscreteTailGeometry(
        sigma_f=sigma_f,
        center=center,
        radius=radius,
        x_L=x_L,
        x_R=x_R,
        d_eps_lo=floor_x_L - 1,
        d_eps_hi=math.ceil(x_R),
        m_eps_lo=floor_x_L,
        m_eps_hi=math.floor(x_R),
    )


def tail_geometry(eps: float, spec: DiscreteSpec) -> DiscreteTailGeometry:
    return tail_edges(eps, spec.mean, spec.variance)


def theorem_tail_mask(ks: np.ndarray, geometry: DiscreteTailGeometry) -> np.ndarray:
    """Membership in D'_eps = {k <= floor(x_L) - 1 or k >= ceil(x_R)}."""
    return (ks <= geometry.d_eps_lo) | (ks >= geometry.d_eps_hi)


def symmetric_tail_mask(ks: np.ndarray, geometry: DiscreteTailGeometry) -> np.ndarray:
    """Membership in {(k - mu - 1/2)^2 >= eps^2 sigma_f^2}, evaluated as written."""
    return (ks - geometry.center) ** 2 >= geometry.radius**2


def edge_tail_mask(ks: np.ndarray, geometry: DiscreteTailGeometry) -> np.ndarray:
    """D'_eps plus the single point floor(x_L); equals the symmetric set."""
    return theorem_tail_mask(ks, geometry) | (ks == geometry.m_eps_lo)


def discrete_m_eps(eps: float, spec: DiscreteSpec) -> float:
    """
    sigma_f * max of p(k) over M_eps = {k <= floor(x_L)} U {k >= floor(x_R)}.

    Finite supports without a declared mode are scanned in full. A declared
    mode pins each side's maximum at the edge closest to the mode.

    Raises:
        TailStructureError: If the support is unbounded and no mode is declared
    """
    geometry = tail_geometry(eps, spec)
    a, b = geometry.m_eps_lo, geometry.m_eps_hi

    if spec.mode is None:
        if not spec.bounded:
            raise TailStructureError(
                f"{spec.name}: max over M_eps on an unbounded support needs a declared mode"
            )
        ks = np.arange(spec.support_lo, spec.support_hi + 1, dtype=np.int64)
        in_m = (ks <= a) | (ks >= b)
        peak = float(np.max(np.asarray(spec.pmf(ks[in_m])), initial=0.0))
        return geometry.sigma_f * peak

    candidates = []
    if spec.support_lo is None or a >= spec.support_lo:
        candidates.append(min(a, spec.mode))
    if spec.support_hi is None or b <= spec.support_hi:
        candidates.append(max(b, spec.mode))
    if spec.bounded:
        # support edges can only matter if they fall inside M_eps
        candidates.extend(k for k in (spec.support_lo, spec.support_hi) if k <= a or k >= b)
    peak = max((spec.p(k) for k in candidates), default=0.0)
    return geometry.sigma_f * peak


def _theorem_parts(eps: float, spec: DiscreteSpec, **solver_options) -> tuple[float, Optional[float], float]:
    m_eps = discrete_m_eps(eps, spec)
    try:
        alpha = solve_alpha(eps, m_eps, **solver_options)
    except ZeroSupremumError:
        return 0.0, None, 0.0
    return alpha * m_eps, alpha, m_eps


def bound_discrete_theorem(eps: float, spec: DiscreteSpec, **solver_options) -> float:
    """Pr(D'_eps) <= alpha * m_eps, clamped to [0, 1]."""
    raw, _, _ = _theorem_parts(eps, spec, **solver_options)
    return clamp_probability(raw)[0]


def bound_discrete_corollary(eps: float, spec: DiscreteSpec, **solver_options) -> float:
    """Pr(symmetric D_eps) <= alpha * m_eps + p(floor(x_L)), clamped to [0, 1]."""
    raw, _, _ = _theorem_parts(eps, spec, **solver_options)
    geometry = tail_geometry(eps, spec)
    return clamp_probability(raw + spec.p(geometry.m_eps_lo))[0]


def build_discrete_report(eps: float, spec: DiscreteSpec, **solver_options) -> DiscreteReport:
    eps = validate_epsilon(eps)
    raw, alpha, m_eps = _theorem_parts(eps, spec, **solver_options)
    geometry = tail_geometry(eps, spec)
    p_edge = spec.p(geometry.m_eps_lo)
    theorem, theorem_clamped = clamp_probability(raw)
    corollary, corollary_clamped = clamp_probability(raw + p_edge)
    if theorem_clamped or corollary_clamped:
        logger.debug(f"{spec.name}: discrete bound capped at 1 (eps={eps})")
    return DiscreteReport(
        epsilon=eps,
        m_eps=m_eps,
        alpha=alpha,
        theorem_bound=theorem,
        corollary_bound=corollary,
        p_floor_x_L=p_edge,
        chebyshev=1.0 / (eps * eps),
        clamped=theorem_clamped or corollary_clamped,
    )


def tail_probability(
    eps: float,
    spec: DiscreteSpec,
    kind: str = "corollary",
    tolerance: float = DEFAULT_TAIL_TOLERANCE,
) -> float:
    """
    Exact Pr(D_eps) by certified summation over the support window.

    Args:
        eps: Deviation threshold
        spec: Discrete distribution
        kind: "corollary" for the symmetric set, "theorem" for D'_eps
        tolerance: Mass allowed outside the summation window

    Returns:
        Tail probability, accurate to `tolerance`
    """
    geometry = tail_geometry(eps, spec)
    ks, ps = spec.window_values(tolerance)
    if kind == "corollary":
        mask = symmetric_tail_mask(ks, geometry)
    elif kind == "theorem":
        mask = theorem_tail_mask(ks, geometry)
    else:
        raise BoundDomainError(f"unknown tail set {kind!r}")
    return min(1.0, math.fsum(ps[mask]))
