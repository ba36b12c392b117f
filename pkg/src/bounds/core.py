"""Closed-form and root-based Chebyshev-type tail bounds.

Everything here is a pure function of moment data and a density supremum on
the tail set. No distribution knowledge lives in this module; the oracles
compute sup_density_on_tail and pass it in.
"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np
from scipy.optimize import root_scalar

logger = logging.getLogger(__name__)


TWO_PI_E = 2.0 * math.pi * math.e

DEFAULT_RESIDUAL_SCALE = 1e-12
DEFAULT_NEWTON_STEPS = 3
DEFAULT_BISECTION_ITERATIONS = 200


class BoundDomainError(ValueError):
    """Input outside the domain of a bound formula."""


class ZeroSupremumError(ArithmeticError):
    """m_eps is zero: the cubic is singular and the bound is defined as 0."""


class RootSolverError(RuntimeError):
    """The cubic root could not be located to the requested residual."""


def validate_epsilon(eps: float) -> float:
    """Return eps as a float, raising BoundDomainError unless it is finite and > 0."""
    eps = float(eps)
    if not math.isfinite(eps) or eps <= 0:
        raise BoundDomainError("epsilon must be positive")
    return eps


def clamp_probability(value: float) -> tuple[float, bool]:
    """Cap a raw bound to [0, 1], reporting whether the cap changed it."""
    if value > 1.0:
        return 1.0, True
    if value < 0.0:
        return 0.0, True
    return value, False


@dataclass(frozen=True)
class MomentSpec1D:
    """Mean, variance and density supremum on the tail set of a 1-D variable."""

    mean: float
    variance: float
    sup_density_on_tail: float

    def __post_init__(self):
        if not math.isfinite(self.mean):
            raise BoundDomainError("mean must be finite")
        if not math.isfinite(self.variance) or self.variance <= 0:
            raise BoundDomainError("variance must be positive")
        if not math.isfinite(self.sup_density_on_tail) or self.sup_density_on_tail < 0:
            raise BoundDomainError("sup density must be nonnegative")

    @property
    def std(self) -> float:
        return math.sqrt(self.variance)

    @property
    def m_eps(self) -> float:
        """Dimensionless sigma * ||f||_inf on the tail set."""
        return self.std * self.sup_density_on_tail


@dataclass(frozen=True)
class MomentSpecMulti:
    """Dimension, covariance determinant and density supremum outside the ellipsoid."""

    dim: int
    cov_det: float
    sup_density_on_tail: float

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 1:
            raise BoundDomainError("dimension must be a positive integer")
        if not math.isfinite(self.cov_det) or self.cov_det <= 0:
            raise BoundDomainError("covariance determinant must be positive")
        if not math.isfinite(self.sup_density_on_tail) or self.sup_density_on_tail < 0:
            raise BoundDomainError("sup density must be nonnegative")

    @property
    def m_eps(self) -> float:
        return math.sqrt(self.cov_det) * self.sup_density_on_tail


@dataclass(frozen=True)
class TheoremBound:
    bound: float  # clamped alpha * m_eps
    raw: float
    alpha: Optional[float]  # None when m_eps == 0
    m_eps: float
    clamped: bool


@dataclass(frozen=True)
class CorollaryBound:
    bound: float  # clamped min of the three terms
    chebyshev: float
    term_sqrt: float
    term_cuberoot: float
    clamped: bool


@dataclass(frozen=True)
class MultivariateBound:
    bound: float
    chen: float  # raw n / eps^2
    term_entropy: float  # raw (2 pi e)^(n/(n+2)) m^(2/(n+2))
    m_eps: float
    dim: int
    clamped: bool


@dataclass(frozen=True)
class BoundReport:
    """Every 1-D bound for one epsilon."""

    epsilon: float
    m_eps: float
    alpha: Optional[float]
    theorem_bound: float
    corollary_bound: float
    chebyshev: float
    term_sqrt: float
    term_cuberoot: float
    one_sided: float
    clamped: bool

    def to_dict(self) -> dict:
        return asdict(self)


def _check_m_eps(m_eps: float) -> float:
    m_eps = float(m_eps)
    if not math.isfinite(m_eps) or m_eps < 0:
        raise BoundDomainError("m_eps must be nonnegative")
    if m_eps == 0:
        raise ZeroSupremumError("zero supremum on the tail set")
    return m_eps


def cubic_coefficients(eps: float, m_eps: float) -> tuple[float, float, float, float]:
    """
    Coefficients (c3, c2, c1, c0) of T(x) = x^3/(2 pi e) + (eps/e) x^2 + eps^2 x - 1/m_eps.

    Args:
        eps: Deviation threshold in standard deviations
        m_eps: Scaled density supremum on the tail set

    Returns:
        Tuple of coefficients, highest degree first

    Raises:
        ZeroSupremumError: If m_eps is zero
        BoundDomainError: If eps <= 0 or m_eps < 0
    """
    eps = validate_epsilon(eps)
    m_eps = _check_m_eps(m_eps)
    return 1.0 / TWO_PI_E, eps / math.e, eps * eps, -1.0 / m_eps


def cubic_residual(x: float, eps: float, m_eps: float) -> float:
    """Evaluate T(x) by Horner's rule."""
    c3, c2, c1, c0 = cubic_coefficients(eps, m_eps)
    return ((c3 * x + c2) * x + c1) * x + c0


def single_term_roots(eps: float, m_eps: float) -> tuple[float, float, float]:
    """
    Roots B1, B2, B3 of eps^2 x = 1/m, (eps/e) x^2 = 1/m and x^3/(2 pi e) = 1/m.

    T is at least each single term minus 1/m_eps, so T is nonnegative at all
    three. B3 stays finite for every positive float m_eps; B1 and B2 may
    overflow to inf and then never attain the minimum.
    """
    eps = validate_epsilon(eps)
    m_eps = _check_m_eps(m_eps)
    return (
        1.0 / (eps * eps) / m_eps,
        math.sqrt(math.e / eps) / math.sqrt(m_eps),
        float(np.cbrt(TWO_PI_E) / np.cbrt(m_eps)),
    )


def solver_bracket(eps: float, m_eps: float) -> float:
    """Upper end B of the root bracket, the smallest single-term root."""
    return min(single_term_roots(eps, m_eps))


def residual_tolerance(m_eps: float, residual_scale: float = DEFAULT_RESIDUAL_SCALE) -> float:
    return residual_scale * max(1.0, 1.0 / m_eps)


def solve_alpha(
    eps: float,
    m_eps: float,
    residual_scale: float = DEFAULT_RESIDUAL_SCALE,
    newton_steps: int = DEFAULT_NEWTON_STEPS,
) -> float:
    """
    Unique positive root alpha of the monotone cubic T.

    T(0) = -1/m_eps < 0 and every coefficient of T' is positive, so the root
    on [0, inf) is unique. With B the smallest single-term root, alpha = B * s
    where s is the root of

        S(s) = m_eps * T(B s) = a3 s^3 + a2 s^2 + a1 s - 1,   a_k = (B / B_k)^k <= 1

    on [0, 1]. No intermediate exceeds 1, so tiny m_eps (far tails, where B^3
    would overflow) is handled. Brent's method finds s; a few Newton steps
    then polish it, each kept only if it stays in [0, 1] and lowers |S|.

    Args:
        eps: Deviation threshold (> 0)
        m_eps: Scaled density supremum (>= 0)
        residual_scale: Residual must satisfy |T(alpha)| <= scale * max(1, 1/m_eps)
        newton_steps: Maximum number of polishing steps

    Returns:
        alpha

    Raises:
        ZeroSupremumError: If m_eps == 0 (the bound alpha * m_eps is 0)
        BoundDomainError: If eps <= 0 or m_eps < 0
        RootSolverError: If the residual tolerance is not met
    """
    eps = validate_epsilon(eps)
    m_eps = _check_m_eps(m_eps)

    b1, b2, b3 = single_term_roots(eps, m_eps)
    upper = min(b1, b2, b3)
    a1 = upper / b1
    a2 = (upper / b2) ** 2
    a3 = (upper / b3) ** 3

    def S(s: float) -> float:
        return ((a3 * s + a2) * s + a1) * s - 1.0

    result = root_scalar(
        S,
        method="brentq",
        bracket=[0.0, 1.0],
        xtol=1e-300,
        rtol=4.0 * np.finfo(float).eps,
        maxiter=500,
    )
    if not result.converged:
        raise RootSolverError(f"brentq did not converge (eps={eps}, m_eps={m_eps}): {result.flag}")

    s = result.root
    residual = S(s)
    for _ in range(newton_steps):
        if residual == 0.0:
            break
        candidate = s - residual / ((3.0 * a3 * s + 2.0 * a2) * s + a1)
        if not (0.0 <= candidate <= 1.0):
            break
        candidate_residual = S(candidate)
        if abs(candidate_residual) >= abs(residual):
            break
        s, residual = candidate, candidate_residual

    alpha = upper * s
    # |T(alpha)| = |S(s)| / m_eps, compared without forming 1/m_eps
    tolerance = residual_scale * max(m_eps, 1.0)
    logger.debug(
        f"solve_alpha eps={eps} m_eps={m_eps:.6g}: bracket=[0, {upper:.6g}], "
        f"iterations={result.iterations}, alpha={alpha:.16g}, scaled residual={residual:.3g}"
    )
    if abs(residual) > tolerance:
        raise RootSolverError(
            f"scaled residual {residual:.3g} exceeds {tolerance:.3g} (eps={eps}, m_eps={m_eps})"
        )
    return alpha


def bisect_alpha(eps: float, m_eps: float, iterations: int = DEFAULT_BISECTION_ITERATIONS) -> float:
    """Plain bisection reference for alpha on [0, 2 pi e (1/m_eps)^(1/3) + 1]."""
    c3, c2, c1, c0 = cubic_coefficients(eps, m_eps)
    lo, hi = 0.0, TWO_PI_E * (1.0 / m_eps) ** (1.0 / 3.0) + 1.0
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if ((c3 * mid + c2) * mid + c1) * mid + c0 < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def cardano_alpha(eps: float, m_eps: float) -> float:
    """
    Closed-form real root of T via Cardano's formula.

    T' has negative discriminant for every eps, so T has exactly one real root
    and the depressed cubic t^3 + p t + q has p > 0. The larger-magnitude cube
    root is taken directly and the other recovered from u * v = -p/3.
    """
    a, b, c, d = cubic_coefficients(eps, m_eps)
    p = (3.0 * a * c - b * b) / (3.0 * a * a)
    q = (2.0 * b**3 - 9.0 * a * b * c + 27.0 * a * a * d) / (27.0 * a**3)
    s = math.sqrt(q * q / 4.0 + p**3 / 27.0)
    u = float(np.cbrt(-q / 2.0 + math.copysign(s, -q)))
    t = u - p / (3.0 * u)
    return t - b / (3.0 * a)


def bound_chebyshev_classical(eps: float) -> float:
    """Pr((X-mu)^2/sigma^2 >= eps^2) <= 1/eps^2, capped at 1."""
    eps = validate_epsilon(eps)
    return min(1.0, 1.0 / (eps * eps))


def bound_chebyshev_one_sided(eps: float) -> float:
    """Cantelli: Pr((X-mu)/sigma >= eps) <= 1/(1+eps^2)."""
    eps = validate_epsilon(eps)
    return 1.0 / (1.0 + eps * eps)


def bound_multivariate_chen(eps: float, dim: int) -> float:
    eps = validate_epsilon(eps)
    if int(dim) != dim or dim < 1:
        raise BoundDomainError("dimension must be a positive integer")
    return min(1.0, dim / (eps * eps))


def bound_1d_theorem(eps: float, spec: MomentSpec1D, **solver_options) -> TheoremBound:
    """
    Improved Chebyshev bound Pr(D_eps) <= alpha * m_eps.

    Args:
        eps: Deviation threshold (> 0)
        spec: Moment data with sup density on the tail set
        **solver_options: Forwarded to solve_alpha

    Returns:
        TheoremBound with the clamped bound and the raw product
    """
    eps = validate_epsilon(eps)
    m_eps = spec.m_eps
    try:
        alpha = solve_alpha(eps, m_eps, **solver_options)
    except ZeroSupremumError:
        return TheoremBound(bound=0.0, raw=0.0, alpha=None, m_eps=0.0, clamped=False)

    raw = alpha * m_eps
    bound, clamped = clamp_probability(raw)
    if clamped:
        logger.debug(f"Theorem bound {raw:.6g} capped at 1 (eps={eps}, m_eps={m_eps:.6g})")
    return TheoremBound(bound=bound, raw=raw, alpha=alpha, m_eps=m_eps, clamped=clamped)


def corollary_terms(eps: float, m_eps: float) -> tuple[float, float, float]:
    """Raw (1/eps^2, (e/eps)^(1/2) m^(1/2), (2 pi e)^(1/3) m^(2/3))."""
    eps = validate_epsilon(eps)
    if not math.isfinite(m_eps) or m_eps < 0:
        raise BoundDomainError("m_eps must be nonnegative")
    chebyshev = 1.0 / (eps * eps)
    term_sqrt = math.sqrt(math.e / eps) * math.sqrt(m_eps)
    term_cuberoot = TWO_PI_E ** (1.0 / 3.0) * m_eps ** (2.0 / 3.0)
    return chebyshev, term_sqrt, term_cuberoot


def bound_1d_corollary(eps: float, spec: MomentSpec1D) -> CorollaryBound:
    chebyshev, term_sqrt, term_cuberoot = corollary_terms(eps, spec.m_eps)
    bound, clamped = clamp_probability(min(chebyshev, term_sqrt, term_cuberoot))
    return CorollaryBound(
        bound=bound,
        chebyshev=chebyshev,
        term_sqrt=term_sqrt,
        term_cuberoot=term_cuberoot,
        clamped=clamped,
    )


def bound_multivariate_improved(eps: float, spec: MomentSpecMulti) -> MultivariateBound:
    """
    Multivariate improved bound min(n/eps^2, (2 pi e)^(n/(n+2)) m_eps^(2/(n+2))).

    m_eps = sqrt(det Sigma) * sup of the density outside the ellipsoid. A zero
    supremum gives a zero bound.
    """
    eps = validate_epsilon(eps)
    n = spec.dim
    m_eps = spec.m_eps
    chen = n / (eps * eps)
    term_entropy = TWO_PI_E ** (n / (n + 2.0)) * m_eps ** (2.0 / (n + 2.0))
    bound, clamped = clamp_probability(min(chen, term_entropy))
    return MultivariateBound(
        bound=bound,
        chen=chen,
        term_entropy=term_entropy,
        m_eps=m_eps,
        dim=n,
        clamped=clamped,
    )


def build_bound_report(eps: float, spec: MomentSpec1D, **solver_options) -> BoundReport:
    """Assemble theorem, corollary and classical comparators for one epsilon."""
    eps = validate_epsilon(eps)
    theorem = bound_1d_theorem(eps, spec, **solver_options)
    corollary = bound_1d_corollary(eps, spec)
    return BoundReport(
        epsilon=eps,
        m_eps=spec.m_eps,
        alpha=theorem.alpha,
        theorem_bound=theorem.bound,
        corollary_bound=corollary.bound,
        chebyshev=corollary.chebyshev,
        term_sqrt=corollary.term_sqrt,
        term_cuberoot=corollary.term_cuberoot,
        one_sided=bound_chebyshev_one_sided(eps),
        clamped=theorem.clamped or corollary.clamped,
    )
