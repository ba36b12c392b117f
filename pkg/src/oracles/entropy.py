"""Quadrature for differential entropy and moments of 1-D densities."""

import logging
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from scipy.integrate import IntegrationWarning, quad
from scipy.special import entr

from .base import CapabilityError
from .continuous import ContinuousOracle

logger = logging.getLogger(__name__)


DEFAULT_EPSABS = 1e-13
DEFAULT_EPSREL = 1e-12
DEFAULT_LIMIT = 400
DEFAULT_MASS_TOLERANCE = 1e-9


class WindowTooSmallError(ValueError):
    """Integration window misses more probability mass than allowed."""


@dataclass(frozen=True)
class EntropyEstimate:
    value: float  # nats
    abs_error_bound: float


def _resolve(source, window, points):
    if isinstance(source, ContinuousOracle):
        return (
            source.pdf,
            window if window is not None else source.window(),
            source.breakpoints() if points is None else points,
        )
    if callable(source):
        if window is None:
            raise ValueError("a raw pdf needs an integration window")
        return source, window, points or []
    raise CapabilityError(f"cannot integrate {source!r}")


def _quad(fn: Callable[[float], float], window, points: Iterable[float], epsabs, limit) -> tuple[float, float]:
    lo, hi = float(window[0]), float(window[1])
    inner = sorted({float(p) for p in points if lo < p < hi})
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", IntegrationWarning)
        value, err = quad(
            fn,
            lo,
            hi,
            points=inner or None,
            epsabs=epsabs,
            epsrel=DEFAULT_EPSREL,
            limit=max(limit, 2 * len(inner) + 2),
        )
    for w in caught:
        logger.warning(f"quad on [{lo:.6g}, {hi:.6g}]: {w.message}")
    return value, err


def expectation(
    source,
    g: Callable[[float], float],
    window: Optional[Sequence[float]] = None,
    points: Optional[Sequence[float]] = None,
    epsabs: float = DEFAULT_EPSABS,
    limit: int = DEFAULT_LIMIT,
) -> tuple[float, float]:
    """
    Integral of g(x) f(x) over the window.

    Args:
        source: ContinuousOracle or a raw pdf callable
        g: Function of x to average
        window: (lo, hi); defaults to the oracle's window
        points: Breakpoints (kinks, jumps) inside the window

    Returns:
        Tuple of (value, quadrature error estimate)
    """
    pdf, window, points = _resolve(source, window, points)
    return _quad(lambda x: g(x) * float(pdf(x)), window, points, epsabs, limit)


def probability_mass(source, window=None, points=None, epsabs: float = DEFAULT_EPSABS) -> float:
    return expectation(source, lambda x: 1.0, window, points, epsabs)[0]


def differential_entropy(
    source,
    window: Optional[Sequence[float]] = None,
    points: Optional[Sequence[float]] = None,
    epsabs: float = DEFAULT_EPSABS,
    limit: int = DEFAULT_LIMIT,
    mass_tolerance: float = DEFAULT_MASS_TOLERANCE,
) -> EntropyEstimate:
    """
    h(f) = -int f ln f by adaptive quadrature, with 0 ln 0 = 0.

    The error bound is the larger of quad's own estimate and the change
    against a run with half the subdivision budget.

    Raises:
        WindowTooSmallError: If the window misses more than mass_tolerance
    """
    pdf, window, points = _resolve(source, window, points)
    mass, _ = _quad(lambda x: float(pdf(x)), window, points, epsabs, limit)
    if abs(1.0 - mass) > mass_tolerance:
        raise WindowTooSmallError(
            f"window [{window[0]:.6g}, {window[1]:.6g}] holds mass {mass:.12g}; deficit exceeds {mass_tolerance:g}"
        )

    def integrand(x):
        return float(entr(pdf(x)))

    value, err = _quad(integrand, window, points, epsabs, limit)
    coarse, _ = _quad(integrand, window, points, epsabs, limit // 2)
    return EntropyEstimate(value=value, abs_error_bound=max(err, abs(value - coarse)))


def product_entropy(components: Sequence[ContinuousOracle], **kwargs) -> EntropyEstimate:
    """Entropy of independent components: the sum of their entropies."""
    estimates = [differential_entropy(c, **kwargs) for c in components]
    return EntropyEstimate(
        value=sum(e.value for e in estimates),
        abs_error_bound=sum(e.abs_error_bound for e in estimates),
    )


def multivariate_entropy(oracle, **kwargs) -> EntropyEstimate:
    """Quadrature over independent marginals when available, else the closed form."""
    components = oracle.components()
    if components is None:
        oracle.require("exact_entropy")
        return EntropyEstimate(value=oracle.entropy(), abs_error_bound=0.0)
    return product_entropy(components, **kwargs)
