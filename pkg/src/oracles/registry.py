"""Oracle lookup by name, for the CLI and sweep configs."""

import logging
from typing import Optional

from .base import CapabilityError, DistributionOracle
from .continuous import ExponentialOracle, LaplaceOracle, NormalOracle, UniformOracle
from .discrete import BinomialOracle, GeometricOracle, MappingOracle, PoissonOracle
from .multivariate import BivariateUniformOracle, MultiNormalOracle

logger = logging.getLogger(__name__)


ORACLES: dict[str, type[DistributionOracle]] = {
    "normal": NormalOracle,
    "laplace": LaplaceOracle,
    "uniform": UniformOracle,
    "exponential": ExponentialOracle,
    "mvnormal": MultiNormalOracle,
    "bivariate_uniform": BivariateUniformOracle,
    "poisson": PoissonOracle,
    "binomial": BinomialOracle,
    "geometric": GeometricOracle,
    "mapping": MappingOracle,
}


def build_oracle(name: str, params: Optional[dict] = None) -> DistributionOracle:
    """
    Instantiate a zoo member.

    Args:
        name: Key of ORACLES
        params: Keyword parameters; unknown keys are rejected

    Returns:
        The oracle

    Raises:
        CapabilityError: Unknown name or parameter
        ValueError: Parameter values out of range
    """
    params = dict(params or {})
    try:
        cls = ORACLES[name]
    except KeyError:
        raise CapabilityError(
            f"unknown oracle {name!r}; choose from {', '.join(sorted(ORACLES))}"
        ) from None

    unknown = sorted(set(params) - set(cls.PARAMS))
    if unknown:
        raise CapabilityError(f"{name} does not take parameter(s): {', '.join(unknown)}")

    oracle = cls(**params)
    logger.info(f"Built oracle {oracle!r}")
    return oracle
