import logging
from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass
from enum import Enum

import numpy as np

logger = logging.getLogger(__name__)


class OracleKind(str, Enum):
    CONTINUOUS_1D = "continuous-1d"
    CONTINUOUS_MULTI = "continuous-multi"
    DISCRETE = "discrete"


@dataclass(frozen=True)
class Capabilities:
    exact_tail: bool = True
    exact_sup: bool = True
    exact_entropy: bool = True
    sampleable: bool = True


class CapabilityError(ValueError):
    """Oracle lacks the capability or kind an operation needs."""


def validate_threshold(eps: float) -> float:
    # Tail sets are defined at eps = 0 (the whole space), unlike the bounds
    eps = float(eps)
    if not np.isfinite(eps) or eps < 0:
        raise ValueError("epsilon must be nonnegative")
    return eps


class DistributionOracle(ABC):
    """Analytic distribution with exact tails on D_eps and a sampler."""

    kind: OracleKind
    PARAMS: tuple[str, ...] = ()

    def __init__(self, name: str, params: dict, capabilities: Capabilities = Capabilities()):
        self.name = name
        self.params = dict(params)
        self.capabilities = capabilities

    def require(self, capability: str, kind: OracleKind = None):
        """Raise CapabilityError unless the oracle has `capability` (and `kind`)."""
        if kind is not None and self.kind != kind:
            raise CapabilityError(f"{self.name} is {self.kind.value}, need {kind.value}")
        if not getattr(self.capabilities, capability):
            raise CapabilityError(f"{self.name} does not provide {capability}")

    @abstractmethod
    def exact_tail(self, eps: float) -> float:
        """Pr(D_eps) in closed form."""
        raise NotImplementedError("Subclass must implement exact_tail()")

    @abstractmethod
    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        raise NotImplementedError("Subclass must implement sample()")

    @abstractmethod
    def in_tail(self, samples: np.ndarray, eps: float) -> np.ndarray:
        """Boolean mask of samples lying in D_eps."""
        raise NotImplementedError("Subclass must implement in_tail()")

    def describe(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind.value,
            "params": self.params,
            "capabilities": asdict(self.capabilities),
        }

    def __repr__(self):
        params = ", ".join(f"{k}={v!r}" for k, v in self.params.items())
        return f"{self.__class__.__name__}({params})"
