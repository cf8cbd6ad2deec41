"""Scalar laws with closed-form log-Laplace transforms."""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ldp_lab.core.exceptions import ArgumentError, DomainError


class LawFamily(str, Enum):
    RADEMACHER = "rademacher"
    BERNOULLI = "bernoulli"
    UNIFORM_SYM = "uniform"
    GAUSSIAN = "gaussian"


@dataclass(frozen=True)
class ScalarLaw:
    """A one-dimensional law from one of the four closed-form families.

    ``param`` is p for Bernoulli, the half-width a for UniformSym, the
    variance s2 for Gaussian and unused for Rademacher.
    """

    family: LawFamily
    param: float = 0.0

    def __post_init__(self):
        p = self.param
        if not math.isfinite(p):
            raise DomainError(f"{self.family.value}: parameter must be finite, got {p}")
        if self.family is LawFamily.BERNOULLI and not 0.0 < p < 1.0:
            raise DomainError(f"bernoulli requires 0 < p < 1, got {p}")
        if self.family is LawFamily.UNIFORM_SYM and p <= 0.0:
            raise DomainError(f"uniform requires a > 0, got {p}")
        if self.family is LawFamily.GAUSSIAN and p <= 0.0:
            raise DomainError(f"gaussian requires s2 > 0, got {p}")

    @classmethod
    def rademacher(cls) -> "ScalarLaw":
        return cls(LawFamily.RADEMACHER, 0.0)

    @classmethod
    def bernoulli(cls, p: float) -> "ScalarLaw":
        return cls(LawFamily.BERNOULLI, float(p))

    @classmethod
    def uniform_sym(cls, a: float) -> "ScalarLaw":
        return cls(LawFamily.UNIFORM_SYM, float(a))

    @classmethod
    def gaussian(cls, s2: float = 1.0) -> "ScalarLaw":
        return cls(LawFamily.GAUSSIAN, float(s2))

    @classmethod
    def parse(cls, text: str) -> "ScalarLaw":
        """Parse ``family[:param]``, e.g. ``bernoulli:0.1`` or ``rademacher``."""
        name, _, raw = text.strip().lower().partition(":")
        try:
            family = LawFamily(name)
        except ValueError:
            raise ArgumentError(
                f"unknown law {name!r}; expected one of {[f.value for f in LawFamily]}"
            ) from None
        if family is LawFamily.RADEMACHER:
            return cls.rademacher()
        if not raw:
            defaults = {LawFamily.BERNOULLI: 0.5, LawFamily.UNIFORM_SYM: math.sqrt(3.0), LawFamily.GAUSSIAN: 1.0}
            return cls(family, defaults[family])
        try:
            value = float(raw)
        except ValueError:
            raise ArgumentError(f"bad law parameter {raw!r}") from None
        return cls(family, value)

    @property
    def name(self) -> str:
        if self.family is LawFamily.RADEMACHER:
            return "rademacher"
        return f"{self.family.value}:{self.param:g}"

    @property
    def support(self) -> tuple[float, float]:
        """Closed convex hull of the support."""
        match self.family:
            case LawFamily.RADEMACHER:
                return -1.0, 1.0
            case LawFamily.BERNOULLI:
                return 0.0, 1.0
            case LawFamily.UNIFORM_SYM:
                return -self.param, self.param
            case LawFamily.GAUSSIAN:
                return -math.inf, math.inf

    @property
    def bounded(self) -> bool:
        return self.family is not LawFamily.GAUSSIAN

    @property
    def mean(self) -> float:
        return self.param if self.family is LawFamily.BERNOULLI else 0.0

    @property
    def variance(self) -> float:
        match self.family:
            case LawFamily.RADEMACHER:
                return 1.0
            case LawFamily.BERNOULLI:
                return self.param * (1.0 - self.param)
            case LawFamily.UNIFORM_SYM:
                return self.param**2 / 3.0
            case LawFamily.GAUSSIAN:
                return self.param

    def sample(self, rng: np.random.Generator, size=None) -> np.ndarray:
        match self.family:
            case LawFamily.RADEMACHER:
                return np.where(rng.random(size) < 0.5, 1.0, -1.0)
            case LawFamily.BERNOULLI:
                return np.where(rng.random(size) < self.param, 1.0, 0.0)
            case LawFamily.UNIFORM_SYM:
                return rng.uniform(-self.param, self.param, size)
            case LawFamily.GAUSSIAN:
                return rng.normal(0.0, math.sqrt(self.param), size)
