"""Product laws: Lambda and Lambda* are coordinate-wise sums."""

import math
from dataclasses import dataclass

import numpy as np

from ldp_lab.core.exceptions import ArgumentError
from ldp_lab.measures.laws import ScalarLaw
from ldp_lab.measures.transforms import legendre_array, log_laplace_array


@dataclass(frozen=True)
class ProductLaw:
    components: tuple[ScalarLaw, ...]

    @classmethod
    def iid(cls, law: ScalarLaw, n: int) -> "ProductLaw":
        if n < 1:
            raise ArgumentError(f"dimension must be >= 1, got {n}")
        return cls(tuple([law] * n))

    @property
    def n(self) -> int:
        return len(self.components)

    def as_vector(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n,):
            raise ArgumentError(f"expected a vector of length {self.n}, got shape {x.shape}")
        return x

    def log_laplace(self, lam) -> float:
        lam = self.as_vector(lam)
        return math.fsum(float(log_laplace_array(c, v)) for c, v in zip(self.components, lam))

    def sample(self, rng: np.random.Generator) -> np.ndarray:
        return np.array([float(c.sample(rng)) for c in self.components])


def product_legendre(law: ProductLaw, x) -> float:
    """Sum of coordinate Legendre transforms; +inf if any coordinate is."""
    x = law.as_vector(x)
    terms = [float(legendre_array(c, v)) for c, v in zip(law.components, x)]
    if any(math.isinf(t) for t in terms):
        return math.inf
    return math.fsum(terms)
