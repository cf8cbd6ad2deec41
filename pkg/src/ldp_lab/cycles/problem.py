"""Cycle-count upper-tail problems in G(n, p) and the entropy cost Lambda*_p."""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ldp_lab.core.exceptions import ArgumentError, DomainError
from ldp_lab.linalg.symmetric import SymMatrix
from ldp_lab.measures.transforms import bernoulli_entropy


class Regime(str, Enum):
    DENSE = "dense"
    SPARSE = "sparse"


@dataclass(frozen=True)
class CycleProblem:
    """Upper tail tr(X^d) >= t (np)^d for the adjacency matrix X of G(n, p)."""

    n: int
    p: float
    d: int
    t: float

    def __post_init__(self):
        if self.n < 1:
            raise ArgumentError(f"n must be >= 1, got {self.n}")
        if not 0.0 < self.p < 1.0:
            raise ArgumentError(f"p must lie in (0, 1), got {self.p}")
        if self.d < 3:
            raise ArgumentError(f"cycle length d must be >= 3, got {self.d}")
        if not self.t >= 1.0:
            raise DomainError(f"tail level t must be >= 1, got {self.t}")

    @property
    def np_(self) -> float:
        return self.n * self.p

    @property
    def speed(self) -> float:
        """v_n = n^2 p^2 log(1/p)."""
        return self.n**2 * self.p**2 * math.log(1.0 / self.p)

    @property
    def target_trace(self) -> float:
        return self.t * self.np_**self.d

    @property
    def regime(self) -> Regime:
        return classify_regime(self.n, self.p)


def classify_regime(n: int, p: float) -> Regime:
    """Dense when p sqrt(n) >= 1, sparse otherwise."""
    return Regime.DENSE if p * math.sqrt(n) >= 1.0 else Regime.SPARSE


def check_weighted_graph(y: SymMatrix) -> None:
    if not y.has_zero_diagonal():
        raise ArgumentError("weighted graph must have a zero diagonal")
    entries = y.upper_entries()
    if entries.size and (entries.min() < 0.0 or entries.max() > 1.0):
        raise ArgumentError(
            f"entries must lie in [0, 1], found range [{entries.min():g}, {entries.max():g}]"
        )


def lambda_star_p(y: SymMatrix, p: float) -> float:
    """Lambda*_p(Y) = sum_{i<j} I_p(Y_ij)."""
    if not 0.0 < p < 1.0:
        raise ArgumentError(f"p must lie in (0, 1), got {p}")
    check_weighted_graph(y)
    return math.fsum(np.asarray(bernoulli_entropy(y.upper_entries(), p)))
