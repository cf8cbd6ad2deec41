"""Ising coupling problems on {-1, 1}^n with uniform reference measure."""

import math
from dataclasses import dataclass

import numpy as np

from ldp_lab.core.exceptions import ArgumentError
from ldp_lab.linalg.symmetric import SymMatrix
from ldp_lab.measures.laws import ScalarLaw
from ldp_lab.measures.transforms import legendre_array

RADEMACHER = ScalarLaw.rademacher()


@dataclass(frozen=True)
class IsingProblem:
    """f(sigma) = <sigma, A sigma> for a symmetric coupling A with zero diagonal."""

    coupling: SymMatrix

    def __post_init__(self):
        if not self.coupling.has_zero_diagonal():
            raise ArgumentError("Ising coupling must have an exactly zero diagonal")

    @classmethod
    def from_array(cls, arr) -> "IsingProblem":
        return cls(SymMatrix.from_array(arr))

    @property
    def n(self) -> int:
        return self.coupling.n

    @property
    def a(self) -> np.ndarray:
        return self.coupling.data

    def energy(self, x) -> float:
        x = np.asarray(x, dtype=float)
        return float(x @ self.a @ x)

    def objective(self, x) -> float:
        """Mean-field functional <x, A x> - sum_i Lambda*(x_i)."""
        x = np.asarray(x, dtype=float)
        entropy = math.fsum(legendre_array(RADEMACHER, x))
        return self.energy(x) - entropy

    def scaled(self, c: float) -> "IsingProblem":
        return IsingProblem(self.coupling.scaled(c))
