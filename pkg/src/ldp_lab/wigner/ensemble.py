"""Wigner ensembles and their normalized trace moments."""

import logging
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from ldp_lab.core.exceptions import ArgumentError, DomainError
from ldp_lab.core.seeding import STREAM_SAMPLES, derive_rng, ordered_map, ordered_mean
from ldp_lab.linalg.spectral import eigenvalues
from ldp_lab.linalg.symmetric import SymMatrix
from ldp_lab.measures.laws import ScalarLaw

logger = logging.getLogger(__name__)

UNIT_VARIANCE_TOL = 1e-12


@dataclass(frozen=True)
class WignerEnsemble:
    """Symmetric n x n matrices with i.i.d. centered unit-variance off-diagonal entries."""

    n: int
    entry_law: ScalarLaw
    diag_law: ScalarLaw | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ArgumentError(f"n must be >= 1, got {self.n}")
        if abs(self.entry_law.mean) > UNIT_VARIANCE_TOL:
            raise DomainError(f"entry law {self.entry_law.name} is not centered")
        if abs(self.entry_law.variance - 1.0) > UNIT_VARIANCE_TOL:
            raise DomainError(
                f"entry law {self.entry_law.name} has variance {self.entry_law.variance}, need 1"
            )
        if self.diag_law is None:
            object.__setattr__(self, "diag_law", self.entry_law)

    @property
    def free_entries(self) -> int:
        return self.n * (self.n - 1) // 2


def wigner_sample(e: WignerEnsemble, rng: np.random.Generator) -> SymMatrix:
    upper = e.entry_law.sample(rng, e.free_entries)
    diag = e.diag_law.sample(rng, e.n)
    return SymMatrix.from_upper(e.n, upper, diagonal=diag)


def normalized_moment(y: SymMatrix, d: int) -> float:
    """(1/n) tr (Y / sqrt n)^d."""
    lam = eigenvalues(y) / np.sqrt(y.n)
    return float(np.sum(lam**d)) / y.n


def moment_estimates(
    e: WignerEnsemble,
    degrees: Iterable[int],
    samples: int,
    seed: int,
    threads: int = 1,
) -> dict[int, tuple[float, float]]:
    """Mean and standard error of (1/n) tr (X/sqrt n)^d for each d.

    Sample i is drawn from its own stream, so the result is independent of
    the thread count.
    """
    degrees = sorted(set(int(d) for d in degrees))
    if not degrees or degrees[0] < 1:
        raise ArgumentError(f"degrees must be positive, got {degrees}")
    if samples < 2:
        raise ArgumentError(f"need at least two samples, got {samples}")

    def one(i: int) -> np.ndarray:
        x = wigner_sample(e, derive_rng(seed, STREAM_SAMPLES, i))
        lam = eigenvalues(x) / np.sqrt(e.n)
        return np.array([np.sum(lam**d) / e.n for d in degrees])

    rows = ordered_map(one, range(samples), threads)
    table = np.vstack(rows)
    return {d: ordered_mean(table[:, j].tolist()) for j, d in enumerate(degrees)}
