"""Constant off-diagonal candidates for the trace upper tail."""

import math
from dataclasses import dataclass

from ldp_lab.core.exceptions import ArgumentError, DomainError
from ldp_lab.linalg.spectral import trace_power
from ldp_lab.linalg.symmetric import SymMatrix
from ldp_lab.measures.laws import ScalarLaw
from ldp_lab.measures.transforms import legendre


@dataclass(frozen=True)
class ShiftCandidate:
    y_matrix: SymMatrix
    y: float
    trace_check: float
    cost: float


def shift_denominator(n: int, d: int) -> int:
    """tr(Y^d) / y^d for the constant off-diagonal matrix with entry y.

    Eigenvalues are (n-1) y once and -y with multiplicity n - 1, hence
    (n-1)^d + (n-1) for even d and (n-1)^d - (n-1) for odd d.
    """
    return (n - 1) ** d + (n - 1) if d % 2 == 0 else (n - 1) ** d - (n - 1)


def shift_entry(n: int, d: int, x: float) -> float:
    """Entry y with tr(Y^d) = x n^{1+d/2}."""
    if x == 0:
        return 0.0
    root = (abs(x) / shift_denominator(n, d)) ** (1.0 / d) * n ** (0.5 + 1.0 / d)
    return math.copysign(root, x)


def uniform_shift_candidate(
    n: int, d: int, x: float, entry_law: ScalarLaw | None = None
) -> ShiftCandidate:
    """Constant off-diagonal Y with (1/n) tr(Y/sqrt n)^d = x and its entropy cost.

    cost = sum_{i<j} Lambda*(y) / n^{1+2/d}; +inf when y leaves the support.
    Negative x is allowed for odd d only.
    """
    if n < 2:
        raise ArgumentError(f"n must be >= 2, got {n}")
    if d < 2:
        raise ArgumentError(f"d must be >= 2, got {d}")
    if not math.isfinite(x):
        raise DomainError(f"x must be finite, got {x}")
    if x < 0 and d % 2 == 0:
        raise DomainError(f"even d={d} needs x >= 0, got {x}")
    if d % 2 == 1 and n == 2 and x != 0:
        raise ArgumentError("odd d needs n >= 3: the 2x2 candidate has zero odd traces")
    law = entry_law or ScalarLaw.rademacher()

    y = shift_entry(n, d, x)
    matrix = SymMatrix.constant_off_diagonal(n, y)
    if x == 0:
        trace_check = 1.0
    else:
        trace_check = trace_power(matrix, d) / (x * n ** (1.0 + d / 2.0))
    pairs = n * (n - 1) // 2
    cost = pairs * legendre(law, y) / n ** (1.0 + 2.0 / d)
    return ShiftCandidate(matrix, y, trace_check, cost)
