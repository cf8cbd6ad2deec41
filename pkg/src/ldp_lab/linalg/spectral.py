"""Symmetric eigendecomposition, trace powers and spectral parts."""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from ldp_lab.core.exceptions import ArgumentError, NumericalError
from ldp_lab.linalg.symmetric import SymMatrix

logger = logging.getLogger(__name__)

JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 50
# method="auto" runs Jacobi up to this size and LAPACK above it
JACOBI_MAX_N = 32
# trace_power multiplies matrices up to this size, then goes spectral
POWER_TRACE_MAX_N = 20


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Eigenvalues sorted non-increasing with matching orthonormal columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    def apply(self, fn: Callable[[np.ndarray], np.ndarray]) -> SymMatrix:
        """Q diag(fn(eigenvalues)) Q^T."""
        q = self.eigenvectors
        return SymMatrix((q * fn(self.eigenvalues)) @ q.T)

    def reconstruct(self) -> SymMatrix:
        return self.apply(lambda lam: lam)

    def orthogonality_error(self) -> float:
        q = self.eigenvectors
        return float(np.max(np.abs(q.T @ q - np.eye(self.n))))

    def residual(self, y: SymMatrix) -> float:
        return float(np.linalg.norm(self.reconstruct().data - y.data, "fro"))


def _max_off_diagonal(a: np.ndarray) -> float:
    if a.shape[0] < 2:
        return 0.0
    return float(np.max(np.abs(a[np.triu_indices(a.shape[0], 1)])))


def _jacobi(y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi rotations; returns unsorted (eigenvalues, eigenvectors)."""
    a = y.copy()
    n = a.shape[0]
    v = np.eye(n)
    threshold = JACOBI_TOL * float(np.linalg.norm(a, "fro"))

    for sweep in range(JACOBI_MAX_SWEEPS):
        if _max_off_diagonal(a) <= threshold:
            logger.debug("jacobi converged after %d sweeps (n=%d)", sweep, n)
            return np.diag(a).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= threshold:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c

                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0

                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq

    residual = _max_off_diagonal(a)
    if residual <= threshold:
        return np.diag(a).copy(), v
    raise NumericalError(
        f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps (max off-diagonal {residual:.3e})",
        residual=residual,
    )


def eigen_symmetric(y: SymMatrix, method: str = "auto") -> SpectralDecomposition:
    """Eigendecomposition of ``y`` by cyclic Jacobi or LAPACK.

    ``method`` is ``"jacobi"``, ``"lapack"`` or ``"auto"`` (Jacobi up to
    JACOBI_MAX_N, LAPACK above). Both paths return eigenvalues sorted
    non-increasing with orthonormal eigenvectors, so the trace, determinant
    and Weyl perturbation identities hold on either path. Ties in the sort keep the
    solver's output order.
    """
    if method == "auto":
        method = "jacobi" if y.n <= JACOBI_MAX_N else "lapack"
    if method == "jacobi":
        values, vectors = _jacobi(y.data)
    elif method == "lapack":
        values, vectors = np.linalg.eigh(y.data)
        values, vectors = values[::-1], vectors[:, ::-1]
    else:
        raise ArgumentError(f"unknown eigen method {method!r}")
    order = np.argsort(-values, kind="stable")
    return SpectralDecomposition(values[order].copy(), vectors[:, order].copy())


def eigenvalues(y: SymMatrix) -> np.ndarray:
    """Eigenvalues only, sorted non-increasing."""
    if y.n <= JACOBI_MAX_N:
        return eigen_symmetric(y).eigenvalues
    return np.linalg.eigvalsh(y.data)[::-1].copy()


def _check_power(d: int) -> None:
    if int(d) != d or d < 1:
        raise ArgumentError(f"power must be a positive integer, got {d}")


def matrix_power_trace(y: SymMatrix, d: int) -> float:
    """tr(Y^d) by repeated multiplication; exact for integer-valued matrices."""
    _check_power(d)
    data = y.data
    if np.all(data == np.round(data)) and np.max(np.abs(data)) < 2**31:
        exact = np.linalg.matrix_power(data.astype(np.int64).astype(object), int(d))
        return float(sum(exact[i, i] for i in range(y.n)))
    return float(np.trace(np.linalg.matrix_power(data, int(d))))


def spectral_trace_power(y: SymMatrix, d: int) -> float:
    """sum_i lambda_i^d from the eigenvalues."""
    _check_power(d)
    return math.fsum(float(v) ** int(d) for v in eigenvalues(y))


def trace_power(y: SymMatrix, d: int) -> float:
    """tr(Y^d)."""
    if y.n <= POWER_TRACE_MAX_N:
        return matrix_power_trace(y, d)
    return spectral_trace_power(y, d)


def spectral_function(y: SymMatrix, fn: Callable[[np.ndarray], np.ndarray]) -> SymMatrix:
    return eigen_symmetric(y).apply(fn)


def positive_part(y: SymMatrix) -> SymMatrix:
    """Y_+ : projection onto the nonnegative part of the spectrum."""
    return spectral_function(y, lambda lam: np.maximum(lam, 0.0))


def negative_part(y: SymMatrix) -> SymMatrix:
    """Y_- with Y = Y_+ - Y_-."""
    return spectral_function(y, lambda lam: np.maximum(-lam, 0.0))
