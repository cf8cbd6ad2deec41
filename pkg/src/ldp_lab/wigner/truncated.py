"""Truncated traces tr_[k] and the low-rank variational representation."""

import math
from dataclasses import dataclass

import numpy as np

from ldp_lab.core.exceptions import ArgumentError
from ldp_lab.linalg.spectral import eigen_symmetric, eigenvalues
from ldp_lab.linalg.symmetric import SymMatrix

EQUALITY_TOL = 1e-8
INEQUALITY_TOL = 1e-9


def _top_k_sum(values: np.ndarray, k: int) -> float:
    return math.fsum(np.sort(values)[::-1][:k])


def truncated_trace(y: SymMatrix, k: int, d: int) -> float:
    """f_k(Y) = (1/n) tr_[k] (Y/sqrt n)^d.

    For odd d this is tr_[k](Y_+/sqrt n)^d - tr_[k](Y_-/sqrt n)^d, each
    truncated trace summing the k largest eigenvalues of the power.
    """
    n = y.n
    if not 1 <= k <= n:
        raise ArgumentError(f"k must lie in [1, {n}], got {k}")
    if d < 1:
        raise ArgumentError(f"d must be >= 1, got {d}")
    lam = eigenvalues(y) / math.sqrt(n)
    if d % 2 == 0:
        return _top_k_sum(lam**d, k) / n
    pos = np.maximum(lam, 0.0) ** d
    neg = np.maximum(-lam, 0.0) ** d
    return (_top_k_sum(pos, k) - _top_k_sum(neg, k)) / n


def _linearization(x: np.ndarray, z: SymMatrix, d: int) -> float:
    """tr f(Z) + tr f'(Z)(X - Z) for f(s) = s_+^d."""
    spec = eigen_symmetric(z)
    mu = np.maximum(spec.eigenvalues, 0.0)
    q = spec.eigenvectors
    quad = np.einsum("ij,ik,kj->j", q, x - z.data, q)
    return math.fsum(mu**d) + math.fsum(d * mu ** (d - 1) * quad)


@dataclass(frozen=True)
class FnsupReport:
    value: float
    equality_gap: float
    worst_margin: float
    trials: int
    ok: bool

    def __bool__(self) -> bool:
        return self.ok


def top_k_truncation(x: SymMatrix, k: int) -> SymMatrix:
    spec = eigen_symmetric(x)
    q = spec.eigenvectors[:, :k]
    return SymMatrix((q * spec.eigenvalues[:k]) @ q.T)


def fnsup_check(
    x: SymMatrix, k: int, trials: int, rng: np.random.Generator, d: int = 3
) -> FnsupReport:
    """Check T_f(X) = sup over rank <= k of the linearization of tr f at Z.

    T_f(X) is the sum of f over the k largest eigenvalues of X. The
    linearization must not exceed it for random rank-k matrices and must
    equal it at the top-k spectral truncation.
    """
    n = x.n
    if not 1 <= k <= n:
        raise ArgumentError(f"k must lie in [1, {n}], got {k}")
    if d < 2:
        raise ArgumentError(f"f = x_+^d needs d >= 2, got {d}")

    lam = eigenvalues(x)
    value = math.fsum(np.maximum(lam[:k], 0.0) ** d)
    scale = max(1.0, abs(value))

    equality_gap = abs(value - _linearization(x.data, top_k_truncation(x, k), d))

    spread = max(1.0, float(np.max(np.abs(lam))))
    worst = value - _linearization(x.data, SymMatrix.zeros(n), d)
    for _ in range(trials):
        rank = int(rng.integers(1, k + 1))
        w, _ = np.linalg.qr(rng.standard_normal((n, rank)))
        c = rng.normal(0.0, spread, rank)
        z = SymMatrix((w * c) @ w.T)
        worst = min(worst, value - _linearization(x.data, z, d))

    ok = equality_gap <= EQUALITY_TOL * scale and worst >= -INEQUALITY_TOL * scale
    return FnsupReport(value, equality_gap, worst, trials, ok)
