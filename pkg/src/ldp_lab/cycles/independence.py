"""Independence polynomial of the d-cycle, theta_t and the rate Phi."""

import math

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.optimize import brentq

from ldp_lab.core.exceptions import ArgumentError, DomainError
from ldp_lab.cycles.problem import Regime

MIN_CYCLE = 3
MAX_CYCLE = 20


def _poly_add(a: list[int], b: list[int]) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, v in enumerate(a):
        out[i] += v
    for i, v in enumerate(b):
        out[i] += v
    return out


def _shift(a: list[int]) -> list[int]:
    return [0] + a


def independence_polynomial_cycle(d: int) -> tuple[int, ...]:
    """Coefficients i_k = number of independent sets of size k in the d-cycle.

    Transfer-matrix recursion along the path 1..d with the state of vertex 1
    fixed, closing the cycle by forbidding both endpoints in the set.
    """
    if not MIN_CYCLE <= d <= MAX_CYCLE:
        raise ArgumentError(f"cycle length must lie in [{MIN_CYCLE}, {MAX_CYCLE}], got {d}")
    total = [0]
    for first in (0, 1):
        # polynomials for vertex state (out, in) after vertex 1
        out_poly, in_poly = ([1], [0]) if first == 0 else ([0], [0, 1])
        for _ in range(d - 1):
            out_poly, in_poly = _poly_add(out_poly, in_poly), _shift(out_poly)
        closing = _poly_add(out_poly, in_poly) if first == 0 else out_poly
        total = _poly_add(total, closing)
    while len(total) > 1 and total[-1] == 0:
        total.pop()
    return tuple(total)


def independence_value(d: int, theta: float) -> float:
    return float(P.polyval(theta, independence_polynomial_cycle(d)))


def theta_t(d: int, t: float) -> float:
    """Unique theta >= 0 with P_{C_d}(theta) = t."""
    if not t >= 1.0:
        raise DomainError(f"t must be >= 1, got {t}")
    coeffs = independence_polynomial_cycle(d)
    excess = t - 1.0
    if excess == 0.0:
        return 0.0
    if len(coeffs) == 2:
        return excess / coeffs[1]
    if len(coeffs) == 3:
        b, a = coeffs[1], coeffs[2]
        return 2.0 * excess / (b + math.sqrt(b * b + 4.0 * a * excess))

    def f(theta: float) -> float:
        return float(P.polyval(theta, coeffs)) - t

    hi = 1.0
    while f(hi) < 0.0:
        hi *= 2.0
    return brentq(f, 0.0, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)


def clique_rate(d: int, t: float) -> float:
    """(1/2)(t - 1)^{2/d}: normalized cost of planting a clique."""
    if not t >= 1.0:
        raise DomainError(f"t must be >= 1, got {t}")
    return 0.5 * (t - 1.0) ** (2.0 / d)


def Phi(d: int, t: float, regime: Regime) -> float:
    """min(theta_t, clique rate) in the dense regime, clique rate in the sparse one."""
    clique = clique_rate(d, t)
    if Regime(regime) is Regime.SPARSE:
        return clique
    return min(theta_t(d, t), clique)
