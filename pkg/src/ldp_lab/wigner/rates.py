"""Catalan numbers, semicircle moments and the universal rate J_d."""

import math
from collections.abc import Iterable
from dataclasses import dataclass

from ldp_lab.core.exceptions import ArgumentError, RangeError

INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class RateCurve:
    """Sampled values of a named rate function; +inf marks the infeasible side."""

    name: str
    points: tuple[tuple[float, float], ...]
    speed_desc: str = ""

    def __post_init__(self):
        ts = [t for t, _ in self.points]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ArgumentError(f"{self.name}: t values must be strictly increasing")
        if any(v < 0 for _, v in self.points):
            raise ArgumentError(f"{self.name}: rate values must be nonnegative")

    @property
    def ts(self) -> list[float]:
        return [t for t, _ in self.points]

    @property
    def values(self) -> list[float]:
        return [v for _, v in self.points]


def catalan(m: int) -> int:
    """C_m = binom(2m, m) / (m + 1), limited to the signed 64-bit range."""
    if m < 0:
        raise ArgumentError(f"Catalan index must be >= 0, got {m}")
    value = math.comb(2 * m, m) // (m + 1)
    if value > INT64_MAX:
        raise RangeError(f"Catalan number C_{m} exceeds the 64-bit range")
    return value


def semicircle_moment(d: int) -> float:
    """int x^d d(semicircle): C_{d/2} for even d, 0 for odd d."""
    if d < 1:
        raise ArgumentError(f"moment order must be >= 1, got {d}")
    return float(catalan(d // 2)) if d % 2 == 0 else 0.0


def _check_rate_args(d: int, beta: int) -> None:
    if d < 3:
        raise ArgumentError(f"J_d needs d >= 3, got {d}")
    if beta not in (1, 2):
        raise ArgumentError(f"beta must be 1 or 2, got {beta}")


def rate_J(d: int, beta: int, x: float) -> float:
    """Rate of (1/n) tr (X/sqrt n)^d at speed n^{1+2/d} for sharp sub-Gaussian entries."""
    _check_rate_args(d, beta)
    if d % 2 == 0:
        c = semicircle_moment(d)
        if x < c:
            return math.inf
        return beta / 4.0 * (x - c) ** (2.0 / d)
    return beta / 4.0 * abs(x) ** (2.0 / d)


def rate_curve(d: int, beta: int, ts: Iterable[float]) -> RateCurve:
    _check_rate_args(d, beta)
    points = tuple((float(t), rate_J(d, beta, t)) for t in sorted(set(ts)))
    return RateCurve(name=f"J_{d}", points=points, speed_desc=f"n^(1+2/{d})")
