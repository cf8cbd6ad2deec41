"""Gaussian mean-width of the box image A[-1, 1]^n."""

import math
from dataclasses import dataclass

import numpy as np

from ldp_lab.core.exceptions import ArgumentError
from ldp_lab.linalg.symmetric import SymMatrix

MIN_TRIALS = 100


@dataclass(frozen=True)
class WidthEstimate:
    mean: float
    std_err: float
    trials: int


def gaussian_mean_width(a: SymMatrix, trials: int, rng: np.random.Generator) -> WidthEstimate:
    """Monte Carlo estimate of E sup_{x in [-1,1]^n} <Ax, G> = E ||A G||_1."""
    if trials < MIN_TRIALS:
        raise ArgumentError(f"need at least {MIN_TRIALS} trials, got {trials}")
    g = rng.standard_normal((trials, a.n))
    values = np.abs(g @ a.data).sum(axis=1)
    mean = math.fsum(values) / trials
    return WidthEstimate(mean, float(np.std(values, ddof=1)) / math.sqrt(trials), trials)


def mean_width_upper_bound(a: SymMatrix) -> float:
    """sqrt(n) ||A||_HS, which dominates E ||A G||_1."""
    return math.sqrt(a.n) * a.frobenius_norm()
