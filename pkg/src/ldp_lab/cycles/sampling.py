"""Erdos-Renyi adjacency matrices and Monte Carlo cycle-trace tails."""

import math
from collections.abc import Sequence
from dataclasses import dataclass

import networkx as nx
import numpy as np

from ldp_lab.core.exceptions import ArgumentError
from ldp_lab.core.seeding import STREAM_SAMPLES, derive_rng, ordered_map, ordered_mean
from ldp_lab.cycles.problem import CycleProblem
from ldp_lab.linalg.spectral import trace_power
from ldp_lab.linalg.symmetric import SymMatrix
from ldp_lab.wigner.truncated import truncated_trace

MIN_TRIALS = 100


def er_sample(n: int, p: float, rng: np.random.Generator) -> SymMatrix:
    """Symmetric 0/1 adjacency of G(n, p) with zero diagonal."""
    if n < 1 or not 0.0 <= p <= 1.0:
        raise ArgumentError(f"need n >= 1 and p in [0, 1], got n={n}, p={p}")
    edges = (rng.random(n * (n - 1) // 2) < p).astype(float)
    return SymMatrix.from_upper(n, edges)


def triangle_count(adj: SymMatrix) -> int:
    graph = nx.from_numpy_array(adj.data)
    return sum(nx.triangles(graph).values()) // 3


@dataclass(frozen=True)
class TraceTailReport:
    mean: float
    std_err: float
    tail_freq: dict[float, float]
    trials: int
    truncated_mean: float | None = None
    truncated_std_err: float | None = None


def trace_tail_mc(
    problem: CycleProblem,
    trials: int,
    seed: int,
    levels: Sequence[float] | None = None,
    threads: int = 1,
    k: int | None = None,
) -> TraceTailReport:
    """Mean of tr(X^d)/(np)^d and exceedance frequencies at the given levels.

    With ``k`` the same graphs also give the mean of g_k(X)/(np)^d.
    """
    if trials < MIN_TRIALS:
        raise ArgumentError(f"need at least {MIN_TRIALS} trials, got {trials}")
    levels = tuple(levels) if levels else (problem.t,)
    scale = problem.np_**problem.d
    if k is not None and not 1 <= k <= problem.n:
        raise ArgumentError(f"k must lie in [1, {problem.n}], got {k}")

    def one(i: int) -> tuple[float, float]:
        x = er_sample(problem.n, problem.p, derive_rng(seed, STREAM_SAMPLES, i))
        truncated = truncated_cycle_trace(x, k, problem.d) / scale if k is not None else math.nan
        return trace_power(x, problem.d) / scale, truncated

    results = ordered_map(one, range(trials), threads)
    ratios = [r for r, _ in results]
    mean, std_err = ordered_mean(ratios)
    freq = {float(t): sum(1 for r in ratios if r >= t) / trials for t in levels}
    if k is None:
        return TraceTailReport(mean, std_err, freq, trials)
    t_mean, t_err = ordered_mean([g for _, g in results])
    return TraceTailReport(mean, std_err, freq, trials, t_mean, t_err)


def expected_closed_walks(n: int, p: float, d: int) -> float:
    """E tr(X^d) counted by ordered d-cycles; exact for d = 3."""
    if d != 3:
        raise ArgumentError("closed form available for d = 3 only")
    return n * (n - 1) * (n - 2) * p**3


def complete_graph_trace(n: int, d: int) -> float:
    """tr((J - I)^d) = (n-1)^d + (-1)^d (n-1)."""
    return float((n - 1) ** d + (-1) ** d * (n - 1))


def truncated_cycle_trace(adj: SymMatrix, k: int, d: int) -> float:
    """g_k(X): tr_[k] X^d for even d, tr_[k] X_+^d - tr_[k] X_-^d for odd d."""
    return truncated_trace(adj, k, d) * adj.n ** (1.0 + d / 2.0)
