"""Naive mean-field supremum by damped fixed-point iteration."""

import logging
from dataclasses import dataclass

import numpy as np

from ldp_lab.core.exceptions import ArgumentError, ConvergenceError
from ldp_lab.core.seeding import STREAM_STARTS, derive_rng, ordered_map, seed_from_rng
from ldp_lab.ising.problem import IsingProblem
from ldp_lab.linalg.spectral import eigen_symmetric

logger = logging.getLogger(__name__)

DAMPING = 0.5
FIXED_POINT_TOL = 1e-10
MAX_ITERATIONS = 10_000
DEFAULT_STARTS = 32
TIE_TOL = 1e-12


@dataclass(frozen=True)
class MeanFieldSolution:
    x_star: np.ndarray
    value: float
    starts_used: int
    converged: bool
    iterations: int = 0
    residual: float = 0.0


@dataclass(frozen=True)
class _StartOutcome:
    index: int
    x: np.ndarray
    value: float
    converged: bool
    iterations: int
    step: float


def fixed_point_residual(problem: IsingProblem, x: np.ndarray) -> float:
    """||x - tanh(2 A x)||_inf."""
    return float(np.max(np.abs(x - np.tanh(2.0 * problem.a @ x)), initial=0.0))


def initial_points(problem: IsingProblem, starts: int, seed: int) -> list[np.ndarray]:
    """All-0.5 vector, top eigenvector scaled to the boundary, then uniform draws."""
    n = problem.n
    points = [np.full(n, 0.5)]
    if starts >= 2:
        v = eigen_symmetric(problem.coupling).eigenvectors[:, 0]
        points.append(v / np.max(np.abs(v)))
    for i in range(len(points), starts):
        points.append(derive_rng(seed, STREAM_STARTS, i).uniform(-1.0, 1.0, n))
    return points[:starts]


def _iterate(problem: IsingProblem, index: int, x0: np.ndarray) -> _StartOutcome:
    a2 = 2.0 * problem.a
    x = x0.copy()
    step = np.inf
    for it in range(1, MAX_ITERATIONS + 1):
        x_new = (1.0 - DAMPING) * x + DAMPING * np.tanh(a2 @ x)
        step = float(np.max(np.abs(x_new - x), initial=0.0))
        x = x_new
        if step <= FIXED_POINT_TOL:
            return _StartOutcome(index, x, problem.objective(x), True, it, step)
    return _StartOutcome(index, x, problem.objective(x), False, MAX_ITERATIONS, step)


def meanfield_sup(
    problem: IsingProblem, starts: int, rng: np.random.Generator, threads: int = 1
) -> MeanFieldSolution:
    """Best stationary point of <x, A x> - sum_i Lambda*(x_i) over multi-starts.

    Ties in the objective go to the lexicographically smallest x rounded
    to 1e-9, so the result does not depend on the thread count.
    """
    if starts < 1:
        raise ArgumentError(f"starts must be >= 1, got {starts}")
    seed = seed_from_rng(rng)
    points = initial_points(problem, starts, seed)
    outcomes = ordered_map(lambda item: _iterate(problem, *item), list(enumerate(points)), threads)

    converged = [o for o in outcomes if o.converged]
    if not converged:
        worst = min(o.step for o in outcomes)
        raise ConvergenceError(
            f"none of {starts} mean-field starts converged (smallest final step {worst:.3e})",
            residual=worst,
        )
    best_value = max(o.value for o in converged)
    tied = [o for o in converged if o.value >= best_value - TIE_TOL * max(1.0, abs(best_value))]
    best = min(tied, key=lambda o: tuple(np.round(o.x, 9)))
    logger.debug(
        "mean-field: %d/%d starts converged, best value %.12g from start %d",
        len(converged), starts, best.value, best.index,
    )
    return MeanFieldSolution(
        x_star=best.x,
        value=best.value,
        starts_used=starts,
        converged=True,
        iterations=best.iterations,
        residual=fixed_point_residual(problem, best.x),
    )
