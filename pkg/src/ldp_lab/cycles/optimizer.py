"""Penalty-method solver for phi_n(t) = inf{Lambda*_p(Y) : tr(Y^d) >= t (np)^d}."""

import logging
import math
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.special import expit, logit

from ldp_lab.core.config import get_settings
from ldp_lab.core.exceptions import InfeasibleCandidateError, LdpLabError, ResourceError
from ldp_lab.core.seeding import STREAM_STARTS, derive_rng, ordered_map
from ldp_lab.cycles.candidates import (
    CandidateKind,
    CandidateMatrix,
    dense_candidate,
    planted_clique,
    planted_hub,
    uniform_candidate,
)
from ldp_lab.cycles.problem import CycleProblem
from ldp_lab.linalg.symmetric import SymMatrix
from ldp_lab.measures.transforms import bernoulli_entropy

logger = logging.getLogger(__name__)

MAX_OPTIMIZE_N = 60


class PhiOptimizerConfig(BaseModel):
    """Tuning of the penalty solver; overridable from a YAML file."""

    model_config = ConfigDict(extra="forbid")

    floor_ratio: float = Field(0.1, gt=0.0, lt=1.0)
    rounds: int = Field(6, ge=1)
    mu_initial: float = Field(10.0, gt=0.0)
    mu_growth: float = Field(10.0, gt=1.0)
    inner_iterations: int = Field(300, ge=1)
    armijo: float = Field(1e-4, gt=0.0, lt=1.0)
    backtrack: float = Field(0.5, gt=0.0, lt=1.0)
    max_backtracks: int = Field(40, ge=1)
    initial_step: float = Field(1.0, gt=0.0)
    max_step: float = Field(1e4, gt=0.0)
    perturbations: int = Field(3, ge=0)
    perturbation_scale: float = Field(0.5, ge=0.0)
    z_clip: float = Field(30.0, gt=0.0)
    step_tol: float = Field(1e-10, gt=0.0)
    restore_steps: int = Field(60, ge=1)

    @classmethod
    def from_settings(cls) -> "PhiOptimizerConfig":
        return cls(**get_settings().load_optimizer_overrides())


def trace_power_gradient(y: SymMatrix, d: int) -> np.ndarray:
    """Gradient of tr(Y^d) over the upper entries: 2 d (Y^{d-1})_ij."""
    power = np.linalg.matrix_power(y.data, d - 1)
    return 2.0 * d * power[np.triu_indices(y.n, 1)]


@dataclass
class _Objective:
    problem: CycleProblem
    floor: float
    mu: float = 1.0

    def __post_init__(self):
        self.iu = np.triu_indices(self.problem.n, 1)

    def entries(self, z: np.ndarray) -> np.ndarray:
        return self.floor + (1.0 - self.floor) * expit(z)

    def matrix(self, y_upper: np.ndarray) -> np.ndarray:
        n = self.problem.n
        arr = np.zeros((n, n))
        arr[self.iu] = y_upper
        return arr + arr.T

    def trace(self, y_upper: np.ndarray) -> float:
        return float(np.trace(np.linalg.matrix_power(self.matrix(y_upper), self.problem.d)))

    def violation(self, trace: float) -> float:
        return max(0.0, 1.0 - trace / self.problem.target_trace)

    def value_and_grad(self, z: np.ndarray) -> tuple[float, np.ndarray]:
        pr = self.problem
        s = expit(z)
        y = self.floor + (1.0 - self.floor) * s
        mat = self.matrix(y)
        power = np.linalg.matrix_power(mat, pr.d - 1)
        trace = float(np.sum(power * mat))
        viol = self.violation(trace)
        cost = math.fsum(bernoulli_entropy(y, pr.p))
        value = cost + self.mu * pr.speed * viol * viol

        d_cost = logit(y) - logit(pr.p)
        d_trace = 2.0 * pr.d * power[self.iu]
        d_y = d_cost - 2.0 * self.mu * pr.speed * viol * d_trace / pr.target_trace
        return value, d_y * (1.0 - self.floor) * s * (1.0 - s)

    def value(self, z: np.ndarray) -> float:
        return self.value_and_grad(z)[0]


def _minimize(obj: _Objective, z: np.ndarray, cfg: PhiOptimizerConfig) -> np.ndarray:
    """Projected gradient descent with Armijo backtracking on the box |z| <= z_clip."""
    step = cfg.initial_step
    value, grad = obj.value_and_grad(z)
    for _ in range(cfg.inner_iterations):
        accepted = False
        for _ in range(cfg.max_backtracks):
            z_new = np.clip(z - step * grad, -cfg.z_clip, cfg.z_clip)
            moved = z - z_new
            new_value, new_grad = obj.value_and_grad(z_new)
            if new_value <= value - cfg.armijo * float(grad @ moved):
                accepted = True
                break
            step *= cfg.backtrack
        if not accepted or float(np.max(np.abs(moved), initial=0.0)) <= cfg.step_tol:
            break
        z, value, grad = z_new, new_value, new_grad
        step = min(step * 2.0, cfg.max_step)
    return z


def _restore(obj: _Objective, y: np.ndarray, steps: int) -> np.ndarray | None:
    """Smallest blend Y + a (1 - Y), a in [0, 1], meeting the trace target."""
    target = obj.problem.target_trace
    if obj.trace(y) >= target:
        return y
    if obj.trace(np.ones_like(y)) < target:
        return None
    lo, hi = 0.0, 1.0
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if obj.trace(y + mid * (1.0 - y)) >= target:
            hi = mid
        else:
            lo = mid
    return y + hi * (1.0 - y)


def _z_from_entries(y: np.ndarray, floor: float, clip: float) -> np.ndarray:
    with np.errstate(divide="ignore"):
        z = logit(np.clip((y - floor) / (1.0 - floor), 0.0, 1.0))
    return np.clip(z, -clip, clip)


def numeric_phi(
    problem: CycleProblem,
    config: PhiOptimizerConfig | None = None,
    seed: int = 0,
    threads: int = 1,
) -> CandidateMatrix:
    """Approximate minimizer of Lambda*_p(Y) subject to tr(Y^d) >= t (np)^d.

    Starts from the planted clique, the planted hub, the uniform-p matrix and
    random perturbations of it. Each run ends with a feasibility restoration,
    and the planted candidates compete with the optimized ones; the cheapest
    feasible matrix wins, ties going to the earliest start.
    """
    cfg = config or PhiOptimizerConfig()
    n, p = problem.n, problem.p
    if n > MAX_OPTIMIZE_N:
        raise ResourceError(f"dense optimization limited to n <= {MAX_OPTIMIZE_N}, got {n}")
    if n < 2:
        raise InfeasibleCandidateError("a graph on one vertex has no edges to weight")

    floor = cfg.floor_ratio * p
    planted: list[CandidateMatrix] = []
    for build in (planted_clique, planted_hub):
        try:
            planted.append(build(problem))
        except LdpLabError as exc:
            logger.info("skipping start: %s", exc)
    uniform = uniform_candidate(problem)
    iu = np.triu_indices(n, 1)
    uniform_z = _z_from_entries(uniform.matrix.data[iu], floor, cfg.z_clip)

    starts = [_z_from_entries(c.matrix.data[iu], floor, cfg.z_clip) for c in planted]
    starts.append(uniform_z)
    for i in range(cfg.perturbations):
        noise = derive_rng(seed, STREAM_STARTS, i).normal(0.0, cfg.perturbation_scale, uniform_z.shape)
        starts.append(np.clip(uniform_z + noise, -cfg.z_clip, cfg.z_clip))

    def run(z0: np.ndarray) -> tuple[np.ndarray | None, float]:
        obj = _Objective(problem, floor)
        z = z0
        for round_ in range(cfg.rounds):
            obj.mu = cfg.mu_initial * cfg.mu_growth**round_
            z = _minimize(obj, z, cfg)
        # entries below p only add cost and remove trace
        y = np.maximum(obj.entries(z), p)
        violation = obj.violation(obj.trace(y))
        return _restore(obj, y, cfg.restore_steps), violation

    results = ordered_map(run, starts, threads)

    contenders: list[CandidateMatrix] = [c for c in planted + [uniform] if c.feasible]
    best_violation = math.inf
    for y_upper, violation in results:
        best_violation = min(best_violation, violation)
        if y_upper is None:
            continue
        y = SymMatrix.from_upper(n, np.minimum(y_upper, 1.0))
        candidate = dense_candidate(CandidateKind.NUMERIC, problem, y)
        if candidate.feasible:
            contenders.append(candidate)

    if not contenders:
        raise InfeasibleCandidateError(
            f"no feasible matrix for t={problem.t} (best relative violation {best_violation:.3e})",
            violation=best_violation,
        )
    best = min(enumerate(contenders), key=lambda item: (item[1].cost, item[0]))[1]
    logger.info(
        "numeric_phi n=%d p=%g d=%d t=%g: best %s, cost/v_n=%.6g",
        n, p, problem.d, problem.t, best.kind.value, best.cost_ratio,
    )
    return best
