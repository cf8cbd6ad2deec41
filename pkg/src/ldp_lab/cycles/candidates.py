"""Planted clique and hub candidates, evaluated from their block structure."""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ldp_lab.core.exceptions import InfeasibleCandidateError
from ldp_lab.cycles.independence import theta_t
from ldp_lab.cycles.problem import CycleProblem, lambda_star_p
from ldp_lab.linalg.spectral import trace_power
from ldp_lab.linalg.symmetric import SymMatrix
from ldp_lab.measures.transforms import bernoulli_entropy

# guards ceil() against products that land a rounding error above an integer
CEIL_SLACK = 1e-9


class CandidateKind(str, Enum):
    CLIQUE = "clique"
    HUB = "hub"
    UNIFORM = "uniform"
    NUMERIC = "numeric"


@dataclass(frozen=True)
class TwoBlock:
    """Zero-diagonal matrix with value a inside the first r vertices, b across
    and c inside the remaining n - r."""

    n: int
    r: int
    a: float
    b: float
    c: float

    def spectrum(self) -> list[tuple[float, int]]:
        """(eigenvalue, multiplicity) pairs."""
        n, r, a, b, c = self.n, self.r, self.a, self.b, self.c
        rest = n - r
        if r == 0 or rest == 0:
            size, v = (n, c) if r == 0 else (n, a)
            return [(v * (size - 1), 1), (-v, size - 1)]
        q11, q12, q21, q22 = a * (r - 1), b * rest, b * r, c * (rest - 1)
        half_tr = 0.5 * (q11 + q22)
        disc = math.sqrt(0.25 * (q11 - q22) ** 2 + q12 * q21)
        return [(half_tr + disc, 1), (half_tr - disc, 1), (-a, r - 1), (-c, rest - 1)]

    def trace_power(self, d: int) -> float:
        return math.fsum(m * lam**d for lam, m in self.spectrum() if m > 0)

    def cost(self, p: float) -> float:
        r, rest = self.r, self.n - self.r
        costs = bernoulli_entropy(np.array([self.a, self.b, self.c]), p)
        counts = (r * (r - 1) / 2, r * rest, rest * (rest - 1) / 2)
        return math.fsum(k * float(v) for k, v in zip(counts, costs) if k > 0)

    def to_matrix(self) -> SymMatrix:
        arr = np.full((self.n, self.n), self.c)
        arr[: self.r, :] = self.b
        arr[:, : self.r] = self.b
        arr[: self.r, : self.r] = self.a
        np.fill_diagonal(arr, 0.0)
        return SymMatrix(arr)


@dataclass(frozen=True)
class CandidateMatrix:
    """A weighted graph Y with entries in [p, 1] and its cost and trace."""

    kind: CandidateKind
    problem: CycleProblem
    size: int
    cost: float
    trace: float
    dense: SymMatrix | None = None
    blocks: TwoBlock | None = None

    @property
    def matrix(self) -> SymMatrix:
        return self.dense if self.dense is not None else self.blocks.to_matrix()

    @property
    def trace_ratio(self) -> float:
        """tr(Y^d) / (np)^d."""
        return self.trace / self.problem.np_**self.problem.d

    @property
    def cost_ratio(self) -> float:
        """Lambda*_p(Y) / v_n."""
        return self.cost / self.problem.speed

    @property
    def feasible(self) -> bool:
        return self.trace >= self.problem.target_trace * (1.0 - 1e-12)


def _from_blocks(kind: CandidateKind, problem: CycleProblem, blocks: TwoBlock) -> CandidateMatrix:
    return CandidateMatrix(
        kind=kind,
        problem=problem,
        size=blocks.r,
        cost=blocks.cost(problem.p),
        trace=blocks.trace_power(problem.d),
        blocks=blocks,
    )


def clique_size(problem: CycleProblem) -> int:
    """r = ceil((t - 1)^{1/d} n p)."""
    raw = (problem.t - 1.0) ** (1.0 / problem.d) * problem.np_
    return max(0, math.ceil(raw - CEIL_SLACK))


def hub_size(problem: CycleProblem) -> int:
    """s = ceil(theta_t n p^2)."""
    raw = theta_t(problem.d, problem.t) * problem.n * problem.p**2
    return max(0, math.ceil(raw - CEIL_SLACK))


def planted_clique(problem: CycleProblem) -> CandidateMatrix:
    """Entries 1 when both indices are below r, p elsewhere."""
    r = clique_size(problem)
    if r > problem.n:
        raise InfeasibleCandidateError(f"clique size {r} exceeds n={problem.n}")
    p = problem.p
    return _from_blocks(CandidateKind.CLIQUE, problem, TwoBlock(problem.n, r, 1.0, p, p))


def planted_hub(problem: CycleProblem) -> CandidateMatrix:
    """Entries 1 when the smaller index is below s, p elsewhere."""
    s = hub_size(problem)
    if s > problem.n:
        raise InfeasibleCandidateError(f"hub size {s} exceeds n={problem.n}")
    p = problem.p
    return _from_blocks(CandidateKind.HUB, problem, TwoBlock(problem.n, s, 1.0, 1.0, p))


def uniform_candidate(problem: CycleProblem) -> CandidateMatrix:
    p = problem.p
    return _from_blocks(CandidateKind.UNIFORM, problem, TwoBlock(problem.n, 0, p, p, p))


def dense_candidate(kind: CandidateKind, problem: CycleProblem, y: SymMatrix, size: int = 0) -> CandidateMatrix:
    """Wrap an explicit matrix, computing its cost and trace directly."""
    return CandidateMatrix(
        kind=kind,
        problem=problem,
        size=size,
        cost=lambda_star_p(y, problem.p),
        trace=trace_power(y, problem.d),
        dense=y,
    )
