"""Exact log-partition function by enumeration of {-1, 1}^n."""

import math

import numpy as np
from scipy.special import logsumexp

from ldp_lab.core.exceptions import ResourceError
from ldp_lab.ising.problem import IsingProblem

MAX_ENUMERATION_N = 24
CHUNK_BITS = 16


def spin_block(start: int, stop: int, n: int) -> np.ndarray:
    """Spin configurations with indices in [start, stop), bit j giving coordinate j."""
    idx = np.arange(start, stop, dtype=np.int64)
    bits = (idx[:, None] >> np.arange(n, dtype=np.int64)) & 1
    return 2.0 * bits - 1.0


def exact_log_partition(problem: IsingProblem) -> float:
    """log(2^-n sum_sigma exp <sigma, A sigma>) with streaming log-sum-exp."""
    n = problem.n
    if n > MAX_ENUMERATION_N:
        raise ResourceError(f"enumeration limited to n <= {MAX_ENUMERATION_N}, got {n}")
    total = -math.inf
    size = 1 << n
    chunk = 1 << min(CHUNK_BITS, n)
    for start in range(0, size, chunk):
        sigma = spin_block(start, min(start + chunk, size), n)
        energies = np.einsum("si,ij,sj->s", sigma, problem.a, sigma)
        total = float(np.logaddexp(total, logsumexp(energies)))
    return total - n * math.log(2.0)
