"""Deterministic per-branch random streams and ordered parallel maps.

Every Monte Carlo trial and solver start draws from its own generator derived
from ``(master seed, stream id, index)``. Results are gathered in index order,
so the thread count never changes an output.
"""

import math
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

import numpy as np

T = TypeVar("T")
R = TypeVar("R")

# Stream ids keep different experiments from sharing draws under one seed.
STREAM_SAMPLES = 1
STREAM_STARTS = 2
STREAM_VERIFY = 3
STREAM_POOL = 4
STREAM_TILT = 5


def derive_rng(seed: int, *keys: int) -> np.random.Generator:
    """Generator for the sub-stream ``keys`` of the master ``seed``."""
    ss = np.random.SeedSequence(int(seed) & 0xFFFFFFFFFFFFFFFF, spawn_key=tuple(int(k) for k in keys))
    return np.random.Generator(np.random.PCG64(ss))


def seed_from_rng(rng: np.random.Generator) -> int:
    """Draw a master seed from a caller's generator."""
    return int(rng.integers(0, 2**63 - 1))


def ordered_map(fn: Callable[[T], R], items: Iterable[T], threads: int = 1) -> list[R]:
    """Apply ``fn`` to each item, returning results in item order."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def ordered_mean(values: Sequence[float]) -> tuple[float, float]:
    """Compensated mean and standard error of the mean, in index order."""
    n = len(values)
    if n == 0:
        return math.nan, math.nan
    mean = math.fsum(values) / n
    if n == 1:
        return mean, 0.0
    var = math.fsum((v - mean) ** 2 for v in values) / (n - 1)
    return mean, math.sqrt(var / n)
