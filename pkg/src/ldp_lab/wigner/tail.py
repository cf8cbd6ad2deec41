"""Importance sampling of trace upper tails under a uniform product tilt."""

import itertools
import logging
import math
from dataclasses import dataclass

import numpy as np

from ldp_lab.core.exceptions import ArgumentError, ResourceError
from ldp_lab.core.seeding import STREAM_TILT, derive_rng, ordered_map
from ldp_lab.measures.laws import LawFamily
from ldp_lab.measures.tilting import TiltedLaw
from ldp_lab.measures.transforms import (
    legendre,
    log_laplace,
    log_laplace_second_derivative,
)
from ldp_lab.wigner.ensemble import WignerEnsemble
from ldp_lab.wigner.rates import semicircle_moment
from ldp_lab.wigner.shift import shift_entry

logger = logging.getLogger(__name__)

MIN_TRIALS = 1_000
MIN_ESS = 10.0
TILT_CLAMP = 0.95
CHUNK = 1_000
MAX_EXACT_ENTRIES = 20
TILTABLE = (LawFamily.RADEMACHER, LawFamily.GAUSSIAN)


@dataclass(frozen=True)
class TailEstimate:
    prob_est: float
    std_err: float
    rate_est: float
    ess: float
    reliable: bool
    hit_rate: float
    tilt_mean: float
    tilt_lambda: float
    log_lower_bound: float


def batch_statistic(upper: np.ndarray, diag: np.ndarray, n: int, d: int) -> np.ndarray:
    """(1/n) tr (X/sqrt n)^d for a batch of matrices given by their entries."""
    size = upper.shape[0]
    mats = np.zeros((size, n, n))
    iu = np.triu_indices(n, 1)
    mats[:, iu[0], iu[1]] = upper
    mats = mats + np.transpose(mats, (0, 2, 1))
    idx = np.arange(n)
    mats[:, idx, idx] = diag
    lam = np.linalg.eigvalsh(mats) / math.sqrt(n)
    return np.sum(lam**d, axis=1) / n


def shift_target(d: int, t: float) -> float:
    """Mean trace shift the tilt aims for: t - m_d for even d, t for odd d."""
    if not math.isfinite(t):
        return 0.0
    return max(t - semicircle_moment(d), 0.0) if d % 2 == 0 else t


def tilted_tail_estimate(
    e: WignerEnsemble,
    d: int,
    t: float,
    trials: int,
    seed: int,
    threads: int = 1,
) -> TailEstimate:
    """Estimate P((1/n) tr (X/sqrt n)^d >= t) by tilting the off-diagonal entries.

    Every off-diagonal entry is tilted to the mean of the uniform-shift
    candidate for the target trace; the diagonal keeps its law. Chunk i of
    trials draws from its own stream and chunks are reduced in order.
    """
    if trials < MIN_TRIALS:
        raise ArgumentError(f"need at least {MIN_TRIALS} trials, got {trials}")
    if e.entry_law.family not in TILTABLE:
        raise ArgumentError(f"tilted estimates support Rademacher or Gaussian entries, got {e.entry_law.name}")
    if d < 2:
        raise ArgumentError(f"d must be >= 2, got {d}")
    n, m = e.n, e.free_entries

    x = shift_target(d, t)
    y = shift_entry(n, d, x) if n >= 3 or d % 2 == 0 else 0.0
    lo, hi = e.entry_law.support
    if e.entry_law.bounded and abs(y) > TILT_CLAMP * hi:
        logger.warning("tilt mean %.4g clamped to %.2f of the support", y, TILT_CLAMP)
        y = math.copysign(TILT_CLAMP * hi, y)
    tilt = TiltedLaw.from_mean(e.entry_law, y)
    lam = tilt.lam
    log_norm = m * log_laplace(e.entry_law, lam)

    def chunk(i: int) -> tuple[np.ndarray, np.ndarray]:
        size = min(CHUNK, trials - i * CHUNK)
        rng = derive_rng(seed, STREAM_TILT, i)
        upper = tilt.sample(rng, (size, m)).reshape(size, m)
        diag = e.diag_law.sample(rng, (size, n)).reshape(size, n)
        hits = batch_statistic(upper, diag, n, d) >= t
        log_w = -lam * upper.sum(axis=1) + log_norm
        return np.where(hits, np.exp(log_w), 0.0), hits

    parts = ordered_map(chunk, range(math.ceil(trials / CHUNK)), threads)
    weighted = np.concatenate([p[0] for p in parts])
    hits = np.concatenate([p[1] for p in parts])

    prob = math.fsum(weighted) / trials
    std_err = float(np.std(weighted, ddof=1)) / math.sqrt(trials)
    sq = math.fsum(weighted**2)
    ess = math.fsum(weighted) ** 2 / sq if sq > 0 else 0.0
    reliable = ess >= MIN_ESS
    if not reliable:
        logger.warning("importance sampling unreliable: effective sample size %.2f < %g", ess, MIN_ESS)

    hit_rate = float(np.mean(hits))
    rate = -math.log(prob) / n ** (1.0 + 2.0 / d) if prob > 0 else math.inf

    # log mu(V) >= -Lambda*(y) + log mu_y(V) - <lam, Hess lam>^{1/2} / mu_y(V)^{1/2}
    if hit_rate > 0:
        spread = math.sqrt(m * lam * lam * log_laplace_second_derivative(e.entry_law, lam))
        lower = -m * legendre(e.entry_law, y) + math.log(hit_rate) - spread / math.sqrt(hit_rate)
    else:
        lower = -math.inf

    return TailEstimate(
        prob_est=prob,
        std_err=std_err,
        rate_est=rate,
        ess=ess,
        reliable=reliable,
        hit_rate=hit_rate,
        tilt_mean=y,
        tilt_lambda=lam,
        log_lower_bound=lower,
    )


def exact_tail_probability(e: WignerEnsemble, d: int, t: float) -> float:
    """P((1/n) tr (X/sqrt n)^d >= t) by enumerating a Rademacher ensemble."""
    if e.entry_law.family is not LawFamily.RADEMACHER or e.diag_law.family is not LawFamily.RADEMACHER:
        raise ArgumentError("exact enumeration needs Rademacher entries and diagonal")
    n, m = e.n, e.free_entries
    if m + n > MAX_EXACT_ENTRIES:
        raise ResourceError(f"{m + n} free entries exceed the enumeration limit {MAX_EXACT_ENTRIES}")
    configs = np.array(list(itertools.product((-1.0, 1.0), repeat=m + n)))
    stats = batch_statistic(configs[:, :m], configs[:, m:], n, d)
    return float(np.mean(stats >= t))
