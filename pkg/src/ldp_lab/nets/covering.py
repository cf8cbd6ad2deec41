"""Explicit epsilon-nets of intervals, spheres and low-rank operator balls."""

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree
from scipy.special import betainc

from ldp_lab.core.exceptions import ArgumentError, ConstructionError, ResourceError
from ldp_lab.core.seeding import STREAM_POOL, STREAM_VERIFY, derive_rng, seed_from_rng

logger = logging.getLogger(__name__)

VERIFY_SAMPLES = 10_000
REPAIR_ROUNDS = 8
SPHERE_MIN_DIM = 2
SPHERE_MAX_DIM = 8
POOL_FACTOR = 20.0
POOL_MIN = 4096
POOL_MAX = 2_000_000
LOWRANK_MAX_N = 6
LOWRANK_MAX_K = 2
MATERIALIZE_MAX = 100_000


@dataclass
class NetResult:
    """A finite net of a target set.

    Low-rank nets are kept factored as (interval net, sphere net); their
    points are generated on demand by ``materialize``.
    """

    points: np.ndarray | None
    mesh: float
    target_desc: str
    cardinality: int
    log_cardinality: float
    bound: float | None = None
    rank: int = 0
    factors: tuple["NetResult", "NetResult"] | None = None
    worst_gap: float = math.nan
    _tree: cKDTree | None = field(default=None, repr=False)

    @property
    def bound_ok(self) -> bool:
        return self.bound is None or self.log_cardinality <= self.bound + 1e-12

    def _kdtree(self) -> cKDTree:
        if self._tree is None:
            pts = self.points.reshape(len(self.points), -1)
            self._tree = cKDTree(pts)
        return self._tree

    def distances(self, samples: np.ndarray) -> np.ndarray:
        """Distance from each sample to the net (an upper bound for low-rank nets)."""
        if self.factors is None:
            flat = np.asarray(samples, dtype=float).reshape(len(samples), -1)
            dist, _ = self._kdtree().query(flat)
            return dist
        return _lowrank_distances(self, samples)

    def nearest_distance(self, point: np.ndarray) -> float:
        return float(self.distances(np.asarray(point, dtype=float)[None])[0])

    def materialize(self) -> np.ndarray:
        if self.factors is None:
            return self.points
        if self.cardinality > MATERIALIZE_MAX:
            raise ResourceError(f"net has {self.cardinality} points, refusing to materialize")
        mu_net, sphere = self.factors
        atoms = np.einsum("m,fi,fj->mfij", mu_net.points, sphere.points, sphere.points)
        atoms = atoms.reshape(-1, sphere.points.shape[1], sphere.points.shape[1])
        out = atoms
        for _ in range(self.rank - 1):
            out = (out[:, None] + atoms[None, :]).reshape(-1, *atoms.shape[1:])
        return out


def net_interval(a: float, b: float, eps: float) -> NetResult:
    """Uniform grid of [a, b] with spacing at most eps."""
    if eps <= 0 or not math.isfinite(eps):
        raise ArgumentError(f"eps must be positive, got {eps}")
    if not a <= b:
        raise ArgumentError(f"need a <= b, got [{a}, {b}]")
    count = max(1, math.ceil((b - a) / eps - 1e-12) + 1) if b > a else 1
    points = np.linspace(a, b, count) if count > 1 else np.array([0.5 * (a + b)])
    net = NetResult(
        points=points,
        mesh=eps,
        target_desc=f"[{a:g}, {b:g}]",
        cardinality=count,
        log_cardinality=math.log(count),
        bound=math.log(math.ceil((b - a) / eps) + 1),
    )
    net.worst_gap = 0.5 * (b - a) / (count - 1) if count > 1 else 0.5 * (b - a)
    return net


def _sphere_cap_fraction(n: int, chord: float) -> float:
    """Normalized area of a chordal cap of the unit sphere in R^n."""
    if chord >= 2.0:
        return 1.0
    theta = 2.0 * math.asin(chord / 2.0)
    half = 0.5 * betainc((n - 1) / 2.0, 0.5, math.sin(theta) ** 2)
    return half if theta <= math.pi / 2 else 1.0 - half


def sample_sphere(n: int, size: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((size, n))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def greedy_separated(pool: np.ndarray, eps: float) -> np.ndarray:
    """Maximal eps-separated subset of ``pool``, scanning in pool order."""
    tree = cKDTree(pool)
    covered = np.zeros(len(pool), dtype=bool)
    chosen = []
    for i in range(len(pool)):
        if covered[i]:
            continue
        chosen.append(i)
        covered[tree.query_ball_point(pool[i], eps)] = True
    return pool[chosen]


def net_sphere(n: int, eps: float, rng: np.random.Generator) -> NetResult:
    """Greedy eps-net of the unit sphere S^{n-1}, verified on fresh samples."""
    if n < SPHERE_MIN_DIM:
        raise ArgumentError(f"sphere nets need n >= {SPHERE_MIN_DIM}, got {n}")
    if n > SPHERE_MAX_DIM:
        raise ResourceError(f"sphere nets are limited to n <= {SPHERE_MAX_DIM}, got {n}")
    if eps <= 0 or not math.isfinite(eps):
        raise ArgumentError(f"eps must be positive, got {eps}")

    bound = n * math.log(12.0 / eps) if eps < 12.0 else 0.0
    desc = f"S^{n - 1} in R^{n}"
    if eps >= 2.0:
        pole = np.zeros((1, n))
        pole[0, 0] = 1.0
        return NetResult(pole, eps, desc, 1, 0.0, bound, worst_gap=2.0)

    seed = seed_from_rng(rng)
    poles = np.vstack([np.eye(n), -np.eye(n)])
    pool_size = max(POOL_MIN, math.ceil(POOL_FACTOR / _sphere_cap_fraction(n, eps / 2.0)))
    if pool_size > POOL_MAX:
        raise ResourceError(
            f"sphere net (n={n}, eps={eps}) needs a pool of {pool_size} points (limit {POOL_MAX})"
        )
    pool = np.vstack([poles, sample_sphere(n, pool_size, derive_rng(seed, STREAM_POOL, 0))])
    points = greedy_separated(pool, eps)

    # uncovered test points are eps-far from every point, so adding them keeps separation
    for round_ in range(1, REPAIR_ROUNDS + 1):
        trial = sample_sphere(n, VERIFY_SAMPLES, derive_rng(seed, STREAM_POOL, round_))
        dist, _ = cKDTree(points).query(trial)
        missed = trial[dist > eps]
        if len(missed) == 0:
            break
        points = np.vstack([points, greedy_separated(missed, eps)])
    logger.debug("sphere net n=%d eps=%g: %d points from pool %d", n, eps, len(points), pool_size)

    net = NetResult(points, eps, desc, len(points), math.log(len(points)), bound)
    fresh = sample_sphere(n, VERIFY_SAMPLES, derive_rng(seed, STREAM_VERIFY, 0))
    verify_net(net, fresh)
    return net


def verify_net(net: NetResult, samples: np.ndarray) -> float:
    """Check every sample lies within the mesh; returns the worst gap."""
    dist = net.distances(samples)
    worst = int(np.argmax(dist))
    net.worst_gap = float(dist[worst])
    if net.worst_gap > net.mesh * (1.0 + 1e-12):
        raise ConstructionError(
            f"net of {net.target_desc} misses a sample by {net.worst_gap:.6g} > mesh {net.mesh:g}",
            worst_gap=net.worst_gap,
            worst_point=np.asarray(samples[worst]),
        )
    return net.worst_gap


def sample_lowrank(
    n: int, k: int, size: int, rng: np.random.Generator, unit_norm: bool = False
) -> np.ndarray:
    """Random symmetric matrices of rank <= k and operator norm <= 1."""
    g = rng.standard_normal((size, n, k))
    q, _ = np.linalg.qr(g)
    mu = rng.uniform(-1.0, 1.0, (size, k))
    if unit_norm:
        mu = mu / np.max(np.abs(mu), axis=1, keepdims=True)
    return np.einsum("sik,sk,sjk->sij", q, mu, q)


def _lowrank_distances(net: NetResult, samples: np.ndarray) -> np.ndarray:
    """Operator-norm distance from each sample to its rounded net element."""
    mu_net, sphere = net.factors
    samples = np.asarray(samples, dtype=float)
    size, n, _ = samples.shape
    k = net.rank

    vals, vecs = np.linalg.eigh(samples)
    top = np.argsort(-np.abs(vals), axis=1, kind="stable")[:, :k]
    mu = np.take_along_axis(vals, top, axis=1)
    u = np.take_along_axis(vecs, top[:, None, :], axis=2)

    grid = mu_net.points
    mu_r = grid[np.argmin(np.abs(mu[..., None] - grid), axis=-1)]

    flat = np.transpose(u, (0, 2, 1)).reshape(-1, n)
    tree = sphere._kdtree()
    d_plus, i_plus = tree.query(flat)
    d_minus, i_minus = tree.query(-flat)
    nearest = np.where(d_plus <= d_minus, i_plus, i_minus)
    v = sphere.points[nearest].reshape(size, k, n)

    approx = np.einsum("ski,sk,skj->sij", v, mu_r, v)
    diff = np.linalg.eigvalsh(samples - approx)
    return np.max(np.abs(diff), axis=1)


def lowrank_log_bound(n: int, k: int, eps: float) -> float:
    """2nk log(12k/eps): log-cardinality bound for nets of rank-k unit operator balls."""
    return 2.0 * n * k * math.log(12.0 * k / eps)


def net_lowrank(n: int, k: int, eps: float, rng: np.random.Generator) -> NetResult:
    """Net of {Y symmetric : rank Y <= k, ||Y|| <= 1} in operator norm.

    Elements are sums of k terms mu v v^T with mu from an eps/2k grid of
    [-1, 1] and v from an eps/4k net of the sphere.
    """
    if not 0.0 < eps < 1.0:
        raise ArgumentError(f"eps must lie in (0, 1), got {eps}")
    if n < 1 or k < 1 or k > n:
        raise ArgumentError(f"need 1 <= k <= n, got n={n}, k={k}")
    if n > LOWRANK_MAX_N or k > LOWRANK_MAX_K:
        raise ResourceError(
            f"low-rank nets are limited to n <= {LOWRANK_MAX_N}, k <= {LOWRANK_MAX_K}; got n={n}, k={k}"
        )
    seed = seed_from_rng(rng)
    mu_net = net_interval(-1.0, 1.0, eps / (2 * k))
    if n == 1:
        sphere = NetResult(np.array([[1.0]]), eps / (4 * k), "S^0", 1, 0.0)
    else:
        sphere = net_sphere(n, eps / (4 * k), derive_rng(seed, STREAM_POOL, 99))

    atoms = mu_net.cardinality * sphere.cardinality
    net = NetResult(
        points=None,
        mesh=eps,
        target_desc=f"rank<={k} unit operator ball in H_{n}",
        cardinality=atoms**k,
        log_cardinality=k * math.log(atoms),
        bound=lowrank_log_bound(n, k, eps),
        rank=k,
        factors=(mu_net, sphere),
    )
    samples = sample_lowrank(n, k, VERIFY_SAMPLES, derive_rng(seed, STREAM_VERIFY, 1))
    verify_net(net, samples)
    return net
