"""Explicit net certificates for the partition-function sandwich."""

import itertools
import logging
import math
from dataclasses import dataclass

import numpy as np

from ldp_lab.core.exceptions import ArgumentError, CertificationError, ResourceError
from ldp_lab.core.seeding import STREAM_SAMPLES, STREAM_VERIFY, derive_rng
from ldp_lab.ising.meanfield import DEFAULT_STARTS, meanfield_sup
from ldp_lab.ising.partition import exact_log_partition
from ldp_lab.ising.problem import IsingProblem
from ldp_lab.linalg.spectral import eigenvalues
from ldp_lab.nets.covering import greedy_separated
from ldp_lab.nets.mean_width import gaussian_mean_width

logger = logging.getLogger(__name__)

MAX_CERTIFY_N = 10
MAX_GRID_POINTS = 200_000
WIDTH_TRIALS = 2_000
BOX_SAMPLES = 4_096
BOUND_TOL = 1e-9
QUANTILE_LEVELS = (0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0)


@dataclass(frozen=True)
class IsingCertificate:
    n: int
    delta: float
    sup: float
    log_z: float
    net_log_card: float
    net_method: str
    net_points: int
    net_radius: float
    mean_width: float
    width_ratio: float

    @property
    def upper(self) -> float:
        return self.sup + self.net_log_card + self.delta

    @property
    def bound_ok(self) -> bool:
        """log Z <= sup + log|net| + delta."""
        return self.log_z <= self.upper + BOUND_TOL

    @property
    def lower_ok(self) -> bool:
        """sup <= log Z."""
        return self.sup <= self.log_z + BOUND_TOL


def _pushforward_net(two_a: np.ndarray, mesh: float, prune: float) -> np.ndarray:
    n = two_a.shape[0]
    m = math.ceil(2.0 / mesh) + 1 if mesh < math.inf else 1
    if m**n > MAX_GRID_POINTS:
        raise ResourceError(f"pushforward grid would have {m}^{n} points")
    axis = np.linspace(-1.0, 1.0, m) if m > 1 else np.zeros(1)
    grid = np.array(list(itertools.product(axis, repeat=n)))
    image = grid @ two_a
    return greedy_separated(image, prune)


def _box_cells(two_a: np.ndarray, radius: float) -> tuple[np.ndarray, np.ndarray, float]:
    n = two_a.shape[0]
    side = radius / math.sqrt(n)
    half_widths = np.abs(two_a).sum(axis=1)
    counts = np.maximum(1, np.ceil(2.0 * half_widths / side))
    return half_widths, counts, side


def _box_log_card(two_a: np.ndarray, radius: float) -> float:
    """log-size of a lattice net of the bounding box of 2A[-1, 1]^n.

    Cells have side radius / sqrt(n); one image point per cell meeting the
    image forms an internal net of that radius.
    """
    _, counts, _ = _box_cells(two_a, radius)
    return float(np.sum(np.log(counts)))


def _box_net_points(two_a: np.ndarray, radius: float, rng: np.random.Generator) -> np.ndarray:
    """Materialize the box net on sampled image points and check its coverage.

    Samples are the cube's vertices (all of them up to n = 10) plus uniform
    points. Each sample is snapped to its lattice cell and the first sample
    in a cell becomes that cell's net point.
    """
    n = two_a.shape[0]
    half_widths, counts, side = _box_cells(two_a, radius)
    vertices = np.array(list(itertools.product((-1.0, 1.0), repeat=n)))
    cube = np.vstack([vertices, rng.uniform(-1.0, 1.0, size=(BOX_SAMPLES, n))])
    image = cube @ two_a
    slack = 1e-9 * (1.0 + half_widths)
    if np.any(np.abs(image) > half_widths + slack):
        raise CertificationError("image point outside the bounding box of 2A[-1, 1]^n")
    idx = np.clip(np.floor((image + half_widths) / side), 0, counts - 1)
    _, first, inverse = np.unique(idx, axis=0, return_index=True, return_inverse=True)
    points = image[first]
    gaps = np.linalg.norm(image - points[inverse.reshape(-1)], axis=1)
    worst = float(gaps.max())
    if worst > radius * (1.0 + 1e-12):
        raise CertificationError(f"box net leaves a sample {worst:.4g} from its cell point, radius {radius:.4g}")
    return points


def theorem1_certificate(
    problem: IsingProblem,
    delta: float,
    mesh: float | None = None,
    starts: int = DEFAULT_STARTS,
    seed: int = 0,
    threads: int = 1,
) -> IsingCertificate:
    """Compute both sides of log Z <= sup{f - Lambda*} + log|net| + delta.

    The net is a delta/D-net of grad f(K) = 2A[-1, 1]^n with D = 2 sqrt(n).
    With ``mesh`` unset it comes from a coordinate grid pushed through 2A
    when that grid is small, else from a lattice over the image's bounding
    box. The box net is counted from its lattice and materialized on sampled
    image points, which checks its coverage radius. An explicit ``mesh`` is
    the grid spacing and must certify the radius.
    """
    n = problem.n
    if delta <= 0:
        raise ArgumentError(f"delta must be positive, got {delta}")
    if n > MAX_CERTIFY_N:
        raise ResourceError(f"certificates limited to n <= {MAX_CERTIFY_N}, got {n}")

    two_a = 2.0 * problem.a
    diameter = 2.0 * math.sqrt(n)
    radius = delta / diameter
    prune = radius / 2.0
    op = float(np.max(np.abs(eigenvalues(problem.coupling)))) * 2.0

    # grid spacing h moves image points by at most op * sqrt(n) * h / 2
    auto_mesh = radius / (op * math.sqrt(n)) if op > 0 else math.inf
    if mesh is not None:
        if mesh <= 0:
            raise ArgumentError(f"mesh must be positive, got {mesh}")
        achieved = op * math.sqrt(n) * mesh / 2.0 + prune
        if achieved > radius * (1.0 + 1e-12):
            raise CertificationError(
                f"grid spacing {mesh:g} only certifies radius {achieved:.4g} > delta/D = {radius:.4g}"
            )
        grid_mesh = mesh
    else:
        grid_mesh = auto_mesh

    grid_axis = math.ceil(2.0 / grid_mesh) + 1 if grid_mesh < math.inf else 1
    if mesh is not None or grid_axis**n <= MAX_GRID_POINTS:
        net = _pushforward_net(two_a, grid_mesh, prune)
        net_log_card = math.log(len(net))
        net_points = len(net)
        method = "pushforward"
    else:
        net_log_card = _box_log_card(two_a, radius)
        net_points = len(_box_net_points(two_a, radius, derive_rng(seed, STREAM_VERIFY, 0)))
        if math.log(net_points) > net_log_card + BOUND_TOL:
            raise CertificationError(f"box net has {net_points} occupied cells, more than its bound")
        method = "box"
        logger.info(
            "certificate n=%d: %d^%d grid too large, using box net (%d sampled cells)",
            n, grid_axis, n, net_points,
        )
    logger.debug("certificate n=%d delta=%g: %s net, log|net|=%.4f", n, delta, method, net_log_card)

    sup = meanfield_sup(problem, starts, derive_rng(seed, STREAM_SAMPLES, 0), threads=threads).value
    log_z = exact_log_partition(problem)

    width = gaussian_mean_width(
        problem.coupling.scaled(2.0), WIDTH_TRIALS, derive_rng(seed, STREAM_SAMPLES, 1)
    ).mean
    ratio = (log_z - sup) / (n ** (1 / 3) * width ** (2 / 3)) if width > 0 else math.nan

    return IsingCertificate(
        n=n,
        delta=delta,
        sup=sup,
        log_z=log_z,
        net_log_card=net_log_card,
        net_method=method,
        net_points=net_points,
        net_radius=radius,
        mean_width=width,
        width_ratio=ratio,
    )


@dataclass(frozen=True)
class SpectralDiagnostics:
    esd_quantiles: dict[float, float]
    hs_norm: float
    op_norm: float
    zero_fraction: float


def spectral_diagnostics(a) -> SpectralDiagnostics:
    """ESD quantiles, n^-1 tr A^2 and ||A|| as mean-field validity diagnostics."""
    lam = eigenvalues(a)
    n = a.n
    op = float(np.max(np.abs(lam)))
    quantiles = {q: float(np.quantile(lam, q)) for q in QUANTILE_LEVELS}
    scale = max(1.0, op)
    return SpectralDiagnostics(
        esd_quantiles=quantiles,
        hs_norm=float(np.sum(a.data * a.data)) / n,
        op_norm=op,
        zero_fraction=float(np.mean(np.abs(lam) <= 1e-9 * scale)),
    )
