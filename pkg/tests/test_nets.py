"""Tests for eps-nets and Gaussian mean-width."""

import math

import numpy as np
import pytest
from scipy.spatial.distance import pdist

from ldp_lab.core.exceptions import ArgumentError, ConstructionError, ResourceError
from ldp_lab.linalg.symmetric import SymMatrix
from ldp_lab.nets.covering import (
    NetResult,
    lowrank_log_bound,
    net_interval,
    net_lowrank,
    net_sphere,
    sample_lowrank,
    sample_sphere,
    verify_net,
)
from ldp_lab.nets.mean_width import gaussian_mean_width, mean_width_upper_bound


def test_interval_net():
    net = net_interval(-1.0, 1.0, 0.1)
    assert net.cardinality == 21
    assert net.worst_gap == pytest.approx(0.05)
    assert net.bound_ok
    grid = np.linspace(-1.0, 1.0, 1001)[:, None]
    assert net.distances(grid).max() <= 0.05 + 1e-12


def test_interval_net_degenerate_and_invalid():
    assert net_interval(0.5, 0.5, 0.1).cardinality == 1
    with pytest.raises(ArgumentError):
        net_interval(0.0, 1.0, 0.0)
    with pytest.raises(ArgumentError):
        net_interval(1.0, 0.0, 0.1)


def test_sphere_net_covers_and_separates():
    net = net_sphere(3, 0.5, np.random.default_rng(1))
    assert net.worst_gap <= 0.5
    np.testing.assert_allclose(np.linalg.norm(net.points, axis=1), 1.0)
    assert pdist(net.points).min() > 0.5
    assert net.log_cardinality <= 3 * math.log(12 / 0.5)


def test_sphere_net_large_eps_is_one_point():
    net = net_sphere(4, 2.5, np.random.default_rng(0))
    assert net.cardinality == 1


def test_sphere_net_limits():
    with pytest.raises(ArgumentError):
        net_sphere(1, 0.5, np.random.default_rng(0))
    with pytest.raises(ResourceError):
        net_sphere(9, 0.5, np.random.default_rng(0))


def test_sphere_net_is_reproducible():
    a = net_sphere(3, 0.6, np.random.default_rng(5))
    b = net_sphere(3, 0.6, np.random.default_rng(5))
    np.testing.assert_array_equal(a.points, b.points)


def test_nearest_distance_single_point():
    net = net_interval(-1.0, 1.0, 0.1)
    assert net.nearest_distance(np.array(0.03)) == pytest.approx(0.03)
    assert net.nearest_distance(np.array(1.0)) == pytest.approx(0.0, abs=1e-12)


def test_verify_net_reports_worst_gap():
    net = NetResult(np.array([[1.0, 0.0]]), 0.1, "S^1", 1, 0.0)
    samples = sample_sphere(2, 100, np.random.default_rng(0))
    with pytest.raises(ConstructionError) as exc:
        verify_net(net, samples)
    assert exc.value.worst_gap > 0.1


@pytest.mark.parametrize("n,k,eps", [(2, 1, 0.5), (3, 1, 0.6), pytest.param(4, 2, 0.8, marks=pytest.mark.slow)])
def test_lowrank_net_bound_and_coverage(n, k, eps):
    net = net_lowrank(n, k, eps, np.random.default_rng(2024))
    assert net.log_cardinality <= lowrank_log_bound(n, k, eps)
    assert net.bound_ok
    assert net.worst_gap <= eps
    fresh = sample_lowrank(n, k, 2000, np.random.default_rng(99), unit_norm=True)
    assert net.distances(fresh).max() <= eps


def test_lowrank_log_bound_value():
    assert lowrank_log_bound(2, 1, 0.5) == pytest.approx(4 * math.log(24))


def test_lowrank_net_guards():
    with pytest.raises(ArgumentError):
        net_lowrank(2, 1, 1.0, np.random.default_rng(0))
    with pytest.raises(ArgumentError):
        net_lowrank(2, 3, 0.5, np.random.default_rng(0))
    with pytest.raises(ResourceError):
        net_lowrank(7, 1, 0.5, np.random.default_rng(0))


def test_lowrank_samples_are_in_the_ball(rng):
    samples = sample_lowrank(4, 2, 50, rng)
    for s in samples:
        vals = np.linalg.eigvalsh(s)
        assert np.max(np.abs(vals)) <= 1.0 + 1e-12
        assert np.sum(np.abs(vals) > 1e-10) <= 2


def test_mean_width_identity():
    n = 5
    est = gaussian_mean_width(SymMatrix.identity(n), 20_000, np.random.default_rng(8))
    assert abs(est.mean - n * math.sqrt(2 / math.pi)) < 4 * est.std_err
    assert est.mean <= mean_width_upper_bound(SymMatrix.identity(n))


def test_mean_width_of_zero_is_zero():
    est = gaussian_mean_width(SymMatrix.zeros(4), 500, np.random.default_rng(0))
    assert est.mean == 0.0
    assert est.std_err == 0.0
    assert mean_width_upper_bound(SymMatrix.zeros(4)) == 0.0


def test_mean_width_below_hilbert_schmidt_bound(rng):
    g = rng.standard_normal((6, 6))
    a = SymMatrix(g + g.T)
    est = gaussian_mean_width(a, 5000, np.random.default_rng(3))
    assert est.mean <= mean_width_upper_bound(a) + 3 * est.std_err


def test_mean_width_is_sign_symmetric(rng):
    g = rng.standard_normal((5, 5))
    a = SymMatrix(g + g.T)
    minus_a = SymMatrix(-a.data)
    same_stream = gaussian_mean_width(minus_a, 2000, np.random.default_rng(4))
    assert same_stream.mean == gaussian_mean_width(a, 2000, np.random.default_rng(4)).mean
    plus = gaussian_mean_width(a, 5000, np.random.default_rng(5))
    minus = gaussian_mean_width(minus_a, 5000, np.random.default_rng(6))
    assert abs(plus.mean - minus.mean) <= 3 * math.hypot(plus.std_err, minus.std_err)


def test_mean_width_needs_trials():
    with pytest.raises(ArgumentError):
        gaussian_mean_width(SymMatrix.identity(2), 10, np.random.default_rng(0))
