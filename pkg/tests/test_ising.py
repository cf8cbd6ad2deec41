"""Tests for Ising problems, exact partition functions, mean-field and certificates."""

import itertools
import math

import numpy as np
import pytest
from scipy.optimize import brentq

from ldp_lab.core.exceptions import ArgumentError, CertificationError, ResourceError
from ldp_lab.ising.certificate import spectral_diagnostics, theorem1_certificate
from ldp_lab.ising.couplings import (
    adjacency,
    family_coupling,
    family_graph,
    load_coupling_text,
    random_sparse_coupling,
)
from ldp_lab.ising.meanfield import fixed_point_residual, initial_points, meanfield_sup
from ldp_lab.ising.partition import exact_log_partition, spin_block
from ldp_lab.ising.problem import IsingProblem
from ldp_lab.linalg.symmetric import SymMatrix


def two_spin_problem(j=1.0):
    return IsingProblem.from_array([[0.0, j], [j, 0.0]])


def brute_log_partition(problem):
    n = problem.n
    terms = [problem.energy(s) for s in itertools.product((-1.0, 1.0), repeat=n)]
    return math.log(math.fsum(math.exp(t) for t in terms)) - n * math.log(2.0)


def test_problem_requires_zero_diagonal():
    with pytest.raises(ArgumentError):
        IsingProblem.from_array([[1.0, 0.5], [0.5, 0.0]])


def test_objective_at_corner_and_origin():
    problem = two_spin_problem()
    assert problem.objective([0.0, 0.0]) == 0.0
    assert problem.objective([1.0, 1.0]) == pytest.approx(2.0 - 2 * math.log(2.0))


def test_spin_block_enumerates_all_configurations():
    block = spin_block(0, 8, 3)
    assert block.shape == (8, 3)
    assert len({tuple(row) for row in block}) == 8
    assert set(np.unique(block)) == {-1.0, 1.0}


def test_exact_log_partition_matches_brute_force(rng):
    assert exact_log_partition(IsingProblem(SymMatrix.zeros(1))) == pytest.approx(0.0, abs=1e-15)
    for n in (2, 3, 5):
        problem = IsingProblem(random_sparse_coupling(n, rng, density=0.8, scale=1.0))
        assert exact_log_partition(problem) == pytest.approx(brute_log_partition(problem), abs=1e-12)


def test_exact_log_partition_streams_chunks():
    assert exact_log_partition(IsingProblem(SymMatrix.zeros(17))) == pytest.approx(0.0, abs=1e-12)


def test_exact_log_partition_limit():
    with pytest.raises(ResourceError):
        exact_log_partition(IsingProblem(SymMatrix.zeros(25)))


def test_two_spin_analytic_case():
    problem = two_spin_problem()
    assert exact_log_partition(problem) == pytest.approx(math.log(math.cosh(2.0)), abs=1e-12)
    assert exact_log_partition(problem) == pytest.approx(1.32511, abs=1e-4)

    # symmetric stationary point x = tanh(2x) found by bisection
    x = brentq(lambda v: v - math.tanh(2.0 * v), 0.5, 1.0, xtol=1e-15)
    oracle = problem.objective([x, x])
    solution = meanfield_sup(problem, 8, np.random.default_rng(0))
    assert solution.value == pytest.approx(oracle, abs=1e-4)
    assert solution.value == pytest.approx(0.65313, abs=1e-4)
    assert solution.converged
    assert fixed_point_residual(problem, solution.x_star) < 1e-8


def test_meanfield_gap_vanishes_as_coupling_shrinks():
    base = IsingProblem(family_coupling("cycle", 6, scale=0.5))
    gaps = []
    for c in (1.0, 0.1, 0.01):
        problem = base.scaled(c)
        sup = meanfield_sup(problem, 8, np.random.default_rng(2)).value
        gaps.append(exact_log_partition(problem) - sup)
    assert all(g >= -1e-9 for g in gaps)
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 1e-3


def test_initial_points_are_deterministic():
    problem = IsingProblem(family_coupling("cycle", 5, scale=0.3))
    a = initial_points(problem, 6, seed=3)
    b = initial_points(problem, 6, seed=3)
    assert len(a) == 6
    np.testing.assert_array_equal(a[0], np.full(5, 0.5))
    for x, y in zip(a, b):
        np.testing.assert_array_equal(x, y)


def test_meanfield_thread_count_does_not_change_result():
    problem = IsingProblem(family_coupling("star", 10, scale=0.2))
    one = meanfield_sup(problem, 16, np.random.default_rng(7), threads=1)
    four = meanfield_sup(problem, 16, np.random.default_rng(7), threads=4)
    assert one.value == four.value
    np.testing.assert_array_equal(one.x_star, four.x_star)


def test_meanfield_rejects_zero_starts():
    with pytest.raises(ArgumentError):
        meanfield_sup(two_spin_problem(), 0, np.random.default_rng(0))


def test_sandwich_on_random_couplings():
    for i in range(50):
        n = 2 + i % 9
        rng = np.random.default_rng(1000 + i)
        problem = IsingProblem(random_sparse_coupling(n, rng, density=0.5, scale=1.0))
        cert = theorem1_certificate(problem, 0.5, starts=8, seed=i)
        assert cert.sup <= cert.log_z + 1e-9, i
        assert cert.log_z <= cert.sup + cert.net_log_card + 0.5 + 1e-9, i
        assert cert.bound_ok and cert.lower_ok


def test_certificate_pushforward_net_for_two_spins():
    cert = theorem1_certificate(two_spin_problem(0.5), 0.5, seed=1)
    assert cert.net_method == "pushforward"
    assert cert.net_radius == pytest.approx(0.5 / (2 * math.sqrt(2)))
    assert cert.bound_ok
    assert cert.mean_width > 0


@pytest.mark.parametrize("n", [5, 7, 9])
def test_certificate_box_net_is_materialized(n):
    problem = IsingProblem(SymMatrix.constant_off_diagonal(n, 0.3))
    cert = theorem1_certificate(problem, 0.5, starts=8, seed=n)
    assert cert.net_method == "box"
    assert 1 <= cert.net_points
    assert math.log(cert.net_points) <= cert.net_log_card + 1e-9
    assert cert.bound_ok and cert.lower_ok


def test_certificate_net_points_for_pushforward():
    cert = theorem1_certificate(two_spin_problem(0.5), 0.5, seed=1)
    assert cert.net_log_card == pytest.approx(math.log(cert.net_points))


def test_certificate_rejects_coarse_mesh():
    with pytest.raises(CertificationError):
        theorem1_certificate(two_spin_problem(), 0.5, mesh=1.0)


def test_certificate_limits():
    with pytest.raises(ArgumentError):
        theorem1_certificate(two_spin_problem(), 0.0)
    with pytest.raises(ResourceError):
        theorem1_certificate(IsingProblem(SymMatrix.zeros(11)), 0.5)


def test_graph_families():
    assert family_graph("star", 5).number_of_edges() == 4
    assert family_graph("cycle", 6).number_of_edges() == 6
    assert family_graph("complete", 4).number_of_edges() == 6
    er = adjacency(family_graph("erdos-renyi", 8, p=0.5, seed=3))
    assert er.has_zero_diagonal()
    with pytest.raises(ArgumentError):
        family_graph("torus", 4)


def test_family_coupling_scales():
    coupling = family_coupling("complete", 3, scale=0.25)
    assert coupling.data[0, 1] == 0.25
    assert coupling.has_zero_diagonal()


def test_load_coupling_text(tmp_path):
    path = tmp_path / "coupling.txt"
    path.write_text("0, 0.5, 0\n0.5 0 0.25\n0 0.25 0\n")
    coupling = load_coupling_text(path)
    assert coupling.n == 3
    assert coupling.data[1, 2] == 0.25

    bad = tmp_path / "bad.txt"
    bad.write_text("0 1 2\n1 0 3\n")
    with pytest.raises(ArgumentError):
        load_coupling_text(bad)


def test_spectral_diagnostics():
    diag = spectral_diagnostics(family_coupling("cycle", 6))
    assert diag.op_norm == pytest.approx(2.0)
    assert diag.hs_norm == pytest.approx(2.0)
    assert diag.zero_fraction == 0.0

    star = spectral_diagnostics(family_coupling("star", 5))
    assert star.zero_fraction == pytest.approx(0.6)
    assert star.esd_quantiles[1.0] == pytest.approx(2.0)
