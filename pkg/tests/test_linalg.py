"""Tests for symmetric matrices and spectral routines."""

import math

import numpy as np
import pytest

from ldp_lab.core.exceptions import ArgumentError
from ldp_lab.linalg.spectral import (
    eigen_symmetric,
    eigenvalues,
    matrix_power_trace,
    negative_part,
    positive_part,
    spectral_trace_power,
    trace_power,
)
from ldp_lab.linalg.symmetric import SymMatrix


def random_sym(n, rng):
    g = rng.standard_normal((n, n))
    return SymMatrix(g + g.T)


def test_construction_symmetrizes_and_freezes():
    m = SymMatrix(np.array([[1.0, 2.0], [4.0, 3.0]]))
    assert m.data[0, 1] == 3.0
    with pytest.raises(ValueError):
        m.data[0, 0] = 5.0


def test_construction_rejects_bad_shapes():
    with pytest.raises(ArgumentError):
        SymMatrix(np.zeros((2, 3)))
    with pytest.raises(ArgumentError):
        SymMatrix(np.zeros((0, 0)))
    with pytest.raises(ArgumentError):
        SymMatrix.from_array([[0.0, 1.0], [2.0, 0.0]])


def test_from_upper_roundtrip():
    m = SymMatrix.from_upper(3, [1.0, 2.0, 3.0], diagonal=[7.0, 8.0, 9.0])
    assert m.data.tolist() == [[7.0, 1.0, 2.0], [1.0, 8.0, 3.0], [2.0, 3.0, 9.0]]
    assert m.upper_entries().tolist() == [1.0, 2.0, 3.0]
    with pytest.raises(ArgumentError):
        SymMatrix.from_upper(3, [1.0, 2.0])


def test_norms_and_arithmetic():
    m = SymMatrix.constant_off_diagonal(4, 1.0)
    assert m.has_zero_diagonal()
    assert m.operator_norm() == pytest.approx(3.0)
    assert m.frobenius_norm() == pytest.approx(math.sqrt(12.0))
    assert (m + SymMatrix.identity(4)).trace() == 4.0
    assert (m - m).frobenius_norm() == 0.0
    assert m.scaled(2.0).data[0, 1] == 2.0


@pytest.mark.parametrize("method", ["jacobi", "lapack"])
def test_eigen_decomposition(method, rng):
    y = random_sym(8, rng)
    spec = eigen_symmetric(y, method=method)
    assert np.all(np.diff(spec.eigenvalues) <= 0)
    assert spec.orthogonality_error() < 1e-10
    assert spec.residual(y) < 1e-10 * max(1.0, y.frobenius_norm())


def test_jacobi_matches_lapack(rng):
    y = random_sym(12, rng)
    jac = eigen_symmetric(y, method="jacobi").eigenvalues
    lap = np.sort(np.linalg.eigvalsh(y.data))[::-1]
    np.testing.assert_allclose(jac, lap, atol=1e-10)


def test_eigen_unknown_method():
    with pytest.raises(ArgumentError):
        eigen_symmetric(SymMatrix.identity(2), method="qr")


def test_eigen_one_by_one():
    spec = eigen_symmetric(SymMatrix(np.array([[-2.5]])))
    assert spec.eigenvalues.tolist() == [-2.5]
    assert spec.eigenvectors.tolist() == [[1.0]]


def test_eigenvalues_large_uses_lapack(rng):
    y = random_sym(40, rng)
    vals = eigenvalues(y)
    assert len(vals) == 40
    assert np.all(np.diff(vals) <= 0)


def test_trace_power_complete_graph_exact():
    # tr((J - I)^3) = (n-1)^3 - (n-1)
    k5 = SymMatrix.constant_off_diagonal(5, 1.0)
    assert matrix_power_trace(k5, 3) == 60.0
    assert trace_power(k5, 4) == 4**4 + 4


def test_trace_power_paths_agree(rng):
    y = random_sym(10, rng)
    for d in (2, 3, 4, 5):
        direct = matrix_power_trace(y, d)
        spectral = spectral_trace_power(y, d)
        scale = float(np.sum(np.abs(np.linalg.eigvalsh(y.data)) ** d))
        assert spectral == pytest.approx(direct, abs=1e-10 * scale)
    assert trace_power(y, 2) == pytest.approx(y.frobenius_norm() ** 2, rel=1e-12)


def test_trace_power_rejects_bad_power():
    with pytest.raises(ArgumentError):
        trace_power(SymMatrix.identity(2), 0)
    with pytest.raises(ArgumentError):
        trace_power(SymMatrix.identity(2), 1.5)


def test_positive_negative_parts(rng):
    y = random_sym(6, rng)
    plus, minus = positive_part(y), negative_part(y)
    np.testing.assert_allclose((plus - minus).data, y.data, atol=1e-10)
    assert np.all(np.linalg.eigvalsh(plus.data) >= -1e-10)
    assert np.all(np.linalg.eigvalsh(minus.data) >= -1e-10)
    np.testing.assert_allclose(plus.data @ minus.data, 0.0, atol=1e-9)


def cofactor_det(a):
    n = len(a)
    if n == 1:
        return a[0][0]
    total = 0.0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in a[1:]]
        total += (-1) ** j * a[0][j] * cofactor_det(minor)
    return total


@pytest.mark.parametrize("method", ["jacobi", "lapack"])
class TestSpectralInvariants:
    def test_eigenvalue_sum_is_trace(self, method, rng):
        for n in (1, 3, 7, 40):
            y = random_sym(n, rng)
            values = eigen_symmetric(y, method=method).eigenvalues
            assert math.fsum(values) == pytest.approx(float(np.trace(y.data)), abs=1e-10 * n)

    def test_eigenvalue_product_is_cofactor_determinant(self, method, rng):
        for n in (1, 2, 3, 4):
            y = random_sym(n, rng)
            values = eigen_symmetric(y, method=method).eigenvalues
            det = cofactor_det(y.data.tolist())
            assert float(np.prod(values)) == pytest.approx(det, rel=1e-9, abs=1e-10)

    def test_small_perturbation_moves_eigenvalues_at_most_frobenius(self, method, rng):
        for n in (2, 5, 12):
            y = random_sym(n, rng)
            e = random_sym(n, rng).data * 1e-3
            before = eigen_symmetric(y, method=method).eigenvalues
            after = eigen_symmetric(SymMatrix(y.data + e), method=method).eigenvalues
            assert np.max(np.abs(after - before)) <= np.linalg.norm(e, "fro") + 1e-12

    @pytest.mark.parametrize(
        "arr,expected",
        [
            (np.diag([3.0, 1.0, 2.0]), [3.0, 2.0, 1.0]),
            (np.array([[0.0, 1.0], [1.0, 0.0]]), [1.0, -1.0]),
            (np.ones((4, 4)), [4.0, 0.0, 0.0, 0.0]),
        ],
    )
    def test_literal_spectra(self, method, arr, expected):
        spec = eigen_symmetric(SymMatrix(arr), method=method)
        np.testing.assert_allclose(spec.eigenvalues, expected, atol=1e-10)
        assert spec.residual(SymMatrix(arr)) < 1e-10
