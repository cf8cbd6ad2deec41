"""Tests for scalar laws, log-Laplace/Legendre transforms and tilts."""

import math

import numpy as np
import pytest
from scipy.optimize import minimize_scalar

from ldp_lab.core.exceptions import ArgumentError, BoundaryError, DomainError
from ldp_lab.measures.laws import LawFamily, ScalarLaw
from ldp_lab.measures.product import ProductLaw, product_legendre
from ldp_lab.measures.tilting import TiltedLaw, tightness_level, tightness_moment, tilted_samples
from ldp_lab.measures.transforms import (
    bernoulli_entropy,
    legendre,
    legendre_array,
    log_laplace,
    log_laplace_derivative,
    log_laplace_derivative_array,
    log_laplace_array,
    tilt_parameter,
)

LAWS = [
    ScalarLaw.rademacher(),
    ScalarLaw.bernoulli(0.3),
    ScalarLaw.uniform_sym(math.sqrt(3.0)),
    ScalarLaw.gaussian(1.0),
]


def test_parse_laws():
    assert ScalarLaw.parse("rademacher").family is LawFamily.RADEMACHER
    assert ScalarLaw.parse("bernoulli:0.1").param == 0.1
    assert ScalarLaw.parse("uniform").param == pytest.approx(math.sqrt(3.0))
    assert ScalarLaw.parse("Gaussian:2").variance == 2.0


def test_parse_rejects_unknown_family():
    with pytest.raises(ArgumentError):
        ScalarLaw.parse("cauchy")
    with pytest.raises(ArgumentError):
        ScalarLaw.parse("bernoulli:abc")


def test_invalid_parameters():
    with pytest.raises(DomainError):
        ScalarLaw.bernoulli(1.0)
    with pytest.raises(DomainError):
        ScalarLaw.uniform_sym(0.0)
    with pytest.raises(DomainError):
        ScalarLaw.gaussian(-1.0)


def test_unit_variance_defaults():
    for name in ("rademacher", "uniform", "gaussian"):
        law = ScalarLaw.parse(name)
        assert law.mean == 0.0
        assert law.variance == pytest.approx(1.0)


@pytest.mark.parametrize("law", LAWS, ids=lambda law: law.name)
def test_log_laplace_at_zero(law):
    assert log_laplace(law, 0.0) == pytest.approx(0.0, abs=1e-15)
    assert log_laplace_derivative(law, 0.0) == pytest.approx(law.mean, abs=1e-15)


@pytest.mark.parametrize("law", LAWS, ids=lambda law: law.name)
def test_legendre_duality(law):
    grid = np.linspace(-3.0, 3.0, 50)
    means = log_laplace_derivative_array(law, grid)
    expected = grid * means - log_laplace_array(law, grid)
    got = legendre_array(law, means)
    np.testing.assert_allclose(got, expected, rtol=1e-10, atol=1e-10)


@pytest.mark.parametrize("law", LAWS, ids=lambda law: law.name)
def test_legendre_vanishes_at_mean(law):
    assert legendre(law, law.mean) == pytest.approx(0.0, abs=1e-12)


def test_bernoulli_entropy_matches_grid_oracle():
    pairs = [(p, x) for p in (0.05, 0.2, 0.5, 0.7, 0.9) for x in (0.03, 0.25, 0.6, 0.97)]
    assert len(pairs) == 20
    for p, x in pairs:
        law = ScalarLaw.bernoulli(p)
        res = minimize_scalar(
            lambda lam: -(lam * x - log_laplace(law, lam)),
            bounds=(-40.0, 40.0),
            method="bounded",
            options={"xatol": 1e-12},
        )
        assert float(bernoulli_entropy(x, p)) == pytest.approx(-res.fun, abs=1e-8)


def test_legendre_boundary_values():
    rad = ScalarLaw.rademacher()
    assert legendre(rad, 1.0) == pytest.approx(math.log(2.0))
    assert legendre(rad, -1.0) == pytest.approx(math.log(2.0))
    assert legendre(rad, 1.5) == math.inf
    assert legendre(ScalarLaw.bernoulli(0.3), 1.0) == pytest.approx(math.log(1 / 0.3))
    assert legendre(ScalarLaw.uniform_sym(1.0), 1.0) == math.inf
    assert legendre(ScalarLaw.gaussian(), math.inf) == math.inf


def test_legendre_rejects_nan():
    with pytest.raises(DomainError):
        legendre(ScalarLaw.rademacher(), math.nan)


def test_log_laplace_rejects_non_finite():
    with pytest.raises(DomainError):
        log_laplace(ScalarLaw.gaussian(), math.inf)


@pytest.mark.parametrize("law", LAWS, ids=lambda law: law.name)
def test_midpoint_convexity(law):
    lo, hi = law.support
    lo, hi = max(lo, -2.0), min(hi, 2.0)
    xs = np.linspace(lo + 0.05 * (hi - lo), hi - 0.05 * (hi - lo), 21)
    vals = legendre_array(law, xs)
    mids = legendre_array(law, 0.5 * (xs[:-1] + xs[1:]))
    assert np.all(mids <= 0.5 * (vals[:-1] + vals[1:]) + 1e-12)

    lams = np.linspace(-3.0, 3.0, 21)
    lv = log_laplace_array(law, lams)
    lmid = log_laplace_array(law, 0.5 * (lams[:-1] + lams[1:]))
    assert np.all(lmid <= 0.5 * (lv[:-1] + lv[1:]) + 1e-12)


def test_uniform_small_tilt_is_smooth():
    law = ScalarLaw.uniform_sym(1.0)
    lams = np.array([1e-8, 1e-5, 1e-3, 0.1])
    # Lambda(lam) ~ lam^2 a^2 / 6 near zero
    np.testing.assert_allclose(log_laplace_array(law, lams)[:3], lams[:3] ** 2 / 6.0, rtol=1e-4)
    assert np.all(np.diff(log_laplace_derivative_array(law, lams)) > 0)


@pytest.mark.parametrize("law", LAWS, ids=lambda law: law.name)
def test_tilt_parameter_inverts_derivative(law):
    lo, hi = law.support
    for y in np.linspace(max(lo, -2.0), min(hi, 2.0), 9)[1:-1]:
        lam = tilt_parameter(law, float(y))
        assert log_laplace_derivative(law, lam) == pytest.approx(y, abs=1e-11)


def test_tilt_parameter_boundary():
    with pytest.raises(BoundaryError):
        tilt_parameter(ScalarLaw.rademacher(), 1.0)
    with pytest.raises(BoundaryError):
        tilt_parameter(ScalarLaw.bernoulli(0.4), 0.0)


@pytest.mark.parametrize("law", LAWS, ids=lambda law: law.name)
def test_tilted_law_exact_mean(law):
    lo, hi = law.support
    y = 0.4 if law.family is not LawFamily.BERNOULLI else 0.6
    tilt = TiltedLaw.from_mean(law, y)
    assert tilt.exact_mean() == pytest.approx(y, abs=1e-7)
    assert tilt.rate == pytest.approx(legendre(law, y), abs=1e-10)


@pytest.mark.parametrize("law", LAWS, ids=lambda law: law.name)
def test_tilted_samples_have_barycenter(law):
    tilt = TiltedLaw.from_parameter(law, 0.7)
    draws = tilted_samples(tilt, 200_000, np.random.default_rng(3))
    sem = math.sqrt(tilt.variance / len(draws))
    assert abs(draws.mean() - tilt.mean_y) < 4.0 * sem


@pytest.mark.parametrize("law", LAWS, ids=lambda law: law.name)
def test_tightness_moment_bound(law):
    est = tightness_moment(law, 0.5, 100_000, np.random.default_rng(11))
    assert est.bound == 4.0
    assert est.within_bound


def test_tightness_moment_rejects_alpha():
    with pytest.raises(ArgumentError):
        tightness_moment(ScalarLaw.rademacher(), 1.0, 10, np.random.default_rng(0))


def test_tightness_level():
    assert tightness_level(3, 10) == 36.0
    assert tightness_level(30, 10) == 120.0


def test_product_law_sums_coordinates():
    law = ProductLaw((ScalarLaw.rademacher(), ScalarLaw.gaussian(2.0)))
    x = np.array([0.5, 1.0])
    expected = legendre(ScalarLaw.rademacher(), 0.5) + 0.25
    assert product_legendre(law, x) == pytest.approx(expected)
    assert law.log_laplace([0.0, 1.0]) == pytest.approx(1.0)


def test_product_law_infinite_and_shape():
    law = ProductLaw.iid(ScalarLaw.rademacher(), 3)
    assert product_legendre(law, [0.0, 2.0, 0.0]) == math.inf
    with pytest.raises(ArgumentError):
        product_legendre(law, [0.0, 0.0])
