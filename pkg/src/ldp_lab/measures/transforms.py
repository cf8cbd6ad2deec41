"""Log-Laplace transforms, their derivatives, Legendre transforms and tilts.

All array functions are vectorised over numpy input. The scalar entry points
(``log_laplace``, ``legendre``, ``tilt_parameter``) validate their argument
and return plain floats.
"""

import logging
import math

import numpy as np
from scipy.special import expit, logit, xlogy

from ldp_lab.core.exceptions import BoundaryError, DomainError, NumericalError
from ldp_lab.measures.laws import LawFamily, ScalarLaw

logger = logging.getLogger(__name__)

MAX_NEWTON_ITER = 100
MAX_BRACKET_DOUBLINGS = 200
TILT_TOL = 1e-12

# |a*lambda| below which log(sinh u / u) switches to its Taylor series
UNIFORM_TAYLOR_CUTOFF = 1e-4
# |a*lambda| below which the Langevin function and its derivative use series
LANGEVIN_SERIES_CUTOFF = 0.05

LOG2 = math.log(2.0)


def _check_finite(value, what: str) -> None:
    if not np.all(np.isfinite(value)):
        raise DomainError(f"{what} must be finite, got {value}")


def _log_sinhc(u: np.ndarray) -> np.ndarray:
    """log(sinh u / u), equal to 0 at u = 0."""
    au = np.abs(u)
    u2 = au * au
    series = u2 * (1 / 6 - u2 * (1 / 180 - u2 * (1 / 2835 - u2 * (1 / 37800 - u2 / 467775))))
    with np.errstate(divide="ignore", invalid="ignore"):
        closed = au + np.log(-np.expm1(-2.0 * au)) - LOG2 - np.log(au)
    return np.where(au < UNIFORM_TAYLOR_CUTOFF, series, closed)


def _langevin(u: np.ndarray) -> np.ndarray:
    """coth u - 1/u."""
    u2 = u * u
    series = u * (1 / 3 - u2 * (1 / 45 - u2 * (2 / 945 - u2 * (1 / 4725 - u2 * 2 / 93555))))
    with np.errstate(divide="ignore", invalid="ignore"):
        closed = 1.0 / np.tanh(u) - 1.0 / u
    return np.where(np.abs(u) < LANGEVIN_SERIES_CUTOFF, series, closed)


def _langevin_prime(u: np.ndarray) -> np.ndarray:
    """1/u^2 - 1/sinh^2 u."""
    au = np.abs(u)
    u2 = au * au
    series = 1 / 3 - u2 * (1 / 15 - u2 * (2 / 189 - u2 / 675))
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        closed = 1.0 / u2 - np.where(au > 350.0, 0.0, 1.0 / np.sinh(np.minimum(au, 350.0)) ** 2)
    return np.where(au < LANGEVIN_SERIES_CUTOFF, series, closed)


def log_laplace_array(law: ScalarLaw, lam) -> np.ndarray:
    lam = np.asarray(lam, dtype=float)
    match law.family:
        case LawFamily.RADEMACHER:
            return np.logaddexp(lam, -lam) - LOG2
        case LawFamily.BERNOULLI:
            return np.logaddexp(math.log1p(-law.param), math.log(law.param) + lam)
        case LawFamily.UNIFORM_SYM:
            return _log_sinhc(law.param * lam)
        case LawFamily.GAUSSIAN:
            return 0.5 * law.param * lam * lam


def log_laplace_derivative_array(law: ScalarLaw, lam) -> np.ndarray:
    lam = np.asarray(lam, dtype=float)
    match law.family:
        case LawFamily.RADEMACHER:
            return np.tanh(lam)
        case LawFamily.BERNOULLI:
            return expit(lam + logit(law.param))
        case LawFamily.UNIFORM_SYM:
            return law.param * _langevin(law.param * lam)
        case LawFamily.GAUSSIAN:
            return law.param * lam


def log_laplace_second_derivative_array(law: ScalarLaw, lam) -> np.ndarray:
    lam = np.asarray(lam, dtype=float)
    match law.family:
        case LawFamily.RADEMACHER:
            return 1.0 - np.tanh(lam) ** 2
        case LawFamily.BERNOULLI:
            q = expit(lam + logit(law.param))
            return q * (1.0 - q)
        case LawFamily.UNIFORM_SYM:
            return law.param**2 * _langevin_prime(law.param * lam)
        case LawFamily.GAUSSIAN:
            return np.full_like(lam, law.param)


def log_laplace(law: ScalarLaw, lam: float) -> float:
    """Lambda(lam) = log E exp(lam X)."""
    _check_finite(lam, "lambda")
    return float(log_laplace_array(law, lam))


def log_laplace_derivative(law: ScalarLaw, lam: float) -> float:
    _check_finite(lam, "lambda")
    return float(log_laplace_derivative_array(law, lam))


def log_laplace_second_derivative(law: ScalarLaw, lam: float) -> float:
    _check_finite(lam, "lambda")
    return float(log_laplace_second_derivative_array(law, lam))


def _initial_tilt(law: ScalarLaw, y: np.ndarray) -> np.ndarray:
    match law.family:
        case LawFamily.RADEMACHER:
            return np.arctanh(y)
        case LawFamily.BERNOULLI:
            return logit(y) - logit(law.param)
        case LawFamily.GAUSSIAN:
            return y / law.param
        case LawFamily.UNIFORM_SYM:
            # inverse Langevin approximation
            v = y / law.param
            return v * (3.0 - v * v) / (1.0 - v * v) / law.param


def solve_tilt_array(law: ScalarLaw, y) -> np.ndarray:
    """Solve Lambda'(lam) = y for interior points y by safeguarded Newton.

    A bracket around the initial guess is grown geometrically; Newton steps
    that leave the bracket are replaced by bisection.
    """
    y = np.asarray(y, dtype=float)
    lam0 = _initial_tilt(law, y)
    lo = lam0 - 1.0
    hi = lam0 + 1.0
    step = 1.0
    for _ in range(MAX_BRACKET_DOUBLINGS):
        low_bad = log_laplace_derivative_array(law, lo) > y
        high_bad = log_laplace_derivative_array(law, hi) < y
        if not (low_bad.any() or high_bad.any()):
            break
        step *= 2.0
        lo = np.where(low_bad, lam0 - step, lo)
        hi = np.where(high_bad, lam0 + step, hi)
    else:
        raise NumericalError("could not bracket the tilt parameter")

    tol = TILT_TOL * np.maximum(1.0, np.abs(y))
    lam = np.clip(lam0, lo, hi)
    for _ in range(MAX_NEWTON_ITER):
        g = log_laplace_derivative_array(law, lam) - y
        # float resolution reached: the bracket cannot shrink any further
        collapsed = (hi - lo) <= 4.0 * np.finfo(float).eps * np.maximum(1.0, np.abs(lam))
        done = (np.abs(g) <= tol) | collapsed
        if done.all():
            return lam
        hi = np.where(g > 0, lam, hi)
        lo = np.where(g < 0, lam, lo)
        h = log_laplace_second_derivative_array(law, lam)
        with np.errstate(divide="ignore", invalid="ignore"):
            cand = lam - g / h
        outside = ~np.isfinite(cand) | (cand <= lo) | (cand >= hi)
        cand = np.where(outside, 0.5 * (lo + hi), cand)
        lam = np.where(done, lam, cand)

    residual = np.abs(log_laplace_derivative_array(law, lam) - y)
    if np.all(residual <= tol):
        return lam
    raise NumericalError(
        f"tilt Newton did not converge in {MAX_NEWTON_ITER} iterations",
        residual=float(np.max(residual)),
    )


def tilt_parameter(law: ScalarLaw, y: float) -> float:
    """lam such that Lambda'(lam) = y, i.e. the tilt with barycenter y."""
    _check_finite(y, "y")
    lo, hi = law.support
    if not lo < y < hi:
        raise BoundaryError(
            f"{law.name}: y={y} is not interior to the support hull [{lo}, {hi}]"
        )
    return float(solve_tilt_array(law, y))


def legendre_array(law: ScalarLaw, x) -> np.ndarray:
    """Lambda*(x) with +inf outside the closed support hull."""
    x = np.asarray(x, dtype=float)
    lo, hi = law.support
    match law.family:
        case LawFamily.RADEMACHER:
            inside = np.abs(x) <= 1.0
            xc = np.clip(x, -1.0, 1.0)
            val = 0.5 * (xlogy(1.0 + xc, 1.0 + xc) + xlogy(1.0 - xc, 1.0 - xc))
            return np.where(inside, val, np.inf)
        case LawFamily.BERNOULLI:
            p = law.param
            inside = (x >= 0.0) & (x <= 1.0)
            xc = np.clip(x, 0.0, 1.0)
            val = xlogy(xc, xc / p) + xlogy(1.0 - xc, (1.0 - xc) / (1.0 - p))
            return np.where(inside, val, np.inf)
        case LawFamily.GAUSSIAN:
            return x * x / (2.0 * law.param)
        case LawFamily.UNIFORM_SYM:
            # no closed form: root-find the tilt, endpoints are +inf
            inside = (x > lo) & (x < hi)
            out = np.full(x.shape, np.inf)
            if inside.any():
                xi = x[inside]
                lam = solve_tilt_array(law, xi)
                out[inside] = lam * xi - log_laplace_array(law, lam)
            return out


def legendre(law: ScalarLaw, x: float) -> float:
    """Lambda*(x) = sup_lam {lam x - Lambda(lam)}; +inf outside the support hull."""
    if math.isnan(x):
        raise DomainError("x must not be NaN")
    if math.isinf(x):
        return math.inf
    return float(legendre_array(law, x))


def bernoulli_entropy(x, p: float) -> np.ndarray:
    """I_p(x) = x log(x/p) + (1-x) log((1-x)/(1-p)) on [0, 1]."""
    return legendre_array(ScalarLaw.bernoulli(p), x)
