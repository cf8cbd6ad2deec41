"""Exponential tilts mu_y of a scalar law and sampling from them."""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy.special import expit, logit

from ldp_lab.core.exceptions import ArgumentError, DomainError
from ldp_lab.measures.laws import LawFamily, ScalarLaw
from ldp_lab.measures.transforms import (
    legendre_array,
    log_laplace,
    log_laplace_derivative,
    log_laplace_second_derivative,
    tilt_parameter,
)


@dataclass(frozen=True)
class TiltedLaw:
    """mu_y(dx) = exp(lam x - Lambda(lam)) mu(dx), with barycenter mean_y = Lambda'(lam)."""

    base: ScalarLaw
    lam: float
    mean_y: float

    @classmethod
    def from_parameter(cls, base: ScalarLaw, lam: float) -> "TiltedLaw":
        if not math.isfinite(lam):
            raise DomainError(f"tilt parameter must be finite, got {lam}")
        return cls(base, float(lam), log_laplace_derivative(base, lam))

    @classmethod
    def from_mean(cls, base: ScalarLaw, y: float) -> "TiltedLaw":
        return cls(base, tilt_parameter(base, y), float(y))

    @property
    def variance(self) -> float:
        return log_laplace_second_derivative(self.base, self.lam)

    @property
    def rate(self) -> float:
        """Lambda*(mean_y) through the duality identity."""
        return self.lam * self.mean_y - log_laplace(self.base, self.lam)

    def log_density_ratio(self, x) -> np.ndarray:
        """log d(mu_y)/d(mu) at x."""
        return self.lam * np.asarray(x, dtype=float) - log_laplace(self.base, self.lam)

    def exact_mean(self) -> float:
        """Mean of mu_y by enumeration or quadrature, independent of Lambda'."""
        lam, law = self.lam, self.base
        match law.family:
            case LawFamily.RADEMACHER:
                w_plus, w_minus = math.exp(lam), math.exp(-lam)
                return (w_plus - w_minus) / (w_plus + w_minus)
            case LawFamily.BERNOULLI:
                w1 = law.param * math.exp(lam)
                return w1 / (1.0 - law.param + w1)
            case LawFamily.UNIFORM_SYM:
                a = law.param
                shift = abs(lam) * a
                num, _ = integrate.quad(lambda x: x * math.exp(lam * x - shift), -a, a, epsabs=1e-14, epsrel=1e-13)
                den, _ = integrate.quad(lambda x: math.exp(lam * x - shift), -a, a, epsabs=1e-14, epsrel=1e-13)
                return num / den
            case LawFamily.GAUSSIAN:
                num, _ = integrate.quad(
                    lambda x: x * math.exp(lam * x - x * x / (2 * law.param)),
                    -math.inf, math.inf,
                )
                den, _ = integrate.quad(
                    lambda x: math.exp(lam * x - x * x / (2 * law.param)),
                    -math.inf, math.inf,
                )
                return num / den

    def sample(self, rng: np.random.Generator, size=None) -> np.ndarray:
        law, lam = self.base, self.lam
        match law.family:
            case LawFamily.RADEMACHER:
                return np.where(rng.random(size) < expit(2.0 * lam), 1.0, -1.0)
            case LawFamily.BERNOULLI:
                q = expit(lam + logit(law.param))
                return np.where(rng.random(size) < q, 1.0, 0.0)
            case LawFamily.GAUSSIAN:
                return rng.normal(law.param * lam, math.sqrt(law.param), size)
            case LawFamily.UNIFORM_SYM:
                return _uniform_tilt_inverse_cdf(law.param, lam, rng.random(size))


def _uniform_tilt_inverse_cdf(a: float, lam: float, u: np.ndarray) -> np.ndarray:
    """Inverse CDF of the density proportional to exp(lam x) on [-a, a]."""
    s = abs(lam)
    if s * a < 1e-12:
        x = a * (2.0 * u - 1.0)
    else:
        # x = a + log(u + (1-u) e^{-2 s a}) / s for s > 0, mirrored for lam < 0
        x = a + np.log(u + (1.0 - u) * math.exp(-2.0 * s * a)) / s
        x = np.clip(x, -a, a)
    return x if lam >= 0 else -x


def tilted_sample(t: TiltedLaw, rng: np.random.Generator) -> float:
    """One draw from the tilted law."""
    return float(t.sample(rng))


def tilted_samples(t: TiltedLaw, size: int, rng: np.random.Generator) -> np.ndarray:
    return np.asarray(t.sample(rng, size), dtype=float)


@dataclass(frozen=True)
class MomentEstimate:
    mean: float
    std_err: float
    bound: float

    @property
    def within_bound(self) -> bool:
        return self.mean <= self.bound + 3.0 * self.std_err


def tightness_moment(
    law: ScalarLaw, alpha: float, draws: int, rng: np.random.Generator
) -> MomentEstimate:
    """Monte Carlo estimate of E exp(alpha Lambda*(X)), bounded by 2/(1-alpha)."""
    if not 0.0 < alpha < 1.0:
        raise ArgumentError(f"alpha must lie in (0, 1), got {alpha}")
    if draws < 2:
        raise ArgumentError("need at least two draws")
    x = law.sample(rng, draws)
    values = np.exp(alpha * legendre_array(law, x))
    mean = math.fsum(values) / draws
    std_err = float(np.std(values, ddof=1)) / math.sqrt(draws)
    return MomentEstimate(mean=mean, std_err=std_err, bound=2.0 / (1.0 - alpha))


def tightness_level(r: int, n: int) -> float:
    """Chernoff level kappa(r) = 12 min(r, n) for product measures on R^n."""
    return 12.0 * min(r, n)
