"""Fisher information and the local curvature of the bounded measure.

Along a one-parameter family f(x|theta), Z_theta(phi) = B_alpha(rho(theta, phi))
vanishes with zero slope at phi = theta, and its second derivative there is
C(alpha) * I(theta) with C(alpha) = -1 / (4 alpha log(1 - 1/alpha)).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np
from scipy import integrate

from .distributions import (
    Binomial,
    Exponential,
    Gaussian,
    ParametricModel,
    Pareto,
    Poisson,
    closed_form_rho,
)
from .divergences import Alpha, AlphaLike, as_alpha, bbd
from .errors import DomainError, NumericInstabilityError

RICHARDSON_TOL = 0.10

# family tag -> (builder(theta, **fixed), default fixed parameters)
_FAMILIES: dict[str, tuple[Callable[..., ParametricModel], dict]] = {
    "poisson": (lambda t: Poisson(t), {}),
    "gaussian_mean": (lambda t, sigma: Gaussian(t, sigma), {"sigma": 1.0}),
    "gaussian_sigma": (lambda t, mu: Gaussian(mu, t), {"mu": 0.0}),
    "exponential": (lambda t: Exponential(t), {}),
    "binomial": (lambda t, n: Binomial(n, t), {"n": 10}),
    "pareto": (lambda t, xm: Pareto(t, xm), {"xm": 1.0}),
}

SCALAR_FAMILIES = tuple(_FAMILIES)


def family_model(family: str, theta: float, **fixed) -> ParametricModel:
    """Member of a scalar family at parameter ``theta``."""
    try:
        build, defaults = _FAMILIES[family]
    except KeyError:
        raise DomainError(f"unknown family {family!r}; choose from {SCALAR_FAMILIES}") from None
    unknown = set(fixed) - set(defaults)
    if unknown:
        raise DomainError(f"{family} has no fixed parameter(s) {sorted(unknown)}")
    return build(theta, **{**defaults, **fixed})


def _analytic_fisher(family: str, theta: float, fixed: dict) -> float:
    if family == "poisson":
        return 1.0 / theta
    if family == "gaussian_mean":
        return 1.0 / fixed["sigma"] ** 2
    if family == "gaussian_sigma":
        return 2.0 / theta**2
    if family == "exponential":
        return 1.0 / theta**2
    if family == "binomial":
        return fixed["n"] / (theta * (1.0 - theta))
    return 1.0 / theta**2  # pareto shape


def fisher_information(family: str, theta: float, mode: str = "analytic", **fixed) -> float:
    """Fisher information of a scalar family.

    ``mode="numeric"`` sums or integrates f * score**2, with the score taken by
    central differences of log f at step 1e-5 * max(1, |theta|).
    """
    model = family_model(family, theta, **fixed)  # validates theta
    params = {**_FAMILIES[family][1], **fixed}
    if mode == "analytic":
        return _analytic_fisher(family, theta, params)
    if mode != "numeric":
        raise DomainError(f"mode must be 'analytic' or 'numeric', got {mode!r}")

    h = 1e-5 * max(1.0, abs(theta))
    if family == "binomial":
        h = min(h, 0.5 * theta, 0.5 * (1 - theta))
    up = family_model(family, theta + h, **fixed)
    down = family_model(family, theta - h, **fixed)

    def score(x):
        return (up.logpdf(x) - down.logpdf(x)) / (2 * h)

    if model.discrete:
        k = np.arange(model.truncation_point(1e-17) + 1, dtype=float)
        return math.fsum(model.pdf(k) * score(k) ** 2)

    if isinstance(model, Gaussian):
        pieces = [(-math.inf, model.mu), (model.mu, math.inf)]
    elif isinstance(model, Exponential):
        pieces = [(0.0, math.inf)]
    else:
        pieces = [(model.xm, math.inf)]

    def integrand(x: float) -> float:
        return float(model.pdf(x) * score(x) ** 2)

    return math.fsum(
        integrate.quad(integrand, lo, hi, epsabs=0.0, epsrel=1e-12, limit=200)[0] for lo, hi in pieces
    )


def c_alpha(alpha: AlphaLike) -> float:
    """Curvature constant -1 / (4 alpha log(1 - 1/alpha)); 1/4 at infinite order."""
    a = as_alpha(alpha)
    if a.hellinger_like:
        return 0.25
    return -1.0 / (4.0 * a.value * math.log1p(-1.0 / a.value))


def generator_second_derivative_at_one(alpha: AlphaLike) -> float:
    """f''(1) for f(x) = -1 + (1 - sqrt(x))/alpha, i.e. 1/(4 alpha)."""
    a = as_alpha(alpha)
    return 0.0 if a.is_infinite else 1.0 / (4.0 * a.value)


@dataclass
class CurvatureReport:
    alpha: Alpha
    theta: Union[float, tuple]
    fd_curvature: Union[float, np.ndarray]
    predicted: Union[float, np.ndarray]
    rel_error: float
    richardson: Union[float, np.ndarray] = None
    z_at_theta: float = 0.0
    first_difference: Union[float, np.ndarray] = 0.0
    family: str = ""

    def to_dict(self) -> dict:
        def plain(v):
            return v.tolist() if isinstance(v, np.ndarray) else v

        return {
            "family": self.family,
            "alpha": self.alpha.value,
            "theta": list(self.theta) if isinstance(self.theta, tuple) else self.theta,
            "fd_curvature": plain(self.fd_curvature),
            "predicted": plain(self.predicted),
            "rel_error": self.rel_error,
            "richardson": plain(self.richardson),
            "z_at_theta": self.z_at_theta,
            "first_difference": plain(self.first_difference),
        }


def _second_difference(z: Callable[[float], float], h: float) -> float:
    return (z(h) - 2.0 * z(0.0) + z(-h)) / (h * h)


def _richardson(coarse: float, fine: float) -> float:
    if not (coarse > 0 and fine > 0) or abs(coarse - fine) > RICHARDSON_TOL * max(coarse, fine):
        raise NumericInstabilityError(
            f"second differences at h and h/2 disagree ({coarse!r} vs {fine!r}); step too small"
        )
    return (4.0 * fine - coarse) / 3.0


def curvature_check(family: str, theta: float, alpha: AlphaLike, h: float = 1e-3, **fixed) -> CurvatureReport:
    """Compare the second difference of Z_theta(phi) at phi = theta with C(alpha) I(theta)."""
    a = as_alpha(alpha)
    if a.is_infinite:
        raise DomainError("curvature_check needs a finite alpha")
    if not h > 0:
        raise DomainError("step h must be positive")
    base = family_model(family, theta, **fixed)

    def z(offset: float) -> float:
        return bbd(closed_form_rho(base, family_model(family, theta + offset, **fixed)), a)

    coarse = _second_difference(z, h)
    fine = _second_difference(z, h / 2)
    extrapolated = _richardson(coarse, fine)
    predicted = c_alpha(a) * fisher_information(family, theta, **fixed)
    return CurvatureReport(
        alpha=a,
        theta=theta,
        fd_curvature=coarse,
        predicted=predicted,
        rel_error=abs(coarse - predicted) / predicted,
        richardson=extrapolated,
        z_at_theta=z(0.0),
        first_difference=(z(h) - z(-h)) / (2 * h),
        family=family,
    )


def rho_derivatives(family: str, theta: float, h: float = 1e-4, **fixed) -> tuple[float, float]:
    """Central first and second differences of phi -> rho(theta, phi) at phi = theta."""
    base = family_model(family, theta, **fixed)

    def r(offset: float) -> float:
        return closed_form_rho(base, family_model(family, theta + offset, **fixed))

    first = (r(h) - r(-h)) / (2 * h)
    second = (r(h) - 2.0 * r(0.0) + r(-h)) / (h * h)
    return first, second


def curvature_matrix(theta: tuple[float, float], alpha: AlphaLike, h: float = 1e-3) -> CurvatureReport:
    """2x2 finite-difference Hessian of Z_theta at phi = theta for Gaussian (mu, sigma).

    The prediction is C(alpha) * diag(1/sigma^2, 2/sigma^2).
    """
    a = as_alpha(alpha)
    if a.is_infinite:
        raise DomainError("curvature_matrix needs a finite alpha")
    mu, sigma = map(float, theta)
    if not sigma > 0:
        raise DomainError("sigma must be positive")
    if not 0 < h < sigma / 2:
        raise DomainError("step h must be positive and below sigma/2")
    base = Gaussian(mu, sigma)

    def z(dm: float, ds: float) -> float:
        return bbd(closed_form_rho(base, Gaussian(mu + dm, sigma + ds)), a)

    def hessian(step: float) -> np.ndarray:
        z0 = z(0.0, 0.0)
        d_mm = (z(step, 0) - 2 * z0 + z(-step, 0)) / step**2
        d_ss = (z(0, step) - 2 * z0 + z(0, -step)) / step**2
        d_ms = (z(step, step) - z(step, -step) - z(-step, step) + z(-step, -step)) / (4 * step**2)
        return np.array([[d_mm, d_ms], [d_ms, d_ss]])

    coarse, fine = hessian(h), hessian(h / 2)
    extrapolated = np.array(coarse)
    for i in range(2):
        extrapolated[i, i] = _richardson(coarse[i, i], fine[i, i])
    extrapolated[0, 1] = extrapolated[1, 0] = (4 * fine[0, 1] - coarse[0, 1]) / 3

    predicted = c_alpha(a) * np.diag([1.0 / sigma**2, 2.0 / sigma**2])
    diag = np.diag(coarse)
    rel = float(np.max(np.abs(diag - np.diag(predicted)) / np.diag(predicted)))
    first = np.array([(z(h, 0) - z(-h, 0)) / (2 * h), (z(0, h) - z(0, -h)) / (2 * h)])
    return CurvatureReport(
        alpha=a,
        theta=(mu, sigma),
        fd_curvature=coarse,
        predicted=predicted,
        rel_error=rel,
        richardson=extrapolated,
        z_at_theta=z(0.0, 0.0),
        first_difference=first,
        family="gaussian",
    )
