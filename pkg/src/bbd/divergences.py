"""Bhattacharyya coefficient, the bounded Bhattacharyya family and companions.

The bounded Bhattacharyya distance of order ``alpha`` maps a coefficient
``rho`` in [0, 1] to [0, 1]::

    B_alpha(rho) = log(1 - (1 - rho)/alpha) / log(1 - 1/alpha)

for ``alpha`` in [-inf, 0) U (1, inf].  Both infinite orders give the squared
Hellinger distance ``1 - rho``.  Natural logarithms are used for KL, JS,
Bhattacharyya and Chernoff; ``B_alpha`` is a ratio of logs and therefore
base-free.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .distributions import (
    DiscreteDistribution,
    GriddedDensity,
    check_same_grid,
    check_same_length,
    trapezoid,
)
from .errors import DomainError

RHO_CLAMP_TOL = 1e-12
# Beyond this |alpha| the log1p ratio agrees with 1 - rho to ~1e-13.
LARGE_ALPHA = 1e12


@dataclass(frozen=True)
class Alpha:
    """Order of the bounded measure; ``value`` may be +/-inf."""

    value: float

    def __post_init__(self) -> None:
        v = float(self.value)
        if math.isnan(v) or 0.0 <= v <= 1.0:
            raise DomainError(f"alpha must lie in [-inf, 0) U (1, inf], got {self.value!r}")
        object.__setattr__(self, "value", v)

    @classmethod
    def parse(cls, text: str) -> "Alpha":
        t = text.strip().lower()
        if t in {"inf", "+inf", "infinity", "+infinity"}:
            return cls(math.inf)
        if t in {"-inf", "-infinity"}:
            return cls(-math.inf)
        try:
            return cls(float(t))
        except ValueError:
            raise DomainError(f"cannot parse alpha from {text!r}") from None

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.value)

    @property
    def hellinger_like(self) -> bool:
        """True when the order is large enough to be evaluated as ``1 - rho``."""
        return abs(self.value) >= LARGE_ALPHA

    @property
    def base(self) -> float:
        """``(alpha / (alpha - 1))**alpha``; tends to e as |alpha| grows."""
        if self.is_infinite:
            return math.e
        a = self.value
        return math.exp(-a * math.log1p(-1.0 / a))

    @property
    def label(self) -> str:
        v = self.value
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        if v == int(v) and abs(v) < 1e15:
            return str(int(v))
        return repr(v)

    def __float__(self) -> float:
        return self.value


AlphaLike = Union[Alpha, float, int, str]


def as_alpha(alpha: AlphaLike) -> Alpha:
    if isinstance(alpha, Alpha):
        return alpha
    if isinstance(alpha, str):
        return Alpha.parse(alpha)
    return Alpha(alpha)


def as_rho(rho):
    """Validate a Bhattacharyya coefficient (scalar or array).

    Values within 1e-12 of [0, 1] are clamped; anything farther out raises.
    """
    r = np.asarray(rho, dtype=float)
    if np.any(np.isnan(r)) or np.any(r < -RHO_CLAMP_TOL) or np.any(r > 1 + RHO_CLAMP_TOL):
        raise DomainError(f"rho must lie in [0, 1], got {rho!r}")
    r = np.clip(r, 0.0, 1.0)
    return float(r) if r.ndim == 0 else r


def _out(x):
    x = np.asarray(x, dtype=float)
    return float(x) if x.ndim == 0 else x


# ---------------------------------------------------------------------------
# Coefficients
# ---------------------------------------------------------------------------


def rho_discrete(p: DiscreteDistribution, q: DiscreteDistribution) -> float:
    """sum_i sqrt(p_i q_i), clamped to [0, 1]."""
    check_same_length([p, q])
    return as_rho(min(1.0, math.fsum(np.sqrt(p.probs * q.probs))))


def rho_gridded(p: GriddedDensity, q: GriddedDensity) -> float:
    """Trapezoid integral of sqrt(p(x) q(x)) on a shared grid."""
    check_same_grid([p, q])
    return as_rho(min(1.0, trapezoid(np.sqrt(p.values * q.values), p.dx)))


def rho(p, q) -> float:
    """Dispatch to :func:`rho_discrete` or :func:`rho_gridded`."""
    if isinstance(p, GriddedDensity) and isinstance(q, GriddedDensity):
        return rho_gridded(p, q)
    if isinstance(p, DiscreteDistribution) and isinstance(q, DiscreteDistribution):
        return rho_discrete(p, q)
    raise TypeError("p and q must both be discrete or both gridded")


# ---------------------------------------------------------------------------
# Bounded Bhattacharyya family
# ---------------------------------------------------------------------------


def bbd(rho, alpha: AlphaLike):
    """Bounded Bhattacharyya distance ``B_alpha(rho)``; accepts scalars or arrays."""
    a = as_alpha(alpha)
    r = np.asarray(as_rho(rho))
    if a.hellinger_like:
        out = 1.0 - r
    else:
        out = np.log1p(-(1.0 - r) / a.value) / math.log1p(-1.0 / a.value)
    return _out(np.clip(out, 0.0, 1.0))


def zeta(rho):
    """The alpha = 2 member, ``-log2((1 + rho)/2)``."""
    return bbd(rho, 2)


def psi_and_base(rho: float, alpha: AlphaLike) -> tuple[float, float]:
    """Return ``(psi(rho), b)`` with ``B_alpha = -log_b psi``.

    psi(rho) = (1 - (1 - rho)/alpha)**alpha and b = (alpha/(alpha - 1))**alpha,
    so psi(0) = 1/b and psi(1) = 1.
    """
    a = as_alpha(alpha)
    if a.is_infinite:
        raise DomainError("psi_and_base needs a finite alpha")
    r = as_rho(rho)
    psi = math.exp(a.value * math.log1p(-(1.0 - r) / a.value))
    return psi, a.base


def bbd_via_fdivergence(p: DiscreteDistribution, q: DiscreteDistribution, alpha: AlphaLike) -> float:
    """Evaluate B_alpha as the generalized f-divergence g(sum_i f(p_i/q_i) q_i).

    Uses f(x) = -1 + (1 - sqrt(x))/alpha and g(F) = log(-F)/log(1 - 1/alpha),
    valid for finite alpha > 1.  Cells with q_i = 0 contribute nothing (the
    limit of q f(p/q) as q -> 0 is zero for this f).
    """
    a = as_alpha(alpha)
    if a.is_infinite or a.value <= 1:
        raise DomainError("the f-divergence form needs a finite alpha > 1")
    check_same_length([p, q])
    mask = q.probs > 0
    # sqrt of the likelihood ratio, formed from square roots so that tiny q_i cannot overflow
    root_ratio = np.sqrt(p.probs[mask]) / np.sqrt(q.probs[mask])
    f = -1.0 + (1.0 - root_ratio) / a.value
    big_f = math.fsum(f * q.probs[mask])
    value = math.log(-big_f) / math.log1p(-1.0 / a.value)
    return min(max(value, 0.0), 1.0)


def invert_bbd(b_value: float, alpha: AlphaLike) -> float:
    """Recover rho from a value of ``B_alpha``."""
    a = as_alpha(alpha)
    b_value = float(b_value)
    if not 0.0 <= b_value <= 1.0:
        raise DomainError(f"bbd value must lie in [0, 1], got {b_value!r}")
    if a.hellinger_like:
        return as_rho(1.0 - b_value)
    # 1 - alpha * (1 - (1 - 1/alpha)**b)
    r = 1.0 + a.value * math.expm1(b_value * math.log1p(-1.0 / a.value))
    return as_rho(min(max(r, 0.0), 1.0))


# ---------------------------------------------------------------------------
# Companion measures
# ---------------------------------------------------------------------------


def hellinger_squared(rho):
    return _out(1.0 - np.asarray(as_rho(rho)))


def bhattacharyya_distance(rho) -> float:
    """-ln rho, with rho = 0 mapped to +inf."""
    r = as_rho(rho)
    return math.inf if r == 0.0 else -math.log(r)


def chernoff(p: DiscreteDistribution, q: DiscreteDistribution, t: float) -> float:
    """Chernoff distance -ln sum_i p_i**t q_i**(1-t) for t in (0, 1)."""
    if not 0.0 < t < 1.0:
        raise DomainError(f"chernoff order must lie in (0, 1), got {t!r}")
    check_same_length([p, q])
    s = math.fsum(p.probs**t * q.probs ** (1.0 - t))
    return math.inf if s <= 0.0 else -math.log(min(s, 1.0))


def absolutely_continuous(p: DiscreteDistribution, q: DiscreteDistribution) -> bool:
    """True when q_i = 0 implies p_i = 0."""
    check_same_length([p, q])
    return not np.any((q.probs == 0) & (p.probs > 0))


def kld(p: DiscreteDistribution, q: DiscreteDistribution) -> float:
    """Kullback-Leibler divergence I(P, Q); +inf when P is not << Q."""
    if not absolutely_continuous(p, q):
        return math.inf
    mask = p.probs > 0
    pm, qm = p.probs[mask], q.probs[mask]
    return max(0.0, math.fsum(pm * np.log(pm / qm)))


def kld_symmetrized(p: DiscreteDistribution, q: DiscreteDistribution) -> float:
    return 0.5 * (kld(p, q) + kld(q, p))


def _jensen_term(p: np.ndarray, q: np.ndarray) -> float:
    mask = p > 0
    pm = p[mask]
    return math.fsum(pm * np.log(2 * pm / (pm + q[mask])))


def jsd(p: DiscreteDistribution, q: DiscreteDistribution, symmetrized: bool = True) -> float:
    """Jensen-Shannon divergence.

    The symmetrized form is the usual (1/2)[KL(P, M) + KL(Q, M)] with M the
    midpoint mixture; the un-symmetrized form keeps only the P term.
    """
    check_same_length([p, q])
    if symmetrized:
        return max(0.0, 0.5 * (_jensen_term(p.probs, q.probs) + _jensen_term(q.probs, p.probs)))
    return max(0.0, _jensen_term(p.probs, q.probs))


def jsd_lower_bound(zeta_value, paper_literal: bool = False):
    """Lower bound on JS in terms of zeta: (2 ln 2) zeta - ln 2.

    ``paper_literal=True`` gives the variant with constant 2/ln 2, which is
    violated at orthogonal pairs; it is kept only for comparison.
    """
    z = np.asarray(zeta_value, dtype=float)
    ln2 = math.log(2)
    scale = 2 / ln2 if paper_literal else 2 * ln2
    return _out(scale * z - ln2)
