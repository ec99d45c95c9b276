"""Two-hypothesis Bayes error, bounds from the Bhattacharyya coefficient, and
a grid search for priors that agree with a divergence ranking.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .distributions import (
    DiscreteDistribution,
    GriddedDensity,
    check_same_grid,
    check_same_length,
    trapezoid,
)
from .divergences import AlphaLike, as_rho, invert_bbd, rho
from .errors import DomainError

PRIOR_SUM_TOL = 1e-12


@dataclass(frozen=True)
class PriorPair:
    """Prior probabilities of the two hypotheses; ``pi2`` defaults to ``1 - pi1``."""

    pi1: float
    pi2: Optional[float] = None

    def __post_init__(self) -> None:
        pi1 = float(self.pi1)
        pi2 = 1.0 - pi1 if self.pi2 is None else float(self.pi2)
        if not (0.0 <= pi1 <= 1.0 and 0.0 <= pi2 <= 1.0):
            raise DomainError(f"priors must lie in [0, 1], got ({pi1}, {pi2})")
        if abs(pi1 + pi2 - 1.0) > PRIOR_SUM_TOL:
            raise DomainError(f"priors sum to {pi1 + pi2!r}, not 1")
        object.__setattr__(self, "pi1", pi1)
        object.__setattr__(self, "pi2", pi2)


EQUAL_PRIORS = PriorPair(0.5, 0.5)


@dataclass(frozen=True)
class BoundsReport:
    """Bounds on the Bayes error derived from rho.

    ``lower``/``upper`` are the forms that hold for every prior.  The
    ``*_paper_literal`` fields carry the variants as commonly printed, which
    coincide with the valid ones only at equal priors; they are reported, not
    relied on.
    """

    rho: float
    lower: float
    upper: float
    lower_paper_literal: float
    upper_paper_literal: float
    pe: Optional[float] = None

    def to_dict(self) -> dict:
        return asdict(self)


def _pair_arrays(p1, p2):
    if isinstance(p1, DiscreteDistribution) and isinstance(p2, DiscreteDistribution):
        check_same_length([p1, p2])
        return p1.probs, p2.probs, None
    if isinstance(p1, GriddedDensity) and isinstance(p2, GriddedDensity):
        check_same_grid([p1, p2])
        return p1.values, p2.values, p1.dx
    raise TypeError("p1 and p2 must both be discrete or both gridded")


def _integrate(values: np.ndarray, dx: Optional[float]):
    if dx is None:
        return values.sum(axis=-1)
    return trapezoid(values, dx)


def bayes_error(p1, p2, prior: PriorPair = EQUAL_PRIORS) -> float:
    """Minimum misclassification probability sum_x min(pi1 p1(x), pi2 p2(x))."""
    a, b, dx = _pair_arrays(p1, p2)
    if dx is None:
        pe = math.fsum(np.minimum(prior.pi1 * a, prior.pi2 * b))
    else:
        pe = float(trapezoid(np.minimum(prior.pi1 * a, prior.pi2 * b), dx))
    return min(max(pe, 0.0), min(prior.pi1, prior.pi2))


def kailath_bounds(rho_value: float, prior: PriorPair = EQUAL_PRIORS, pe: Optional[float] = None) -> BoundsReport:
    """Bayes-error bounds from the Bhattacharyya coefficient.

    lower = (1 - sqrt(1 - 4 pi1 pi2 rho^2)) / 2 and upper = sqrt(pi1 pi2) rho.
    At equal priors these are (1 - sqrt(1 - rho^2))/2 and rho/2.
    """
    r = as_rho(rho_value)
    pi1, pi2 = prior.pi1, prior.pi2
    disc = math.sqrt(max(0.0, 1.0 - 4.0 * pi1 * pi2 * r**2))
    return BoundsReport(
        rho=r,
        lower=0.5 * (1.0 - disc),
        upper=math.sqrt(pi1 * pi2) * r,
        lower_paper_literal=0.5 * (2.0 * pi1 - disc),
        upper_paper_literal=(pi1 - 0.5) + math.sqrt(pi1 * pi2) * r,
        pe=pe,
    )


def bounds_from_bbd(b_value: float, alpha: AlphaLike, prior: PriorPair = EQUAL_PRIORS) -> BoundsReport:
    return kailath_bounds(invert_bbd(b_value, alpha), prior)


def bradt_karlin_witness(
    pair_beta, pair_beta_prime, grid_steps: int = 999, margin: float = 1e-12
) -> Optional[PriorPair]:
    """Scan pi1 over k/(grid_steps+1), k = 1..grid_steps, for a prior under
    which ``pair_beta`` has strictly smaller Bayes error than ``pair_beta_prime``.

    Requires rho(pair_beta) < rho(pair_beta_prime).  Returns the lowest-pi1
    witness, or None if the grid contains none; None does not mean no witness
    exists, only that this resolution missed it.  A witness must win by more
    than ``margin`` so that rounding ties (e.g. both errors equal to pi1) are
    not reported.
    """
    if int(grid_steps) != grid_steps or grid_steps < 1:
        raise DomainError("grid_steps must be a positive integer")
    r, r_prime = rho(*pair_beta), rho(*pair_beta_prime)
    if not r < r_prime:
        raise DomainError(f"need rho(beta) < rho(beta'), got {r!r} >= {r_prime!r}")

    pi1 = np.arange(1, int(grid_steps) + 1) / (int(grid_steps) + 1)
    pi2 = 1.0 - pi1

    def scan(pair):
        a, b, dx = _pair_arrays(*pair)
        return _integrate(np.minimum(pi1[:, None] * a, pi2[:, None] * b), dx)

    hits = np.flatnonzero(scan(pair_beta) < scan(pair_beta_prime) - margin)
    if hits.size == 0:
        return None
    return PriorPair(float(pi1[hits[0]]))
