"""Generalized Bhattacharyya coefficient and bounded measure for n distributions."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .distributions import (
    DiscreteDistribution,
    GriddedDensity,
    check_same_grid,
    check_same_length,
    trapezoid,
)
from .divergences import AlphaLike, as_rho, bbd
from .errors import DomainError, ShapeError

WEIGHT_SUM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class WeightVector:
    betas: np.ndarray

    def __post_init__(self) -> None:
        b = np.array(self.betas, dtype=float)
        if b.ndim != 1 or b.size < 2:
            raise ShapeError("need at least two weights")
        if not np.all(np.isfinite(b)) or np.any(b < 0):
            raise DomainError("weights must be finite and non-negative")
        if abs(math.fsum(b) - 1.0) > WEIGHT_SUM_TOL:
            raise DomainError(f"weights sum to {math.fsum(b)!r}, not 1")
        b.setflags(write=False)
        object.__setattr__(self, "betas", b)

    @classmethod
    def uniform(cls, n: int) -> "WeightVector":
        return cls(np.full(n, 1.0 / n))

    def __len__(self) -> int:
        return self.betas.size


def generalized_rho(dists: Sequence, weights: Optional[WeightVector] = None) -> float:
    """sum_x prod_i p_i(x)**beta_i (trapezoid integral for gridded densities).

    Uses 0**0 = 1, so a zero-weight component is ignored, while a zero density
    under a positive weight zeroes the term.  Weights default to uniform.
    """
    dists = list(dists)
    if len(dists) < 2:
        raise ShapeError("need at least two distributions")
    if weights is None:
        weights = WeightVector.uniform(len(dists))
    elif not isinstance(weights, WeightVector):
        weights = WeightVector(weights)
    if len(weights) != len(dists):
        raise ShapeError(f"{len(dists)} distributions but {len(weights)} weights")

    if all(isinstance(d, DiscreteDistribution) for d in dists):
        check_same_length(dists)
        stack = np.stack([d.probs for d in dists])
        terms = np.prod(stack ** weights.betas[:, None], axis=0)
        total = math.fsum(terms)
    elif all(isinstance(d, GriddedDensity) for d in dists):
        check_same_grid(dists)
        stack = np.stack([d.values for d in dists])
        terms = np.prod(stack ** weights.betas[:, None], axis=0)
        total = trapezoid(terms, dists[0].dx)
    else:
        raise TypeError("distributions must be all discrete or all gridded")
    return as_rho(min(max(total, 0.0), 1.0))


def generalized_bbd(rho_beta, alpha: AlphaLike):
    """Bounded measure of a generalized coefficient; same form as the pairwise one."""
    return bbd(rho_beta, alpha)
