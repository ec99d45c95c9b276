"""Bounded Bhattacharyya distance measures, closed forms, Bayes-error bounds
and information-geometry checks."""

__version__ = "0.1.0"

from .bayes_error import (
    BoundsReport,
    PriorPair,
    bayes_error,
    bounds_from_bbd,
    bradt_karlin_witness,
    kailath_bounds,
)
from .distributions import (
    Binomial,
    DiscreteDistribution,
    Exponential,
    Gaussian,
    GriddedDensity,
    Pareto,
    Poisson,
    closed_form_rho,
    closed_form_zeta,
    discretize,
    evaluate,
    load_distribution,
    numeric_rho,
    parse_model,
)
from .divergences import (
    Alpha,
    bbd,
    bbd_via_fdivergence,
    absolutely_continuous,
    bhattacharyya_distance,
    chernoff,
    hellinger_squared,
    invert_bbd,
    jsd,
    jsd_lower_bound,
    kld,
    kld_symmetrized,
    psi_and_base,
    rho_discrete,
    rho_gridded,
    zeta,
)
from .errors import (
    BBDError,
    DomainError,
    NumericInstabilityError,
    ShapeError,
    TruncationError,
    UnsupportedError,
)
from .info_geometry import CurvatureReport, c_alpha, curvature_check, curvature_matrix, fisher_information
from .multiway import WeightVector, generalized_bbd, generalized_rho
