"""Random polytope f-vector experiments.

Sample i.i.d. point clouds from five distributions, build their convex
hulls in R^d, extract f-vectors, whiten the sample, and measure the
distance to the standard Gaussian by the maximum Kolmogorov distance over
random one-dimensional projections.
"""

from .fvector import (
    FVector,
    check_identities,
    f_vector_from_facets,
    pairwise_intersection_fvector,
)
from .gausstest import KSResult, dk_statistic, ks_distance, normal_cdf, random_direction
from .hull import HullResult, Tolerance, brute_force_facets, convex_hull, orientation
from .pipeline import RunConfig, analyze, generate, report, table
from .rng import DistributionKind, StreamKey, make_stream, sample, standard_normal
from .stats import (
    EigenDecomp,
    WhiteningMap,
    apply_whitening,
    build_whitening,
    sample_covariance,
    sample_mean,
    sym_eigen,
)

__version__ = "0.1.0"

__all__ = [
    "DistributionKind",
    "EigenDecomp",
    "FVector",
    "HullResult",
    "KSResult",
    "RunConfig",
    "StreamKey",
    "Tolerance",
    "WhiteningMap",
    "analyze",
    "apply_whitening",
    "brute_force_facets",
    "build_whitening",
    "check_identities",
    "convex_hull",
    "dk_statistic",
    "f_vector_from_facets",
    "generate",
    "ks_distance",
    "make_stream",
    "normal_cdf",
    "orientation",
    "pairwise_intersection_fvector",
    "random_direction",
    "report",
    "sample",
    "sample_covariance",
    "sample_mean",
    "standard_normal",
    "sym_eigen",
    "table",
]
