"""strainlab: how far is an invertible matrix from being a rotation?

The library measures the distance of a matrix in GL(n)+ from the
rotation group SO(n) under several geometries -- the geodesic distance
of the left-invariant isotropic metrics, the intrinsic and extrinsic
Euclidean distances, and inverse-invariant symmetrizations of both --
and cross-checks every closed-form answer against brute-force oracles.
"""

from .errors import (
    DimensionMismatchError,
    InvalidMetricError,
    MidpointSingularError,
    NegativeDeterminantError,
    NoConvergenceError,
    NotSPDError,
    NotSymmetricError,
    SingularInputError,
    StrainlabError,
    UnsupportedDimensionError,
)
from .matcore import (
    PolarDecomposition,
    SvdSpecial,
    SymEigen,
    frobenius_ip,
    frobenius_norm,
    inverse,
    mat_exp,
    polar,
    spd_log,
    svd_special,
    sym_eigen,
)
from .metric import (
    EuclideanFrobenius,
    IsotropicMetric,
    LeftInvariant,
    SymmetrizedLeftInvariant,
    check_isotropy,
    g_at,
    gI,
)
from .geodesy import (
    DiscretePath,
    GeodesicSpec,
    geodesic_eval,
    geodesic_integrate,
    geodesic_ode_rhs,
    ode_solution_X,
    path_length,
)
from .strain import (
    StrainKind,
    StrainReport,
    closest_rotation,
    euclidean_strain_ext,
    euclidean_strain_int,
    geodesic_strain,
    symmetrized_euclidean_strain,
    symmetrized_geodesic_distance_strain,
    symmetrized_geodesic_metric_strain,
)
from .oracle import (
    AxisAngleGrid,
    GridAngle,
    Objective,
    PathOptimizerConfig,
    PathSearchResult,
    RotationSampler,
    UniformRandom,
    biinvariance_counterexample,
    intrinsic_distance_to_SOn,
    min_over_rotations,
    segment_exits_glnplus,
    shortest_path_between,
)

__version__ = "0.1.0"
