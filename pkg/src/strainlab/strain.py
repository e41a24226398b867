"""Strain measures: distances of a matrix in GL(n)+ from the rotation group.

Every measure shares the same minimizer -- the orthogonal polar factor
-- and differs only in how the stretch is penalized:

* geodesic (left-invariant metric):
      sqrt(alpha * (sum log s_i)^2 + beta * sum (log s_i)^2)
  over the singular values s_i.  gamma never enters: the minimizing
  geodesic has symmetric velocity, whose skew part vanishes.  The full
  metric is still taken and validated so callers state their geometry.
* extrinsic Euclidean:  ||sqrt(A^T A) - I||_F, which stays bounded as A
  degenerates toward singularity;
* intrinsic Euclidean: equal to the extrinsic value (the straight
  segment from the stretch to the identity stays inside GL(n)+), kept
  as a separate kind tag;
* symmetrized-distance variants: d(A, SO) + d(A^{-1}, SO), which doubles
  the geodesic measure exactly and makes the Euclidean one penalize
  contractions as hard as expansions;
* symmetrized-metric variant: the geodesic measure under the metric
  g + (pullback of g under inversion), a sqrt(2) rescaling.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .matcore import as_square_matrix, inverse, polar, svd_special
from .metric import IsotropicMetric

__all__ = [
    "StrainKind",
    "StrainReport",
    "geodesic_strain",
    "euclidean_strain_ext",
    "euclidean_strain_int",
    "symmetrized_euclidean_strain",
    "symmetrized_geodesic_distance_strain",
    "symmetrized_geodesic_metric_strain",
    "closest_rotation",
]


class StrainKind(enum.Enum):
    GEODESIC = "geodesic"
    EUCLIDEAN_EXTRINSIC = "euclidean-ext"
    EUCLIDEAN_INTRINSIC = "euclidean-int"
    SYMMETRIZED_EUCLIDEAN = "sym-euclidean"
    SYMMETRIZED_GEODESIC_DISTANCE = "sym-geodesic-dist"
    SYMMETRIZED_GEODESIC_METRIC = "sym-geodesic-metric"


@dataclass(frozen=True)
class StrainReport:
    """A strain value, the rotation realizing it, and the metric used (if any)."""

    kind: StrainKind
    value: float
    minimizer: np.ndarray
    metric_params: IsotropicMetric | None = None


def geodesic_strain(m: IsotropicMetric, a) -> StrainReport:
    """Geodesic distance of ``a`` from SO(n) under the left-invariant metric.

    The value is sqrt(alpha * (sum log s_i)^2 + beta * sum (log s_i)^2)
    over the singular values; the minimizer is the orthogonal polar
    factor U V^T.
    """
    a = as_square_matrix(a)
    m.validate_for_dimension(a.shape[0])
    f = svd_special(a)
    logs = np.log(f.sigma)
    value = float(np.sqrt(m.alpha * logs.sum() ** 2 + m.beta * np.sum(logs**2)))
    return StrainReport(StrainKind.GEODESIC, value, f.U @ f.V.T, m)


def euclidean_strain_ext(a) -> StrainReport:
    """Frobenius distance ||sqrt(A^T A) - I||_F from SO(n), with its minimizer."""
    a = as_square_matrix(a)
    o, p = polar(a)
    value = float(np.linalg.norm(p - np.eye(a.shape[0]), "fro"))
    return StrainReport(StrainKind.EUCLIDEAN_EXTRINSIC, value, o)


def euclidean_strain_int(a) -> StrainReport:
    """Intrinsic Euclidean distance from SO(n); equals the extrinsic value."""
    ext = euclidean_strain_ext(a)
    return StrainReport(StrainKind.EUCLIDEAN_INTRINSIC, ext.value, ext.minimizer)


def symmetrized_euclidean_strain(a) -> StrainReport:
    """Euclidean strain of A plus that of A^{-1}; diverges for near-singular A."""
    a = as_square_matrix(a)
    ext = euclidean_strain_ext(a)
    ext_inv = euclidean_strain_ext(inverse(a))
    return StrainReport(StrainKind.SYMMETRIZED_EUCLIDEAN, ext.value + ext_inv.value, ext.minimizer)


def symmetrized_geodesic_distance_strain(m: IsotropicMetric, a) -> StrainReport:
    """Geodesic strain under the symmetrized distance: exactly twice the original."""
    base = geodesic_strain(m, a)
    return StrainReport(StrainKind.SYMMETRIZED_GEODESIC_DISTANCE, 2.0 * base.value, base.minimizer, m)


def symmetrized_geodesic_metric_strain(m: IsotropicMetric, a) -> StrainReport:
    """Geodesic strain under the symmetrized metric: a sqrt(2) rescaling."""
    base = geodesic_strain(m, a)
    return StrainReport(StrainKind.SYMMETRIZED_GEODESIC_METRIC, np.sqrt(2.0) * base.value, base.minimizer, m)


def closest_rotation(a) -> np.ndarray:
    """The rotation nearest to ``a`` -- its orthogonal polar factor."""
    return polar(a).O
