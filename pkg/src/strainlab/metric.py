"""The three-parameter isotropic inner products and the metrics built from them.

At the identity the inner product of two matrices X, Y is

    alpha * tr(X) tr(Y) + beta * tr(sym X sym Y) + gamma * tr(skew X skew Y)

with alpha >= 0, beta > 0, gamma < 0.  Left-translating it over GL(n)
gives the left-invariant metric; adding its pullback under matrix
inversion gives the inverse-invariant symmetrized metric.  The flat
Frobenius metric is carried alongside as a third kind so path-length
code can treat all three uniformly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import DimensionMismatchError, InvalidMetricError
from .matcore import as_square_matrix, frobenius_ip, inverse
from .sampling import random_orthogonal

__all__ = [
    "IsotropicMetric",
    "LeftInvariant",
    "EuclideanFrobenius",
    "SymmetrizedLeftInvariant",
    "MetricKind",
    "gI",
    "g_at",
    "check_isotropy",
]


@dataclass(frozen=True)
class IsotropicMetric:
    """Parameters (alpha, beta, gamma) of an isotropic inner product.

    The strict signs (beta > 0, gamma < 0) keep the form an inner
    product; with them, ``n * alpha + beta > 0`` holds automatically for
    alpha >= 0, but :meth:`validate_for_dimension` re-checks it because
    positive-definiteness on the trace direction is dimension-dependent.
    """

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        if not (np.isfinite(self.alpha) and np.isfinite(self.beta) and np.isfinite(self.gamma)):
            raise InvalidMetricError("metric parameters must be finite")
        if self.alpha < 0.0:
            raise InvalidMetricError("alpha must be nonnegative")
        if self.beta <= 0.0:
            raise InvalidMetricError("beta must be strictly positive")
        if self.gamma >= 0.0:
            raise InvalidMetricError("gamma must be strictly negative")

    @property
    def kappa(self) -> float:
        """Twist constant (beta - gamma) / (2 beta) of the geodesic equations."""
        return (self.beta - self.gamma) / (2.0 * self.beta)

    def validate_for_dimension(self, n: int) -> None:
        if n * self.alpha + self.beta <= 0.0:
            raise InvalidMetricError(f"n*alpha + beta must be positive for n={n}")


@dataclass(frozen=True)
class LeftInvariant:
    """Left-invariant metric obtained by translating ``metric`` from the identity."""

    metric: IsotropicMetric


@dataclass(frozen=True)
class EuclideanFrobenius:
    """Flat metric tr(X^T Y), independent of the base point."""


@dataclass(frozen=True)
class SymmetrizedLeftInvariant:
    """Sum of the left-invariant metric and its pullback under inversion."""

    metric: IsotropicMetric


MetricKind = Union[LeftInvariant, EuclideanFrobenius, SymmetrizedLeftInvariant]


def gI(m: IsotropicMetric, x, y) -> float:
    """Isotropic inner product of X and Y at the identity."""
    x, y = as_square_matrix(x), as_square_matrix(y)
    if x.shape != y.shape:
        raise DimensionMismatchError(f"shape mismatch: {x.shape} vs {y.shape}")
    sym_x, sym_y = (x + x.T) / 2.0, (y + y.T) / 2.0
    skew_x, skew_y = (x - x.T) / 2.0, (y - y.T) / 2.0
    return float(
        m.alpha * np.trace(x) * np.trace(y)
        + m.beta * np.trace(sym_x @ sym_y)
        + m.gamma * np.trace(skew_x @ skew_y)
    )


def g_at(kind: MetricKind, b, x, y) -> float:
    """Inner product of tangent vectors X, Y at base point B under ``kind``.

    LeftInvariant pulls the vectors back to the identity with B^{-1} on
    the left; the symmetrized kind adds the same with B^{-1} acting on
    the right (the pullback of the metric under inversion); the
    Frobenius kind ignores the base point.
    """
    b = as_square_matrix(b)
    x, y = as_square_matrix(x), as_square_matrix(y)
    if x.shape != b.shape or y.shape != b.shape:
        raise DimensionMismatchError("base point and vectors must share a dimension")
    if isinstance(kind, EuclideanFrobenius):
        return frobenius_ip(x, y)
    b_inv = inverse(b)
    if isinstance(kind, LeftInvariant):
        return gI(kind.metric, b_inv @ x, b_inv @ y)
    if isinstance(kind, SymmetrizedLeftInvariant):
        return gI(kind.metric, b_inv @ x, b_inv @ y) + gI(kind.metric, x @ b_inv, y @ b_inv)
    raise TypeError(f"unknown metric kind: {kind!r}")


def check_isotropy(
    form: IsotropicMetric | Callable[[np.ndarray, np.ndarray], float],
    trials: int,
    n: int = 3,
    seed: int = 0,
    tol: float = 1e-10,
) -> bool:
    """Probe invariance of a bilinear form under orthogonal conjugation.

    Draws ``trials`` random triples (X, Y, U) with U orthogonal of either
    determinant sign and reports whether form(X, Y) always matches
    form(U^T X U, U^T Y U) within ``tol * (1 + |form(X, Y)|)``.  ``form``
    may be an :class:`IsotropicMetric` (whose gI is used) or any callable
    on two matrices, so deliberately broken forms can be probed too.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if isinstance(form, IsotropicMetric):
        metric = form
        form = lambda x, y: gI(metric, x, y)
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        x = rng.standard_normal((n, n))
        y = rng.standard_normal((n, n))
        u = random_orthogonal(n, rng, det_sign=rng.choice([-1, 1]))
        base = form(x, y)
        conj = form(u.T @ x @ u, u.T @ y @ u)
        if abs(base - conj) > tol * (1.0 + abs(base)):
            return False
    return True
