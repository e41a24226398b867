"""Geodesics of the left-invariant metrics and discrete path lengths.

A geodesic through A with body velocity X0 (actual initial velocity
A @ X0 -- note the body-coordinate convention) has the closed form

    gamma(t) = A exp((1-kappa) t X0 + kappa t X0^T) exp(kappa t (X0 - X0^T))

with kappa = (beta - gamma) / (2 beta).  The same curve solves the
first-order system  Xdot = kappa (X^T X - X X^T),  gammadot = gamma X,
which is also integrated numerically here so the closed form can be
cross-checked.  Discrete paths carry a length functional under any
metric kind; it is the workhorse of the brute-force oracles.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import MidpointSingularError
from .matcore import as_square_matrix, mat_exp
from .metric import IsotropicMetric, MetricKind, g_at

__all__ = [
    "GeodesicSpec",
    "DiscretePath",
    "geodesic_eval",
    "geodesic_ode_rhs",
    "geodesic_integrate",
    "ode_solution_X",
    "path_length",
]

_MIDPOINT_DET_FLOOR = 1e-10


@dataclass(frozen=True)
class GeodesicSpec:
    """Start point, body velocity, and metric of a geodesic.

    ``velocity`` is expressed at the identity: the curve leaves ``start``
    with actual velocity ``start @ velocity``.
    """

    start: np.ndarray
    velocity: np.ndarray
    metric: IsotropicMetric

    def __post_init__(self):
        start = as_square_matrix(self.start)
        velocity = as_square_matrix(self.velocity)
        if start.shape != velocity.shape:
            raise ValueError("start and velocity must share a dimension")
        if np.linalg.det(start) <= 0.0:
            raise ValueError("start must have positive determinant")
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "velocity", velocity)


@dataclass(frozen=True)
class DiscretePath:
    """Node sequence in GL(n)+ together with the metric measuring it."""

    nodes: np.ndarray
    metric: MetricKind = field(default_factory=lambda: _default_kind())

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        if nodes.ndim != 3 or nodes.shape[1] != nodes.shape[2]:
            raise ValueError(f"nodes must be a (K+1, n, n) array, got {nodes.shape}")
        if nodes.shape[0] < 2:
            raise ValueError("a path needs at least two nodes")
        if not np.all(np.isfinite(nodes)):
            raise ValueError("node entries must be finite")
        if np.any(np.linalg.det(nodes) <= 0.0):
            raise ValueError("every node must have positive determinant")
        object.__setattr__(self, "nodes", nodes)


def _default_kind():
    from .metric import EuclideanFrobenius

    return EuclideanFrobenius()


def geodesic_eval(spec: GeodesicSpec, t: float) -> np.ndarray:
    """Point of the closed-form geodesic at parameter ``t``."""
    kappa = spec.metric.kappa
    x0 = spec.velocity
    inner = mat_exp((1.0 - kappa) * t * x0 + kappa * t * x0.T)
    twist = mat_exp(kappa * t * (x0 - x0.T))
    return spec.start @ inner @ twist


def geodesic_ode_rhs(m: IsotropicMetric, x) -> np.ndarray:
    """Right-hand side kappa (X^T X - X X^T) of the body-velocity equation."""
    x = as_square_matrix(x)
    return m.kappa * (x.T @ x - x @ x.T)


def geodesic_integrate(spec: GeodesicSpec, t_end: float, steps: int) -> np.ndarray:
    """Integrate the coupled system (gamma, X) with classical fixed-step RK4.

    Fixed stepping keeps results bit-reproducible; ``steps`` >= 1.
    Returns gamma(t_end).
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    kappa = spec.metric.kappa
    h = float(t_end) / steps
    g = spec.start.copy()
    x = spec.velocity.copy()

    def rhs(gc, xc):
        return gc @ xc, kappa * (xc.T @ xc - xc @ xc.T)

    for _ in range(steps):
        k1g, k1x = rhs(g, x)
        k2g, k2x = rhs(g + 0.5 * h * k1g, x + 0.5 * h * k1x)
        k3g, k3x = rhs(g + 0.5 * h * k2g, x + 0.5 * h * k2x)
        k4g, k4x = rhs(g + h * k3g, x + h * k3x)
        g = g + (h / 6.0) * (k1g + 2.0 * k2g + 2.0 * k3g + k4g)
        x = x + (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
    return g


def ode_solution_X(m: IsotropicMetric, x0, t: float) -> np.ndarray:
    """Closed-form body velocity X(t) = e^{kappa t (X0^T - X0)} X0 e^{kappa t (X0 - X0^T)}."""
    x0 = as_square_matrix(x0)
    w = m.kappa * t * (x0 - x0.T)
    return mat_exp(-w) @ x0 @ mat_exp(w)


def path_length(path: DiscretePath) -> float:
    """Length of a discrete path: sum of sqrt(g(D, D)) with midpoint base points.

    Each segment contributes sqrt(g_at(metric, (a+b)/2, b-a, b-a)); the
    chord-with-midpoint rule is second-order accurate in the node
    spacing.  Midpoints must be safely invertible.

    Raises
    ------
    MidpointSingularError
        If any segment midpoint has |det| below 1e-10; refine the path.
    """
    nodes = path.nodes
    mids = (nodes[:-1] + nodes[1:]) / 2.0
    if np.any(np.abs(np.linalg.det(mids)) < _MIDPOINT_DET_FLOOR):
        raise MidpointSingularError("a segment midpoint is numerically singular")
    total = 0.0
    for k in range(nodes.shape[0] - 1):
        delta = nodes[k + 1] - nodes[k]
        total += np.sqrt(max(g_at(path.metric, mids[k], delta, delta), 0.0))
    return float(total)
