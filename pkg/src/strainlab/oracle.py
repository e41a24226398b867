"""Brute-force verification oracles.

Nothing here trusts the closed forms elsewhere in the library: distances
from the rotation group are re-derived by searching rotation space
directly and by shortening discrete paths, so the two routes can be
compared.  The module also generates the counterexamples showing that
no bi-invariant distance exists and that straight segments can leave
GL(n)+.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .errors import NegativeDeterminantError, UnsupportedDimensionError
from .geodesy import DiscretePath, path_length
from .matcore import as_square_matrix, inverse, mat_exp, polar, spd_log
from .metric import EuclideanFrobenius, LeftInvariant, MetricKind, SymmetrizedLeftInvariant
from .strain import closest_rotation

__all__ = [
    "UniformRandom",
    "GridAngle",
    "AxisAngleGrid",
    "RotationSampler",
    "Objective",
    "min_over_rotations",
    "PathOptimizerConfig",
    "PathSearchResult",
    "intrinsic_distance_to_SOn",
    "shortest_path_between",
    "biinvariance_counterexample",
    "segment_exits_glnplus",
]

_BATCH = 4096
_MIDPOINT_DET_FLOOR = 1e-10
_INIT_DET_FLOOR = 1e-6


@dataclass(frozen=True)
class UniformRandom:
    """Haar-ish random rotations: orthonormalized Gaussians, det fixed to +1."""

    samples: int = 100_000


@dataclass(frozen=True)
class GridAngle:
    """Exhaustive angle grid over SO(2) with the given step (radians)."""

    step: float


@dataclass(frozen=True)
class AxisAngleGrid:
    """Axis-angle grid over SO(3): resolution^3 rotations."""

    resolution: int


@dataclass(frozen=True)
class RotationSampler:
    """Deterministic stream of rotations in SO(n) for brute-force search."""

    n: int
    seed: int
    scheme: UniformRandom | GridAngle | AxisAngleGrid

    def __post_init__(self):
        if self.n < 1:
            raise UnsupportedDimensionError("n must be >= 1")
        if isinstance(self.scheme, GridAngle):
            if self.n != 2:
                raise UnsupportedDimensionError("GridAngle sampling requires n = 2")
            if self.scheme.step <= 0.0:
                raise ValueError("grid step must be positive")
        elif isinstance(self.scheme, AxisAngleGrid):
            if self.n != 3:
                raise UnsupportedDimensionError("AxisAngleGrid sampling requires n = 3")
            if self.scheme.resolution < 1:
                raise ValueError("resolution must be >= 1")
        elif isinstance(self.scheme, UniformRandom):
            if self.scheme.samples < 1:
                raise ValueError("samples must be >= 1")
        else:
            raise TypeError(f"unknown sampling scheme: {self.scheme!r}")

    def batches(self) -> Iterator[np.ndarray]:
        """Yield (B, n, n) stacks of rotations; the full stream is seed-deterministic."""
        if isinstance(self.scheme, GridAngle):
            thetas = np.arange(0.0, 2.0 * np.pi, self.scheme.step)
            for start in range(0, thetas.size, _BATCH):
                yield _planar_rotations(thetas[start : start + _BATCH])
        elif isinstance(self.scheme, AxisAngleGrid):
            yield from _axis_angle_batches(self.scheme.resolution)
        else:
            rng = np.random.default_rng(self.seed)
            remaining = self.scheme.samples
            while remaining > 0:
                count = min(remaining, _BATCH)
                yield _random_rotation_batch(self.n, count, rng)
                remaining -= count


def _planar_rotations(thetas: np.ndarray) -> np.ndarray:
    c, s = np.cos(thetas), np.sin(thetas)
    out = np.empty((thetas.size, 2, 2))
    out[:, 0, 0] = c
    out[:, 0, 1] = -s
    out[:, 1, 0] = s
    out[:, 1, 1] = c
    return out


def _axis_angle_batches(resolution: int) -> Iterator[np.ndarray]:
    r = resolution
    zs = -1.0 + 2.0 * (np.arange(r) + 0.5) / r
    phis = 2.0 * np.pi * (np.arange(r) + 0.5) / r
    angles = -np.pi + 2.0 * np.pi * (np.arange(r) + 0.5) / r
    z, phi, ang = np.meshgrid(zs, phis, angles, indexing="ij")
    z, phi, ang = z.ravel(), phi.ravel(), ang.ravel()
    rho = np.sqrt(np.maximum(1.0 - z**2, 0.0))
    axes = np.stack([rho * np.cos(phi), rho * np.sin(phi), z], axis=1)
    for start in range(0, axes.shape[0], _BATCH):
        yield _rodrigues(axes[start : start + _BATCH], ang[start : start + _BATCH])


def _rodrigues(axes: np.ndarray, angles: np.ndarray) -> np.ndarray:
    b = axes.shape[0]
    k = np.zeros((b, 3, 3))
    k[:, 0, 1], k[:, 0, 2] = -axes[:, 2], axes[:, 1]
    k[:, 1, 0], k[:, 1, 2] = axes[:, 2], -axes[:, 0]
    k[:, 2, 0], k[:, 2, 1] = -axes[:, 1], axes[:, 0]
    sin_a = np.sin(angles)[:, None, None]
    cos_a = np.cos(angles)[:, None, None]
    return np.eye(3)[None] + sin_a * k + (1.0 - cos_a) * (k @ k)


def _random_rotation_batch(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((count, n, n))
    q, r = np.linalg.qr(g)
    diag_signs = np.sign(np.einsum("bii->bi", r))
    diag_signs[diag_signs == 0.0] = 1.0
    q = q * diag_signs[:, None, :]
    flip = np.linalg.det(q) < 0.0
    q[flip, :, -1] *= -1.0
    return q


class Objective(enum.Enum):
    FROBENIUS_DISTANCE = "frobenius"
    SYMMETRIZED_FROBENIUS = "symmetrized-frobenius"


def min_over_rotations(a, objective: Objective, sampler: RotationSampler):
    """Minimize a rotation-distance objective over every sampled rotation.

    Returns ``(value, argmin)``; deterministic given the sampler seed.
    The symmetrized objective is ||A - Q||_F + ||A^{-1} - Q^{-1}||_F.
    """
    a = as_square_matrix(a)
    if a.shape[0] != sampler.n:
        raise UnsupportedDimensionError("sampler dimension does not match the matrix")
    a_inv = inverse(a) if objective is Objective.SYMMETRIZED_FROBENIUS else None

    best = np.inf
    argmin = None
    for batch in sampler.batches():
        d = np.linalg.norm(batch - a[None], axis=(1, 2))
        if a_inv is not None:
            d = d + np.linalg.norm(np.transpose(batch, (0, 2, 1)) - a_inv[None], axis=(1, 2))
        i = int(np.argmin(d))
        if d[i] < best:
            best = float(d[i])
            argmin = batch[i].copy()
    return best, argmin


@dataclass(frozen=True)
class PathOptimizerConfig:
    """Knobs of the discrete path-energy descent.

    ``nodes`` is the segment count K (the path has K+1 node matrices).
    The free endpoint, when enabled, is confined to SO(n) by updating it
    as Q exp(W) with W skew.
    """

    nodes: int = 16
    max_iters: int = 2000
    step_size: float = 0.1
    tol: float = 1e-6
    endpoint_free: bool = True

    def __post_init__(self):
        if self.nodes < 4:
            raise ValueError("nodes must be >= 4")
        if self.max_iters < 1 or self.step_size <= 0.0 or self.tol <= 0.0:
            raise ValueError("max_iters, step_size, and tol must be positive")


class PathSearchResult(NamedTuple):
    value: float
    path: DiscretePath
    converged: bool


def intrinsic_distance_to_SOn(a, kind: MetricKind, cfg: PathOptimizerConfig) -> PathSearchResult:
    """Approximate the intrinsic distance of ``a`` from SO(n) by path shortening.

    The initial path runs straight from ``a`` to its closest rotation
    (or along the closed-form geodesic between them if the segment gets
    too close to singular); gradient descent with finite differences
    then moves the interior nodes and, unless ``cfg.endpoint_free`` is
    off, the rotation endpoint.  Descent is kept monotone by step
    halving.  If the relative length change is still above ``cfg.tol``
    when the iteration budget runs out, the best path so far is
    returned with ``converged=False`` and a warning.
    """
    a = as_square_matrix(a)
    q0 = closest_rotation(a)
    ts = np.linspace(0.0, 1.0, cfg.nodes + 1)
    nodes = (1.0 - ts)[:, None, None] * a[None] + ts[:, None, None] * q0[None]
    mids = (nodes[:-1] + nodes[1:]) / 2.0
    if np.any(np.abs(np.linalg.det(mids)) < _INIT_DET_FLOOR):
        stretch_log = spd_log(polar(a).P)
        nodes = np.stack([q0 @ mat_exp((1.0 - t) * stretch_log) for t in ts])
    return _minimize_path(nodes, kind, cfg, free_last=cfg.endpoint_free)


def shortest_path_between(a, b, kind: MetricKind, cfg: PathOptimizerConfig) -> PathSearchResult:
    """Shorten a discrete path between two fixed endpoints in GL(n)+.

    Starts from the straight segment when it keeps safely away from the
    singular set, otherwise from a rotation-times-stretch interpolation
    (which always stays in GL(n)+).
    """
    a, b = as_square_matrix(a), as_square_matrix(b)
    ts = np.linspace(0.0, 1.0, cfg.nodes + 1)
    nodes = (1.0 - ts)[:, None, None] * a[None] + ts[:, None, None] * b[None]
    mids = (nodes[:-1] + nodes[1:]) / 2.0
    if np.any(np.abs(np.linalg.det(mids)) < _INIT_DET_FLOOR):
        oa, pa = polar(a)
        ob, pb = polar(b)
        w = _rotation_log(oa.T @ ob)
        la, lb = spd_log(pa), spd_log(pb)
        nodes = np.stack([oa @ mat_exp(t * w) @ mat_exp((1.0 - t) * la + t * lb) for t in ts])
    return _minimize_path(nodes, kind, cfg, free_last=False)


def _rotation_log(r: np.ndarray) -> np.ndarray:
    """Principal skew logarithm of a rotation, for n = 2 and n = 3."""
    n = r.shape[0]
    if n == 2:
        theta = np.arctan2(r[1, 0], r[0, 0])
        return np.array([[0.0, -theta], [theta, 0.0]])
    if n == 3:
        cos_t = np.clip((np.trace(r) - 1.0) / 2.0, -1.0, 1.0)
        theta = np.arccos(cos_t)
        if theta < 1e-12:
            return (r - r.T) / 2.0
        if np.pi - theta > 1e-6:
            return (theta / (2.0 * np.sin(theta))) * (r - r.T)
        sym = (r + np.eye(3)) / 2.0
        i = int(np.argmax(np.diag(sym)))
        axis = sym[:, i] / np.sqrt(max(sym[i, i], 1e-300))
        axis = axis / np.linalg.norm(axis)
        w = np.array(
            [
                [0.0, -axis[2], axis[1]],
                [axis[2], 0.0, -axis[0]],
                [-axis[1], axis[0], 0.0],
            ]
        )
        return theta * w
    raise UnsupportedDimensionError("rotation logarithm implemented for n in {2, 3}")


def _skew_basis(n: int) -> list[np.ndarray]:
    basis = []
    for i in range(n):
        for j in range(i + 1, n):
            w = np.zeros((n, n))
            w[i, j] = -1.0
            w[j, i] = 1.0
            basis.append(w)
    return basis


def _batch_energies(mids: np.ndarray, deltas: np.ndarray, kind: MetricKind) -> np.ndarray:
    """Energies g(mid, delta, delta) for stacked segments; inf where a midpoint is singular."""
    if isinstance(kind, EuclideanFrobenius):
        e = np.sum(deltas**2, axis=(-2, -1))
        bad = np.abs(np.linalg.det(mids)) < _MIDPOINT_DET_FLOOR
        e = np.where(bad, np.inf, e)
        return e
    bad = np.abs(np.linalg.det(mids)) < _MIDPOINT_DET_FLOOR
    safe = np.where(bad[..., None, None], np.eye(mids.shape[-1]), mids)
    b_inv = np.linalg.inv(safe)
    m = kind.metric
    e = _iso_quadratic(m, b_inv @ deltas)
    if isinstance(kind, SymmetrizedLeftInvariant):
        e = e + _iso_quadratic(m, deltas @ b_inv)
    elif not isinstance(kind, LeftInvariant):
        raise TypeError(f"unknown metric kind: {kind!r}")
    return np.where(bad, np.inf, e)


def _iso_quadratic(m, x: np.ndarray) -> np.ndarray:
    tr = np.einsum("...ii->...", x)
    xt = np.swapaxes(x, -2, -1)
    sym = (x + xt) / 2.0
    skew = (x - xt) / 2.0
    return (
        m.alpha * tr**2
        + m.beta * np.sum(sym**2, axis=(-2, -1))
        - m.gamma * np.sum(skew**2, axis=(-2, -1))
    )


def _energy_terms(nodes: np.ndarray, kind: MetricKind) -> np.ndarray | None:
    """Per-segment energies of a whole path, or None if any node/midpoint is infeasible."""
    if np.any(np.linalg.det(nodes) <= 0.0):
        return None
    mids = (nodes[:-1] + nodes[1:]) / 2.0
    e = _batch_energies(mids, nodes[1:] - nodes[:-1], kind)
    return None if np.any(~np.isfinite(e)) else e


def _node_gradient(nodes: np.ndarray, kind: MetricKind) -> np.ndarray:
    """Central-difference gradient of the path energy w.r.t. interior nodes.

    Perturbing node k only touches segments k-1 and k, so all
    (interior node) x (entry) x (sign) x (segment) evaluations are
    assembled into one batched energy call.
    """
    count, n, _ = nodes.shape
    interior = count - 2
    mids = (nodes[:-1] + nodes[1:]) / 2.0
    deltas = nodes[1:] - nodes[:-1]
    h = 1e-6 * (1.0 + np.linalg.norm(nodes[1:-1], axis=(1, 2)))

    basis = np.eye(n * n).reshape(n * n, n, n)
    pert = h[:, None, None, None] * basis[None]

    mid_prev = mids[:interior, None] + 0.5 * pert
    del_prev = deltas[:interior, None] + pert
    mid_next = mids[1 : interior + 1, None] + 0.5 * pert
    del_next = deltas[1 : interior + 1, None] - pert

    mid_stack = np.stack([mid_prev, mid_next, mids[:interior, None] - 0.5 * pert, mids[1 : interior + 1, None] - 0.5 * pert])
    del_stack = np.stack([del_prev, del_next, deltas[:interior, None] - pert, deltas[1 : interior + 1, None] + pert])
    e = _batch_energies(mid_stack, del_stack, kind)

    e_plus = e[0] + e[1]
    e_minus = e[2] + e[3]
    g = (e_plus - e_minus) / (2.0 * h[:, None])
    g = np.where(np.isfinite(g), g, 0.0)
    grad = np.zeros_like(nodes)
    grad[1:-1] = g.reshape(interior, n, n)
    return grad


def _endpoint_gradient(nodes: np.ndarray, kind: MetricKind, basis: list[np.ndarray]) -> np.ndarray:
    """Central-difference gradient w.r.t. the skew chart of the SO(n) endpoint."""
    w_grad = np.zeros(len(basis))
    h = 1e-6
    for b_idx, w in enumerate(basis):
        end_plus = nodes[-1] @ mat_exp(h * w)
        end_minus = nodes[-1] @ mat_exp(-h * w)
        e_plus = _batch_energies((nodes[-2] + end_plus) / 2.0, end_plus - nodes[-2], kind)
        e_minus = _batch_energies((nodes[-2] + end_minus) / 2.0, end_minus - nodes[-2], kind)
        g = (e_plus - e_minus) / (2.0 * h)
        w_grad[b_idx] = g if np.isfinite(g) else 0.0
    return w_grad


def _minimize_path(nodes0: np.ndarray, kind: MetricKind, cfg: PathOptimizerConfig, free_last: bool) -> PathSearchResult:
    nodes = nodes0.astype(float).copy()
    n = nodes.shape[1]
    basis = _skew_basis(n) if free_last else []

    terms = _energy_terms(nodes, kind)
    if terms is None:
        raise ValueError("initial path is infeasible (singular node or midpoint)")
    energy = float(terms.sum())
    length = float(np.sum(np.sqrt(np.maximum(terms, 0.0))))

    step = cfg.step_size
    converged = False
    quiet_iters = 0
    last_dx = None
    last_grad = None
    for _ in range(cfg.max_iters):
        grad = _node_gradient(nodes, kind)
        w_grad = _endpoint_gradient(nodes, kind, basis) if free_last else np.zeros(0)

        grad_flat = np.concatenate([grad[1:-1].ravel(), w_grad])
        gnorm = float(np.linalg.norm(grad_flat))
        if gnorm < 1e-13:
            converged = True
            break

        # Barzilai-Borwein trial step, safeguarded below by plain halving.
        if last_grad is not None:
            dg = grad_flat - last_grad
            denom = float(dg @ dg)
            if denom > 0.0:
                bb = float(last_dx @ dg) / denom
                if np.isfinite(bb) and bb > 0.0:
                    step = min(max(bb, 1e-10), 1e3)

        improved = False
        while step >= 1e-14:
            cand = nodes.copy()
            cand[1:-1] -= step * grad[1:-1]
            if free_last and basis:
                w_step = sum(-step * g * w for g, w in zip(w_grad, basis))
                cand[-1] = nodes[-1] @ mat_exp(w_step)
            cand_terms = _energy_terms(cand, kind)
            if cand_terms is not None and float(cand_terms.sum()) < energy:
                last_dx = np.concatenate([(cand[1:-1] - nodes[1:-1]).ravel(), -step * w_grad])
                last_grad = grad_flat
                nodes = cand
                terms = cand_terms
                energy = float(cand_terms.sum())
                improved = True
                break
            step /= 2.0

        if not improved:
            converged = True
            break
        new_length = float(np.sum(np.sqrt(np.maximum(terms, 0.0))))
        if abs(new_length - length) <= cfg.tol * max(length, 1e-12):
            # A lone quiet iteration can be a stalled trial step, so only a
            # sustained quiet stretch counts as settled.
            quiet_iters += 1
            if quiet_iters >= 25:
                length = new_length
                converged = True
                break
        else:
            quiet_iters = 0
        length = new_length

    path = DiscretePath(nodes, kind)
    value = path_length(path)
    if not converged:
        warnings.warn("path optimizer hit its iteration budget before the length settled", stacklevel=2)
    return PathSearchResult(value, path, converged)


def biinvariance_counterexample(n: int, k: int):
    """Conjugate the unit upper-bidiagonal matrix toward the identity.

    Returns ``D^{-k} A D^{k}`` (computed in closed form: ones on the
    diagonal, 2^{-k} on the superdiagonal, with D = diag(2^{-1}, ...,
    2^{-n})) and its Frobenius distance to the identity.  Conjugation
    leaves any bi-invariant distance to the identity fixed, yet this
    one decays to zero -- hence no such distance exists.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if k < 0:
        raise ValueError("k must be >= 0")
    if k > 60:
        raise OverflowError("conjugation by D^k overflows float64 for k > 60")
    conjugate = np.eye(n)
    off = 2.0 ** (-k)
    for i in range(n - 1):
        conjugate[i, i + 1] = off
    dist = float(np.linalg.norm(conjugate - np.eye(n), "fro"))
    return conjugate, dist


def segment_exits_glnplus(a, b) -> bool:
    """Does the straight segment [A, B] leave GL(n)+?

    True when the determinant along the segment drops to zero or below;
    found by sampling 1024 intervals and bisecting any sign change.
    """
    a, b = as_square_matrix(a), as_square_matrix(b)
    if np.linalg.det(a) <= 0.0 or np.linalg.det(b) <= 0.0:
        raise NegativeDeterminantError("both endpoints must lie in GL(n)+")
    ts = np.linspace(0.0, 1.0, 1025)
    mats = a[None] + ts[:, None, None] * (b - a)[None]
    dets = np.linalg.det(mats)
    if np.any(dets <= 0.0):
        return True
    sign_changes = np.nonzero(dets[:-1] * dets[1:] < 0.0)[0]
    for i in sign_changes:
        lo, hi = ts[i], ts[i + 1]
        for _ in range(60):
            mid = (lo + hi) / 2.0
            if np.linalg.det(a + mid * (b - a)) <= 0.0:
                return True
            if np.linalg.det(a + lo * (b - a)) * np.linalg.det(a + mid * (b - a)) < 0.0:
                hi = mid
            else:
                lo = mid
    return False
