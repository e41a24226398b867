"""Random matrices for tests, property suites, and brute-force search.

All generators take an explicit ``numpy.random.Generator`` so every
suite is reproducible from its seed.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "random_orthogonal",
    "random_rotation",
    "random_gl_plus",
    "random_symmetric",
    "random_skew",
    "random_spd",
]


def random_orthogonal(n: int, rng: np.random.Generator, det_sign: int | None = None) -> np.ndarray:
    """Orthogonal matrix from QR of a Gaussian, with optional determinant sign.

    The R-factor signs are absorbed so the distribution is uniform; the
    determinant is steered by negating the last column when needed.
    """
    g = rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    q = q * np.sign(np.diag(r))[np.newaxis, :]
    if det_sign is not None and np.linalg.det(q) * det_sign < 0.0:
        q = q.copy()
        q[:, -1] *= -1.0
    return q


def random_rotation(n: int, rng: np.random.Generator) -> np.ndarray:
    return random_orthogonal(n, rng, det_sign=+1)


def random_gl_plus(n: int, rng: np.random.Generator, max_condition: float | None = None) -> np.ndarray:
    """Random matrix with positive determinant, optionally condition-bounded.

    With ``max_condition`` set, the matrix is built as U diag(s) V^T with
    rotations U, V and log-uniform singular values whose spread respects
    the bound; otherwise Gaussian entries are drawn until det > 0.
    """
    if max_condition is not None:
        u = random_rotation(n, rng)
        v = random_rotation(n, rng)
        half = np.log(max_condition) / 2.0
        s = np.exp(rng.uniform(-half, half, size=n))
        return (u * s[np.newaxis, :]) @ v.T
    while True:
        a = rng.standard_normal((n, n))
        if np.linalg.det(a) > 0.0:
            return a


def random_symmetric(n: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((n, n))
    return (g + g.T) / 2.0


def random_skew(n: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((n, n))
    return (g - g.T) / 2.0


def random_spd(n: int, rng: np.random.Generator, log_spread: float = 1.0) -> np.ndarray:
    """Symmetric positive-definite matrix with eigenvalues exp(U(-spread, spread))."""
    q = random_rotation(n, rng)
    lam = np.exp(rng.uniform(-log_spread, log_spread, size=n))
    return (q * lam[np.newaxis, :]) @ q.T
