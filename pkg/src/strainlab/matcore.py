"""Dense square-matrix kernels on which the rest of the library is built.

Plain ``float64`` numpy arrays are the only matrix representation.  The
decompositions are tuned for desk scale (n up to ~50, condition up to
~1e4): a cyclic Jacobi eigensolver for symmetric matrices, an SVD with
both orthogonal factors forced into the rotation group, the polar
decomposition, a scaling-and-squaring matrix exponential and the
symmetric logarithm of a positive-definite matrix.

All functions are pure; inputs are never modified.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import (
    DimensionMismatchError,
    NegativeDeterminantError,
    NoConvergenceError,
    NotSPDError,
    NotSymmetricError,
    SingularInputError,
)

__all__ = [
    "SymEigen",
    "SvdSpecial",
    "PolarDecomposition",
    "as_square_matrix",
    "transpose",
    "add",
    "scale",
    "matmul",
    "det",
    "inverse",
    "frobenius_ip",
    "frobenius_norm",
    "sym_part",
    "skew_part",
    "sym_eigen",
    "svd_special",
    "polar",
    "mat_exp",
    "spd_log",
]

_JACOBI_SWEEP_BUDGET = 30
_JACOBI_OFF_TOL = 1e-14
_EXP_TAYLOR_ORDER = 18
_EXP_SCALE_NORM = 0.5


class SymEigen(NamedTuple):
    """Eigendecomposition S = Q diag(lam) Q^T with Q orthogonal.

    Eigenvalues are sorted in descending order; ``Q`` holds the matching
    eigenvectors as columns.
    """

    Q: np.ndarray
    lam: np.ndarray


class SvdSpecial(NamedTuple):
    """SVD A = U diag(sigma) V^T with det U = det V = +1.

    Requires det A > 0; singular values are positive and descending.
    """

    U: np.ndarray
    sigma: np.ndarray
    V: np.ndarray


class PolarDecomposition(NamedTuple):
    """Polar factorization A = O P with O a rotation, P symmetric positive-definite."""

    O: np.ndarray
    P: np.ndarray


def as_square_matrix(a) -> np.ndarray:
    """Validate ``a`` as a finite n-by-n real matrix and return it as float64."""
    m = np.asarray(a, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DimensionMismatchError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def transpose(a) -> np.ndarray:
    return as_square_matrix(a).T.copy()


def add(a, b) -> np.ndarray:
    a, b = as_square_matrix(a), as_square_matrix(b)
    _check_same_dim(a, b)
    return a + b


def scale(c: float, a) -> np.ndarray:
    return float(c) * as_square_matrix(a)


def matmul(a, b) -> np.ndarray:
    a, b = as_square_matrix(a), as_square_matrix(b)
    _check_same_dim(a, b)
    return a @ b


def det(a) -> float:
    return float(np.linalg.det(as_square_matrix(a)))


def inverse(a) -> np.ndarray:
    """Matrix inverse, guarded against near-singular input."""
    a = as_square_matrix(a)
    n = a.shape[0]
    nrm = frobenius_norm(a)
    if abs(np.linalg.det(a)) <= 1e-12 * nrm**n:
        raise SingularInputError("matrix is numerically singular")
    return np.linalg.inv(a)


def frobenius_ip(x, y) -> float:
    """Frobenius inner product tr(X^T Y)."""
    x, y = as_square_matrix(x), as_square_matrix(y)
    _check_same_dim(x, y)
    return float(np.sum(x * y))


def frobenius_norm(x) -> float:
    return float(np.linalg.norm(as_square_matrix(x), "fro"))


def sym_part(x) -> np.ndarray:
    x = as_square_matrix(x)
    return (x + x.T) / 2.0


def skew_part(x) -> np.ndarray:
    x = as_square_matrix(x)
    return (x - x.T) / 2.0


def _check_same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise DimensionMismatchError(f"shape mismatch: {a.shape} vs {b.shape}")


def sym_eigen(s) -> SymEigen:
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    s : array_like, shape (n, n)
        Symmetric matrix (asymmetry up to ``1e-10 * ||s||`` is tolerated
        and symmetrized away).

    Returns
    -------
    SymEigen
        Orthogonal ``Q`` and descending eigenvalues ``lam`` with
        ``Q @ diag(lam) @ Q.T`` reconstructing the input.

    Raises
    ------
    NotSymmetricError
        If the asymmetry exceeds tolerance.
    NoConvergenceError
        If the off-diagonal mass is not annihilated within the sweep
        budget (30 cyclic sweeps; never observed at desk scale).
    """
    s = as_square_matrix(s)
    n = s.shape[0]
    nrm = frobenius_norm(s)
    if frobenius_norm(s - s.T) > 1e-10 * max(nrm, 1e-300):
        raise NotSymmetricError("matrix is not symmetric within 1e-10 * ||S||")

    a = (s + s.T) / 2.0
    q = np.eye(n)
    if n == 1:
        return SymEigen(q, np.array([a[0, 0]]))

    off_tol = _JACOBI_OFF_TOL * nrm
    elem_tol = off_tol / n
    for sweep in range(_JACOBI_SWEEP_BUDGET + 1):
        off_block = a.copy()
        np.fill_diagonal(off_block, 0.0)
        if frobenius_norm(off_block) <= off_tol:
            break
        if sweep == _JACOBI_SWEEP_BUDGET:
            raise NoConvergenceError("Jacobi sweep budget exhausted")
        for p in range(n - 1):
            for r in range(p + 1, n):
                apq = a[p, r]
                if abs(apq) <= elem_tol:
                    continue
                tau = (a[r, r] - a[p, p]) / (2.0 * apq)
                t = np.copysign(1.0, tau) / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.hypot(1.0, t)
                sn = t * c

                row_p, row_r = a[p, :].copy(), a[r, :].copy()
                a[p, :] = c * row_p - sn * row_r
                a[r, :] = sn * row_p + c * row_r
                col_p, col_r = a[:, p].copy(), a[:, r].copy()
                a[:, p] = c * col_p - sn * col_r
                a[:, r] = sn * col_p + c * col_r
                a[p, r] = 0.0
                a[r, p] = 0.0

                qp, qr = q[:, p].copy(), q[:, r].copy()
                q[:, p] = c * qp - sn * qr
                q[:, r] = sn * qp + c * qr

    lam = np.diag(a).copy()
    order = np.argsort(-lam, kind="stable")
    return SymEigen(q[:, order], lam[order])


def svd_special(a) -> SvdSpecial:
    """SVD of ``a`` with both orthogonal factors in the rotation group.

    The right factor and singular values come from the Jacobi
    eigendecomposition of ``A^T A``; the left factor is recovered as
    ``A V diag(1/sigma)`` with one polar-style re-orthonormalization if
    it drifts.  If both raw factors come out with determinant -1, the
    last column of each is negated (the diagonal middle factor commutes
    with the sign flip, so the product is unchanged).

    Adequate for condition numbers up to ~1e4; accuracy degrades beyond
    because the eigenvalue route squares the condition.

    Raises
    ------
    NegativeDeterminantError
        If det A <= 0.
    SingularInputError
        If the smallest singular value is below ``1e-12`` times the largest.
    """
    a = as_square_matrix(a)
    if np.linalg.det(a) <= 0.0:
        raise NegativeDeterminantError("svd_special requires det A > 0")

    gram = a.T @ a
    eig = sym_eigen((gram + gram.T) / 2.0)
    lam = np.maximum(eig.lam, 0.0)
    sigma = np.sqrt(lam)
    if sigma[0] == 0.0 or sigma[-1] < 1e-12 * sigma[0]:
        raise SingularInputError("singular values span more than 1e12")

    v = eig.Q
    u = (a @ v) / sigma[np.newaxis, :]
    drift = frobenius_norm(u.T @ u - np.eye(a.shape[0]))
    if drift > 1e-12:
        u = u @ _inv_sqrt_spd(u.T @ u)

    if np.linalg.det(u) < 0.0:
        u = u.copy()
        v = v.copy()
        u[:, -1] *= -1.0
        v[:, -1] *= -1.0
    return SvdSpecial(u, sigma, v)


def _inv_sqrt_spd(m: np.ndarray) -> np.ndarray:
    eig = sym_eigen(m)
    return (eig.Q / np.sqrt(eig.lam)[np.newaxis, :]) @ eig.Q.T


def polar(a) -> PolarDecomposition:
    """Polar decomposition A = O P via :func:`svd_special`.

    ``O = U V^T`` is the closest rotation to ``A``; ``P = V diag(sigma) V^T``
    is the symmetric positive-definite stretch ``sqrt(A^T A)``.
    """
    f = svd_special(a)
    o = f.U @ f.V.T
    p = (f.V * f.sigma[np.newaxis, :]) @ f.V.T
    return PolarDecomposition(o, (p + p.T) / 2.0)


def mat_exp(x) -> np.ndarray:
    """Matrix exponential by scaling and squaring.

    The argument is scaled so its Frobenius norm is at most 0.5, run
    through an order-18 truncated Taylor series in Horner form, and
    squared back up.  At that norm the truncation error is far below
    1e-12, so no rational approximation machinery is needed.  Symmetric
    input yields a symmetric positive-definite result.
    """
    x = as_square_matrix(x)
    n = x.shape[0]
    nrm = frobenius_norm(x)
    squarings = 0
    if nrm > _EXP_SCALE_NORM:
        squarings = int(np.ceil(np.log2(nrm / _EXP_SCALE_NORM)))
    y = x / (2.0**squarings)

    eye = np.eye(n)
    r = eye + y / _EXP_TAYLOR_ORDER
    for k in range(_EXP_TAYLOR_ORDER - 1, 0, -1):
        r = eye + (y @ r) / k
    for _ in range(squarings):
        r = r @ r
    return r


def spd_log(p) -> np.ndarray:
    """Unique symmetric logarithm of a symmetric positive-definite matrix.

    Raises
    ------
    NotSPDError
        If ``p`` is not symmetric within tolerance or has a
        non-positive eigenvalue.
    """
    try:
        eig = sym_eigen(p)
    except NotSymmetricError as exc:
        raise NotSPDError(str(exc)) from exc
    if eig.lam[-1] <= 0.0:
        raise NotSPDError("matrix has a non-positive eigenvalue")
    return (eig.Q * np.log(eig.lam)[np.newaxis, :]) @ eig.Q.T
