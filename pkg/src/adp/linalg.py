"""Dense real linear algebra: products, SPD solves, SVD, dominant eigenvalue.

Conventions used throughout the package: vectors are 1-d ``float64`` numpy
arrays, matrices are 2-d row-major ``float64`` arrays.  Public operations
validate shapes, never mutate their inputs, and return freshly allocated
results, so values can be shared freely across threads.

The SVD is a from-scratch one-sided Jacobi (Hestenes) iteration.  It is
simple, accurate for the dense sizes this package targets (n up to a few
hundred), and keeps the singular-vector conventions under our control; numpy
is used in the test suite only, as an independent oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .rng import SplitMix64

# Tolerances and caps, exposed read-only as module constants.
SVD_OFFDIAG_TOL = 1e-12  # relative column-dot threshold ending Jacobi sweeps
SVD_MAX_SWEEPS = 60
SVD_ORTHO_TOL = 1e-10  # guaranteed orthonormality of returned u, v
SVD_RECONSTRUCT_TOL = 1e-9  # max-abs reconstruction error for n <= 256
SPD_RESIDUAL_TOL = 1e-10  # relative residual guaranteed by solve_spd
POWER_ITERS_DEFAULT = 500


class SvdConvergenceError(RuntimeError):
    """Raised when Jacobi sweeps do not reach the off-diagonal threshold."""

    def __init__(self, shape: tuple[int, int], residual: float):
        self.shape = shape
        self.residual = residual
        super().__init__(
            f"one-sided Jacobi SVD did not converge for a {shape[0]}x{shape[1]} "
            f"matrix after {SVD_MAX_SWEEPS} sweeps "
            f"(largest relative off-diagonal {residual:.3e})"
        )


def as_vector(x) -> np.ndarray:
    """Validate and convert to a 1-d float64 array (no copy if already one)."""
    v = np.asarray(x, dtype=np.float64)
    if v.ndim != 1:
        raise ValueError(f"expected a vector, got array of shape {v.shape}")
    return v


def as_matrix(m) -> np.ndarray:
    """Validate and convert to a 2-d float64 array (no copy if already one)."""
    a = np.asarray(m, dtype=np.float64)
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got array of shape {a.shape}")
    return a


def matmul(a, b) -> np.ndarray:
    """Matrix product a @ b with an explicit dimension check."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(
            f"dimension mismatch in matmul: {a.shape} times {b.shape}"
        )
    return a @ b


@dataclass(frozen=True)
class Svd:
    """Singular system ``m = v @ diag(sigma) @ u.T``.

    ``u`` holds the domain-side singular vectors (columns u_i, the space the
    unknown lives in), ``v`` the range-side ones (columns v_i): ``m u_i =
    sigma_i v_i`` and ``m.T v_i = sigma_i u_i``.  ``sigma`` is sorted
    nonincreasing and nonnegative.
    """

    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.v * self.sigma) @ self.u.T


def _hestenes(a: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """One-sided Jacobi on a (rows >= cols): returns q, s, w with a = q s w^T.

    Columns of the working copy are rotated pairwise until all normalized
    column dot products fall below SVD_OFFDIAG_TOL; the accumulated rotations
    form w, the normalized columns form q, their norms s.
    """
    g = a.copy()
    rows, cols = g.shape
    w = np.eye(cols)
    worst = 0.0
    for _ in range(SVD_MAX_SWEEPS):
        worst = 0.0
        for p in range(cols - 1):
            for q in range(p + 1, cols):
                gp = g[:, p]
                gq = g[:, q]
                app = gp @ gp
                aqq = gq @ gq
                apq = gp @ gq
                denom = math.sqrt(app * aqq)
                if denom == 0.0:
                    continue
                rel = abs(apq) / denom
                if rel <= SVD_OFFDIAG_TOL:
                    continue
                worst = max(worst, rel)
                zeta = (aqq - app) / (2.0 * apq)
                t = math.copysign(1.0, zeta) / (abs(zeta) + math.hypot(1.0, zeta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t
                g[:, p], g[:, q] = c * gp - s * gq, s * gp + c * gq
                wp = w[:, p].copy()
                wq = w[:, q].copy()
                w[:, p] = c * wp - s * wq
                w[:, q] = s * wp + c * wq
        if worst <= SVD_OFFDIAG_TOL:
            break
    else:
        raise SvdConvergenceError((rows, cols), worst)

    s = np.sqrt(np.sum(g * g, axis=0))
    order = np.argsort(-s, kind="stable")
    s = s[order]
    g = g[:, order]
    w = w[:, order]

    q = np.zeros_like(g)
    nonzero = s > 0.0
    q[:, nonzero] = g[:, nonzero] / s[nonzero]
    # Complete exactly-zero columns to an orthonormal set (rank-deficient
    # input); candidates are canonical basis vectors, Gram-Schmidt projected.
    for j in np.nonzero(~nonzero)[0]:
        for k in range(rows):
            cand = np.zeros(rows)
            cand[k] = 1.0
            cand -= q @ (q.T @ cand)
            nrm = np.linalg.norm(cand)
            if nrm > 0.5:
                q[:, j] = cand / nrm
                break
    return q, s, w


def svd(m) -> Svd:
    """Singular value decomposition of a dense matrix.

    Raises SvdConvergenceError if the sweep cap is hit, and ValueError on
    non-finite input.  Sign convention: the first entry of each v-column
    that is nonzero (above 1e-12 in magnitude) is made positive, flipping
    the paired u-column with it, so decompositions are deterministic.
    """
    a = as_matrix(m)
    if not np.all(np.isfinite(a)):
        raise ValueError("svd requires finite entries")
    if a.shape[0] >= a.shape[1]:
        q, s, w = _hestenes(a)
        u, v = w, q
    else:
        q, s, w = _hestenes(a.T.copy())
        u, v = q, w

    u = u.copy()
    v = v.copy()
    for i in range(v.shape[1]):
        col = v[:, i]
        nz = np.nonzero(np.abs(col) > 1e-12)[0]
        if nz.size and col[nz[0]] < 0.0:
            v[:, i] = -col
            u[:, i] = -u[:, i]
    return Svd(u=u, sigma=s, v=v)


def solve_spd(m, rhs) -> np.ndarray:
    """Solve m x = rhs for symmetric positive definite m (Cholesky).

    Intended for Gram-plus-shift matrices ``B^T B + alpha I`` with alpha > 0;
    raises ValueError on Cholesky breakdown (non-SPD input).
    """
    return spd_solve(spd_factor(m), as_vector(rhs))


def spd_factor(m):
    """Cholesky factorization of an SPD matrix, reusable across solves."""
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"solve_spd needs a square matrix, got {a.shape}")
    try:
        return scipy.linalg.cho_factor(a, lower=True, check_finite=False)
    except scipy.linalg.LinAlgError as exc:
        raise ValueError(f"Cholesky breakdown, matrix is not SPD: {exc}") from exc


def spd_solve(factor, rhs: np.ndarray) -> np.ndarray:
    """Solve with a factorization from spd_factor."""
    return scipy.linalg.cho_solve(factor, rhs, check_finite=False)


def dominant_eigenvalue(m, iters: int = POWER_ITERS_DEFAULT, seed: int = 0) -> float:
    """Largest eigenvalue of a symmetric PSD matrix by power iteration.

    Always returns after ``iters`` steps; the estimate is the final Rayleigh
    quotient.  The start vector is drawn from the seeded package generator,
    so results are reproducible.
    """
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"dominant_eigenvalue needs a square matrix, got {a.shape}")
    n = a.shape[0]
    x = SplitMix64(seed).normals(n)
    nrm = np.linalg.norm(x)
    if nrm == 0.0:
        x[0] = 1.0
        nrm = 1.0
    x /= nrm
    lam = 0.0
    for _ in range(iters):
        y = a @ x
        ynorm = np.linalg.norm(y)
        if ynorm == 0.0:
            return 0.0  # start vector fell in the nullspace (zero matrix case)
        x = y / ynorm
        lam = float(x @ (a @ x))
    return lam
