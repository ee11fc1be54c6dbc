"""Forward operators: discretized integration, adjoints, rank-one updates."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import as_matrix, as_vector


@dataclass(frozen=True)
class IntegrationOperator:
    """n x n discretization of x |-> integral of x from 0 to t on [0, 1].

    Row i approximates the integral up to the midpoint t = (i + 1/2) h with
    h = 1/n: weight h for every earlier cell, h/2 for the current one, and 0
    above the diagonal.  The matrix is lower triangular with a strictly
    positive diagonal, hence invertible, but its inverse grows with n, which
    is what makes the problem ill-posed at scale.
    """

    n: int
    matrix: np.ndarray


def make_integration(n: int) -> IntegrationOperator:
    """Build the integration operator on an n-cell grid (n >= 1)."""
    if n < 1:
        raise ValueError(f"integration operator needs n >= 1, got {n}")
    h = 1.0 / n
    m = np.tril(np.full((n, n), h), -1) + np.eye(n) * (h / 2.0)
    return IntegrationOperator(n=n, matrix=m)


def grid_midpoints(n: int) -> np.ndarray:
    """Grid points t_i = (i + 1/2)/n matching the integration rows."""
    return (np.arange(n) + 0.5) / n


def adjoint(m) -> np.ndarray:
    """Adjoint of a real matrix between Euclidean spaces: the transpose."""
    return as_matrix(m).T.copy()


def rank_one_update(b, c: float, v, u) -> np.ndarray:
    """Return ``b - c * outer(v, u)``.

    ``v`` lives in the output space (rows of b), ``u`` in the input space
    (columns).  When (u, v) is a singular pair of b this shifts exactly one
    singular value and leaves the rest of the spectrum alone.
    """
    b = as_matrix(b)
    v = as_vector(v)
    u = as_vector(u)
    if v.shape[0] != b.shape[0] or u.shape[0] != b.shape[1]:
        raise ValueError(
            f"dimension mismatch in rank_one_update: b is {b.shape}, "
            f"v has length {v.shape[0]}, u has length {u.shape[0]}"
        )
    return b - c * np.outer(v, u)
