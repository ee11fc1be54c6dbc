"""Iterative schemes: Landweber, ISTA / proximal gradient, unrolled forward.

The unrolled network and ISTA are the same arithmetic by construction: one
layer computes prox_{lambda*alpha*R}(x - lambda * B^T (B x - y)), which is one
proximal-gradient step on 0.5 ||B x - y||^2 + alpha R(x).  Writing the layer
as an affine map (I - lambda B^T B) x + lambda B^T y followed by the
activation is the same expression regrouped; both entry points below share
one step function so they agree bit for bit.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .linalg import as_matrix, as_vector, dominant_eigenvalue
from .prox import ProxKind, prox_apply


@dataclass
class IstaConfig:
    lam: float
    alpha: float
    prox: ProxKind
    max_iters: int
    tol: float = 0.0

    def __post_init__(self):
        if self.lam <= 0.0:
            raise ValueError(f"step size must be positive, got {self.lam}")
        if self.alpha <= 0.0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")


@dataclass
class IstaResult:
    x: np.ndarray
    iters: int
    converged: bool


def default_step_size(b) -> float:
    """1 / (largest eigenvalue of B^T B), the usual safe step; 1.0 for B = 0."""
    b = as_matrix(b)
    mu = dominant_eigenvalue(b.T @ b)
    return 1.0 / mu if mu > 0.0 else 1.0


def pg_step(b, y, lam: float, alpha: float, kind: ProxKind, x: np.ndarray) -> np.ndarray:
    """One proximal-gradient step; shared by ista and unrolled_forward."""
    return prox_apply(kind, lam * alpha, x - lam * (b.T @ (b @ x - y)))


def landweber(a, y, x0, eta: float, iters: int) -> tuple[np.ndarray, np.ndarray]:
    """Landweber iteration x <- x - eta * A^T (A x - y).

    Returns the final iterate and the full trace of shape (iters + 1, n),
    starting at x0.
    """
    a = as_matrix(a)
    y = as_vector(y)
    x = as_vector(x0).copy()
    if eta <= 0.0:
        raise ValueError(f"relaxation eta must be positive, got {eta}")
    trace = np.empty((iters + 1, x.shape[0]))
    trace[0] = x
    for k in range(iters):
        x = x - eta * (a.T @ (a @ x - y))
        trace[k + 1] = x
    return x, trace


def trivial_network_descent(a, y, theta0, eta: float, iters: int) -> tuple[np.ndarray, np.ndarray]:
    """Fit the single-layer identity network by gradient descent.

    The network ignores its input and outputs its parameter vector, so
    fitting 0.5 ||A out - y||^2 over the parameters is gradient descent in
    solution space; the iterates coincide with landweber's exactly.  Kept as
    a separate code path so the equivalence can be tested rather than assumed.
    """
    a = as_matrix(a)
    y = as_vector(y)
    theta = as_vector(theta0).copy()

    def network_output(params: np.ndarray) -> np.ndarray:
        return params  # phi_theta(z) = theta for every input z

    trace = np.empty((iters + 1, theta.shape[0]))
    trace[0] = theta
    for k in range(iters):
        out = network_output(theta)
        grad = a.T @ (a @ out - y)
        theta = theta - eta * grad
        trace[k + 1] = theta
    return theta, trace


def ista(b, y, x0, cfg: IstaConfig) -> IstaResult:
    """Proximal-gradient iteration for 0.5 ||B x - y||^2 + alpha R(x).

    Stops when ||x_{k+1} - x_k|| <= cfg.tol (if tol > 0) or after
    cfg.max_iters steps; a non-converged run is reported via the flag, not
    an exception.  Warns if the step size exceeds 1 / lambda_max(B^T B).
    """
    b = as_matrix(b)
    y = as_vector(y)
    x = as_vector(x0).copy()
    mu = dominant_eigenvalue(b.T @ b)
    if mu > 0.0 and cfg.lam > 1.0 / mu * (1.0 + 1e-9):
        warnings.warn(
            f"ISTA step size {cfg.lam:.3e} exceeds 1/mu = {1.0 / mu:.3e}; "
            "iteration may not descend",
            stacklevel=2,
        )
    for k in range(cfg.max_iters):
        x_next = pg_step(b, y, cfg.lam, cfg.alpha, cfg.prox, x)
        if cfg.tol > 0.0 and np.linalg.norm(x_next - x) <= cfg.tol:
            return IstaResult(x=x_next, iters=k + 1, converged=True)
        x = x_next
    return IstaResult(x=x, iters=cfg.max_iters, converged=cfg.tol <= 0.0)


def unrolled_forward(b, y, z, layers: int, lam: float, alpha: float, kind: ProxKind) -> np.ndarray:
    """Forward pass of the shared-weight unrolled network: `layers` identical
    proximal-gradient steps applied to the input z.

    With the same start and step count this equals ista's iterate exactly.
    """
    b = as_matrix(b)
    y = as_vector(y)
    x = as_vector(z).copy()
    if b.shape[0] != y.shape[0] or b.shape[1] != x.shape[0]:
        raise ValueError(
            f"dimension mismatch: B is {b.shape}, y has length {y.shape[0]}, "
            f"z has length {x.shape[0]}"
        )
    if layers < 0:
        raise ValueError(f"layer count must be nonnegative, got {layers}")
    for _ in range(layers):
        x = pg_step(b, y, lam, alpha, kind, x)
    return x
