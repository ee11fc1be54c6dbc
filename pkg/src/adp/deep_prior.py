"""Optimizing the operator inside a Tikhonov functional.

The reconstruction is parametrized by an operator B through the inner
problem

    x(B) = argmin_x 0.5 ||B x - y||^2 + alpha R(x),

and B itself is chosen to minimize the outer data fit

    F(B) = 0.5 ||A x(B) - y||^2.

For R(x) = ||x||^2 / 2 the inner solve is closed form,
x(B) = (B^T B + alpha I)^{-1} B^T y, and F has an explicit gradient in B
(grad_f below; grad_f_at_a is its simplified value at the starting point
B = A).  Descending F from B0 = A yields a reconstruction x(B_opt) that this
module also characterizes exactly in two tractable regimes:

* data aligned with a single singular pair (u, v) of A: the descent reduces
  to a scalar iteration on the corresponding singular value beta of B
  (beta_update / beta_fixed_points / beta_iteration), and

* B restricted to share A's singular system: the global minimizer has
  closed-form singular values (optimal_b), and the resulting reconstruction
  map equals the soft-TSVD spectral filter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .linalg import Svd, as_matrix, as_vector, spd_factor, spd_solve
from .prox import ProxKind, prox_apply, prox_derivative
from .rng import SplitMix64

# Descent aborts once the objective exceeds this multiple of its start value.
DIVERGENCE_FACTOR = 1e6

# Central-difference step for the numeric stability classification of the
# scalar fixed points.
_STABILITY_FD_STEP = 1e-7


@dataclass
class DeepPriorProblem:
    """Problem data: forward operator a, data y, penalty weight alpha,
    penalty kind, and proximal step size lam (None = use 1/mu at solve time).
    """

    a: np.ndarray
    y: np.ndarray
    alpha: float
    prox: ProxKind = ProxKind.HALF_SQUARED_L2
    lam: float | None = None

    def __post_init__(self):
        self.a = as_matrix(self.a)
        self.y = as_vector(self.y)
        if self.a.shape[0] != self.y.shape[0]:
            raise ValueError(
                f"dimension mismatch: A is {self.a.shape}, y has length {self.y.shape[0]}"
            )
        if not self.alpha > 0.0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")

    def step_size(self) -> float:
        from .solvers import default_step_size

        if self.lam is None:
            self.lam = default_step_size(self.a)
        return self.lam


class DescentMode(Enum):
    EXACT_GRADIENT = "exact"
    TRUNCATED_UNROLL = "unroll"


@dataclass
class DescentConfig:
    """Settings for descend_b.

    eta is the learning rate on B; iters the number of B-updates; layers the
    unroll depth per update (TRUNCATED_UNROLL only); z_scale the componentwise
    std of the random network input; b0_noise_scale adds seeded Gaussian noise
    to the starting operator B0 = A (0 keeps B0 = A exactly).
    """

    iters: int
    eta: float = 0.05
    layers: int = 10
    mode: DescentMode = DescentMode.EXACT_GRADIENT
    seed: int = 0
    z_scale: float = 1e-3
    b0_noise_scale: float = 0.0

    def __post_init__(self):
        if self.eta < 0.0:
            raise ValueError(f"learning rate must be nonnegative, got {self.eta}")
        if self.layers < 1:
            raise ValueError(f"unroll depth must be at least 1, got {self.layers}")
        if self.iters < 0:
            raise ValueError(f"iteration count must be nonnegative, got {self.iters}")


@dataclass
class DescentTrace:
    """Per-update history of a descent run.

    Entry k (0-based) describes the state after the (k+1)-th update of B:
    the true error of the current reconstruction (nan when no reference was
    given), the outer objective, and the squared Frobenius norm of the update
    just taken.  b_opt and x_opt are the final operator and reconstruction;
    diverged marks a run aborted by the objective blow-up guard, in which
    case the arrays hold the completed prefix only.
    """

    true_error: np.ndarray
    objective: np.ndarray
    frob_sq: np.ndarray
    b_opt: np.ndarray
    x_opt: np.ndarray
    diverged: bool = False


class Stability(Enum):
    ATTRACTIVE = "attractive"
    REPULSIVE = "repulsive"


@dataclass
class BetaIterationResult:
    betas: np.ndarray
    fixed_points: list[tuple[float, Stability]]
    x_coefficient: float
    converged: bool


def tikhonov_solve(b, y, alpha: float) -> np.ndarray:
    """Closed-form inner minimizer x = (B^T B + alpha I)^{-1} B^T y."""
    b = as_matrix(b)
    y = as_vector(y)
    if not alpha > 0.0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    gram = b.T @ b + alpha * np.eye(b.shape[1])
    return spd_solve(spd_factor(gram), b.T @ y)


def objective_f(p: DeepPriorProblem, b) -> float:
    """Outer objective F(B) = 0.5 ||A x(B) - y||^2."""
    x = tikhonov_solve(b, p.y, p.alpha)
    r = p.a @ x - p.y
    return 0.5 * float(r @ r)


def _require_quadratic(p: DeepPriorProblem, what: str):
    if p.prox is not ProxKind.HALF_SQUARED_L2:
        raise ValueError(
            f"{what} is available only for the squared-norm penalty "
            f"(closed-form inner solve); got {p.prox}"
        )


def _grad_from_factor(p: DeepPriorProblem, b: np.ndarray, factor, x: np.ndarray) -> np.ndarray:
    """Gradient of F at b, reusing the Cholesky factor of B^T B + alpha I.

    Differentiating x(B) = M B^T y with M = (B^T B + alpha I)^{-1} gives
    dx(dB) = -M (dB^T B + B^T dB) x + M dB^T y; pairing with the outer
    residual direction z = A^T (A x(B) - y) and collecting the Frobenius
    adjoint of each term yields

        grad F(B) = (y - B x) (M z)^T - (B M z) x^T.
    """
    z = p.a.T @ (p.a @ x - p.y)
    mz = spd_solve(factor, z)
    return np.outer(p.y - b @ x, mz) - np.outer(b @ mz, x)


def grad_f(p: DeepPriorProblem, b) -> np.ndarray:
    """Gradient of F(B) with respect to B (same shape as B)."""
    _require_quadratic(p, "grad_f")
    b = as_matrix(b)
    factor = spd_factor(b.T @ b + p.alpha * np.eye(b.shape[1]))
    x = spd_solve(factor, b.T @ p.y)
    return _grad_from_factor(p, b, factor, x)


def grad_f_at_a(p: DeepPriorProblem) -> np.ndarray:
    """Gradient of F at the starting operator B = A, in its explicit form

        alpha [ A M A^T y (M^2 A^T y)^T + A M^2 A^T y (M A^T y)^T
                - y (M^2 A^T y)^T ]

    with M = (A^T A + alpha I)^{-1}.  At B = A the residual direction
    collapses to z = -alpha M A^T y, which turns the general gradient into
    this three-rank-one-term expression; it agrees with grad_f(p, A) and is
    the starting point of the scalar singular-value analysis.
    """
    _require_quadratic(p, "grad_f_at_a")
    a, y, alpha = p.a, p.y, p.alpha
    factor = spd_factor(a.T @ a + alpha * np.eye(a.shape[1]))
    m1 = spd_solve(factor, a.T @ y)  # M A^T y
    m2 = spd_solve(factor, m1)  # M^2 A^T y
    return alpha * (
        np.outer(a @ m1, m2) + np.outer(a @ m2, m1) - np.outer(y, m2)
    )


def _descend_exact(p: DeepPriorProblem, cfg: DescentConfig, b0: np.ndarray, x_true):
    n = p.a.shape[1]
    eye = np.eye(n)
    true_error = np.full(cfg.iters, np.nan)
    objective = np.empty(cfg.iters)
    frob_sq = np.empty(cfg.iters)

    b = b0
    factor = spd_factor(b.T @ b + p.alpha * eye)
    x = spd_solve(factor, b.T @ p.y)
    r = p.a @ x - p.y
    obj = 0.5 * float(r @ r)
    obj_limit = DIVERGENCE_FACTOR * obj + 1e-12

    for k in range(cfg.iters):
        g = _grad_from_factor(p, b, factor, x)
        step = cfg.eta * g
        b = b - step
        factor = spd_factor(b.T @ b + p.alpha * eye)
        x = spd_solve(factor, b.T @ p.y)
        with np.errstate(over="ignore", invalid="ignore"):  # inf marks divergence
            r = p.a @ x - p.y
            obj = 0.5 * float(r @ r)
            objective[k] = obj
            frob_sq[k] = float(np.sum(step * step))
        if x_true is not None:
            true_error[k] = float(np.linalg.norm(x - x_true))
        if not math.isfinite(obj) or obj > obj_limit:
            return DescentTrace(
                true_error=true_error[: k + 1],
                objective=objective[: k + 1],
                frob_sq=frob_sq[: k + 1],
                b_opt=b,
                x_opt=x,
                diverged=True,
            )
    return DescentTrace(true_error, objective, frob_sq, b_opt=b, x_opt=x)


def _unroll_gradient(
    p: DeepPriorProblem, b: np.ndarray, state: np.ndarray, lam: float, layers: int
) -> tuple[np.ndarray, np.ndarray]:
    """Output and B-gradient of `layers` shared-weight proximal layers.

    Forward: x^{l+1} = prox(x^l - lam B^T (B x^l - y)); the input state is
    treated as a constant, so backpropagation runs through these layers only.
    Returns (output, gradient of 0.5 ||A out - y||^2 with respect to B).
    """
    t = lam * p.alpha
    xs = [state]
    pres = []
    for _ in range(layers):
        pre = xs[-1] - lam * (b.T @ (b @ xs[-1] - p.y))
        pres.append(pre)
        xs.append(prox_apply(p.prox, t, pre))
    out = xs[-1]

    grad = np.zeros_like(b)
    gx = p.a.T @ (p.a @ out - p.y)
    for l in reversed(range(layers)):
        q = prox_derivative(p.prox, t, pres[l]) * gx
        grad -= lam * (np.outer(b @ xs[l] - p.y, q) + np.outer(b @ q, xs[l]))
        gx = q - lam * (b.T @ (b @ q))
    return out, grad


def _descend_unroll(p: DeepPriorProblem, cfg: DescentConfig, b0: np.ndarray, x_true):
    lam = p.step_size()
    gen = SplitMix64(cfg.seed)
    state = cfg.z_scale * gen.normals(p.a.shape[1])

    true_error = np.full(cfg.iters, np.nan)
    objective = np.empty(cfg.iters)
    frob_sq = np.empty(cfg.iters)

    b = b0
    obj_limit = None
    for k in range(cfg.iters):
        with np.errstate(over="ignore", invalid="ignore"):  # inf marks divergence
            out, g = _unroll_gradient(p, b, state, lam, cfg.layers)
            step = cfg.eta * g
            b = b - step
            state = out
            r = p.a @ out - p.y
            obj = 0.5 * float(r @ r)
            objective[k] = obj
            frob_sq[k] = float(np.sum(step * step))
        if obj_limit is None:
            obj_limit = DIVERGENCE_FACTOR * obj + 1e-12
        if x_true is not None:
            true_error[k] = float(np.linalg.norm(out - x_true))
        if not math.isfinite(obj) or obj > obj_limit:
            return DescentTrace(
                true_error=true_error[: k + 1],
                objective=objective[: k + 1],
                frob_sq=frob_sq[: k + 1],
                b_opt=b,
                x_opt=out,
                diverged=True,
            )
    return DescentTrace(true_error, objective, frob_sq, b_opt=b, x_opt=state)


def descend_b(p: DeepPriorProblem, cfg: DescentConfig, x_true=None) -> DescentTrace:
    """Gradient descent on the operator B, starting from B0 = A.

    EXACT_GRADIENT uses the closed-form gradient of F (squared-norm penalty
    only) and reports x(B_k) from the closed-form inner solve.
    TRUNCATED_UNROLL follows the network training scheme: a block of
    cfg.layers shared-weight proximal layers runs forward from the previous
    block's output, the gradient is backpropagated through that block only,
    and the reported reconstruction is the running network output.  It
    supports every prox kind.

    cfg.b0_noise_scale perturbs B0 with seeded Gaussian entries, for checking
    how sensitive results are to the starting operator.
    """
    if x_true is not None:
        x_true = as_vector(x_true)
    b0 = p.a.copy()
    if cfg.b0_noise_scale > 0.0:
        noise = SplitMix64(cfg.seed ^ 0x5DEECE66D).normals(b0.size)
        b0 = b0 + cfg.b0_noise_scale * noise.reshape(b0.shape)
    if cfg.mode is DescentMode.EXACT_GRADIENT:
        _require_quadratic(p, "descend_b in EXACT_GRADIENT mode")
        return _descend_exact(p, cfg, b0, x_true)
    return _descend_unroll(p, cfg, b0, x_true)


def beta_c(beta: float, sigma: float, alpha: float, delta: float, eta: float) -> float:
    """Update magnitude c(beta) of the scalar singular-value iteration."""
    num = eta * sigma * (sigma + delta) ** 2 * (alpha + beta**2 - sigma * beta) * (beta**2 - alpha)
    return num / (beta**2 + alpha) ** 3


def beta_update(beta: float, sigma: float, alpha: float, delta: float, eta: float) -> float:
    """One step beta <- beta - c(beta) of the singular-value iteration.

    This is the exact-gradient descent restricted to data along a single
    singular pair of A with coefficient sigma + delta; beta starts at sigma.
    """
    return beta - beta_c(beta, sigma, alpha, delta, eta)


def beta_fixed_points(sigma: float, alpha: float) -> list[tuple[float, Stability]]:
    """All real roots of c with attractive/repulsive labels.

    Roots: +-sqrt(alpha) always, and sigma/2 +- sqrt(sigma^2/4 - alpha) once
    sigma >= 2 sqrt(alpha).  A root is attractive when the iteration locally
    contracts, i.e. when the central-difference slope of c there is positive
    (slopes are classified numerically; an exactly zero slope only occurs at
    the sigma = 2 sqrt(alpha) triple root, which attracts one-sidedly and is
    labelled attractive).
    """
    if not (alpha > 0.0 and sigma > 0.0):
        raise ValueError(f"need positive sigma and alpha, got {sigma}, {alpha}")
    roots = [math.sqrt(alpha), -math.sqrt(alpha)]
    disc = sigma * sigma / 4.0 - alpha
    if disc >= 0.0:
        roots.append(sigma / 2.0 + math.sqrt(disc))
        roots.append(sigma / 2.0 - math.sqrt(disc))

    # eta and delta scale c by a positive constant, so any values classify.
    out = []
    h = _STABILITY_FD_STEP
    for r in roots:
        slope = (
            beta_c(r + h, sigma, alpha, 0.0, 1.0) - beta_c(r - h, sigma, alpha, 0.0, 1.0)
        ) / (2.0 * h)
        label = Stability.ATTRACTIVE if slope >= 0.0 else Stability.REPULSIVE
        out.append((r, label))
    return out


def beta_iteration(
    sigma: float,
    alpha: float,
    delta: float,
    eta: float,
    beta0: float | None = None,
    tol: float = 1e-12,
    max_iters: int = 200_000,
) -> BetaIterationResult:
    """Iterate beta_update from beta0 (default sigma) until the step falls
    below tol, and report the trajectory, the classified fixed points, and
    the limit reconstruction coefficient (sigma + delta) * beta/(beta^2+alpha).
    """
    beta = sigma if beta0 is None else beta0
    betas = [beta]
    converged = False
    for _ in range(max_iters):
        nxt = beta_update(beta, sigma, alpha, delta, eta)
        betas.append(nxt)
        if abs(nxt - beta) <= tol:
            beta = nxt
            converged = True
            break
        beta = nxt
    coeff = (sigma + delta) * beta / (beta * beta + alpha)
    return BetaIterationResult(
        betas=np.array(betas),
        fixed_points=beta_fixed_points(sigma, alpha),
        x_coefficient=coeff,
        converged=converged,
    )


def beta_limit_reconstruction(sigma: float, alpha: float, delta: float) -> float:
    """Limit coefficient on u of the scalar descent:
    (sigma + delta) / (2 sqrt(alpha)) below the knee sigma = 2 sqrt(alpha),
    (sigma + delta) / sigma at or above it.  Both attractive roots above the
    knee give the same reconstruction, so the limit is unique.
    """
    if not (alpha > 0.0 and sigma > 0.0):
        raise ValueError(f"need positive sigma and alpha, got {sigma}, {alpha}")
    if sigma < 2.0 * math.sqrt(alpha):
        return (sigma + delta) / (2.0 * math.sqrt(alpha))
    return (sigma + delta) / sigma


def optimal_b(svd_of_a: Svd, alpha: float) -> np.ndarray:
    """Global minimizer of F among operators sharing A's singular system.

    Its singular values are sigma_i/2 + sqrt(sigma_i^2/4 - alpha) where
    sigma_i >= 2 sqrt(alpha) and sqrt(alpha) below; they do not depend on the
    data y.  The induced reconstruction map equals the soft-TSVD filter.
    """
    if not alpha > 0.0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    sigma = svd_of_a.sigma
    knee = 2.0 * math.sqrt(alpha)
    betas = np.where(
        sigma >= knee,
        sigma / 2.0 + np.sqrt(np.maximum(sigma * sigma / 4.0 - alpha, 0.0)),
        math.sqrt(alpha),
    )
    return (svd_of_a.v * betas) @ svd_of_a.u.T
