"""Proximal operators used as solver steps and network activations.

Each kind is the proximal mapping of a convex penalty R with threshold
t >= 0 (in solver context t = lambda * alpha):

* HALF_SQUARED_L2: R(x) = ||x||^2 / 2, prox is uniform shrinkage v / (1+t).
* L1: R(x) = sum |x_i|, prox is componentwise soft thresholding.
* NONNEG_INDICATOR: R is the indicator of the nonnegative orthant, prox is
  the ReLU clip max(v, 0) for any t.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .linalg import as_vector


class ProxKind(Enum):
    HALF_SQUARED_L2 = "half_squared_l2"
    L1 = "l1"
    NONNEG_INDICATOR = "nonneg_indicator"


def prox_apply(kind: ProxKind, t: float, v) -> np.ndarray:
    """Evaluate prox_{t R}(v) componentwise."""
    if t < 0.0:
        raise ValueError(f"prox threshold must be nonnegative, got {t}")
    v = as_vector(v)
    if kind is ProxKind.HALF_SQUARED_L2:
        return v / (1.0 + t)
    if kind is ProxKind.L1:
        return np.sign(v) * np.maximum(np.abs(v) - t, 0.0)
    if kind is ProxKind.NONNEG_INDICATOR:
        return np.maximum(v, 0.0)
    raise ValueError(f"unknown prox kind {kind!r}")


def prox_derivative(kind: ProxKind, t: float, v) -> np.ndarray:
    """Diagonal of the prox Jacobian at v, for reverse-mode chain rules.

    At the nonsmooth points (soft-threshold kink, ReLU corner) the
    derivative is defined as 0: coordinates whose output is exactly zero
    carry no gradient.  This is a convention, not a function value, and the
    unrolled-network backprop in deep_prior relies on it.
    """
    if t < 0.0:
        raise ValueError(f"prox threshold must be nonnegative, got {t}")
    v = as_vector(v)
    if kind is ProxKind.HALF_SQUARED_L2:
        return np.full_like(v, 1.0 / (1.0 + t))
    if kind is ProxKind.L1:
        return (np.abs(v) > t).astype(np.float64)
    if kind is ProxKind.NONNEG_INDICATOR:
        return (v > 0.0).astype(np.float64)
    raise ValueError(f"unknown prox kind {kind!r}")
