"""Proximal operators against their variational definition."""

import numpy as np
import pytest

import adp
from adp.prox import ProxKind

ALL_KINDS = [ProxKind.HALF_SQUARED_L2, ProxKind.L1, ProxKind.NONNEG_INDICATOR]


def penalty(kind, x):
    if kind is ProxKind.HALF_SQUARED_L2:
        return 0.5 * x * x
    if kind is ProxKind.L1:
        return np.abs(x)
    return np.where(x >= 0.0, 0.0, np.inf)


def prox_grid_oracle(kind, t, v, half_width=6.0, points=240001):
    """Componentwise argmin of 0.5 (x - v)^2 + t R(x) over a dense grid."""
    out = np.empty_like(v)
    for i, vi in enumerate(v):
        grid = np.linspace(vi - half_width, vi + half_width, points)
        vals = 0.5 * (grid - vi) ** 2 + t * penalty(kind, grid)
        out[i] = grid[np.argmin(vals)]
    return out


class TestProxApply:
    def test_half_squared_l2_scalar(self):
        np.testing.assert_allclose(adp.prox_apply(ProxKind.HALF_SQUARED_L2, 1.0, [2.0]), [1.0])

    def test_l1_shrinkage(self):
        np.testing.assert_allclose(
            adp.prox_apply(ProxKind.L1, 0.5, [2.0, -0.3]), [1.5, 0.0]
        )

    def test_nonneg_clip(self):
        np.testing.assert_allclose(
            adp.prox_apply(ProxKind.NONNEG_INDICATOR, 0.7, [-1.0, 2.0]), [0.0, 2.0]
        )

    @pytest.mark.parametrize("kind", ALL_KINDS)
    def test_matches_grid_search(self, kind):
        """prox equals the brute-force minimizer within the grid resolution."""
        rng = np.random.default_rng(9)
        v = rng.uniform(-3.0, 3.0, size=6)
        t = 0.8
        got = adp.prox_apply(kind, t, v)
        want = prox_grid_oracle(kind, t, v)
        step = 12.0 / 240000
        np.testing.assert_allclose(got, want, atol=step)

    def test_negative_threshold_rejected(self):
        with pytest.raises(ValueError, match="nonnegative"):
            adp.prox_apply(ProxKind.L1, -0.1, [1.0])


class TestProxProperties:
    @pytest.mark.parametrize("kind", ALL_KINDS)
    def test_nonexpansive(self, kind):
        """||prox(u) - prox(w)|| <= ||u - w||."""
        rng = np.random.default_rng(42)
        for _ in range(50):
            u = rng.uniform(-5.0, 5.0, size=8)
            w = rng.uniform(-5.0, 5.0, size=8)
            t = float(rng.uniform(0.0, 2.0))
            du = adp.prox_apply(kind, t, u) - adp.prox_apply(kind, t, w)
            assert np.linalg.norm(du) <= np.linalg.norm(u - w) + 1e-12

    def test_zero_threshold_identity(self):
        rng = np.random.default_rng(6)
        v = rng.uniform(-2.0, 2.0, size=5)
        for kind in (ProxKind.HALF_SQUARED_L2, ProxKind.L1):
            np.testing.assert_array_equal(adp.prox_apply(kind, 0.0, v), v)
        nonneg = np.abs(v)
        np.testing.assert_array_equal(
            adp.prox_apply(ProxKind.NONNEG_INDICATOR, 0.0, nonneg), nonneg
        )


class TestProxDerivative:
    def test_l1_zero_at_inactive(self):
        """Coordinates thresholded to zero get derivative 0 (kink convention)."""
        d = adp.prox_derivative(ProxKind.L1, 1.0, [0.5, -0.5, 2.0, 1.0])
        np.testing.assert_array_equal(d, [0.0, 0.0, 1.0, 0.0])

    def test_relu_corner(self):
        d = adp.prox_derivative(ProxKind.NONNEG_INDICATOR, 0.3, [-1.0, 0.0, 1.0])
        np.testing.assert_array_equal(d, [0.0, 0.0, 1.0])

    @pytest.mark.parametrize("kind", ALL_KINDS)
    def test_matches_finite_differences_away_from_kinks(self, kind):
        rng = np.random.default_rng(3)
        t = 0.6
        v = rng.uniform(-3.0, 3.0, size=7)
        v = v[np.abs(np.abs(v) - t) > 1e-3]  # stay away from the kinks
        v = v[np.abs(v) > 1e-3]
        h = 1e-7
        fd = (adp.prox_apply(kind, t, v + h) - adp.prox_apply(kind, t, v - h)) / (2 * h)
        np.testing.assert_allclose(adp.prox_derivative(kind, t, v), fd, atol=1e-6)
