"""Spectral filters: values, filtered inverses, order-optimality conditions."""

import numpy as np
import pytest

import adp
from adp.filters import FilterFamily, SpectralFilter, default_sigma_grid


def soft_tsvd_oracle_beta(sigma, alpha):
    """Brute-force the scalar beta minimizing |sigma*beta/(beta^2+alpha) - 1|.

    The composition sigma*beta/(beta^2+alpha) evaluated at the minimizer is
    the soft-TSVD response; used to cross-check filter_value from the
    definition rather than the closed form.
    """
    grid = np.linspace(1e-6, 2.0 * max(sigma, 1.0), 2_000_001)
    vals = np.abs(sigma * grid / (grid**2 + alpha) - 1.0)
    return float(grid[np.argmin(vals)])


class TestFilterValue:
    def test_soft_tsvd_knee_continuity(self):
        alpha = 0.3
        knee = 2.0 * np.sqrt(alpha)
        f = SpectralFilter(FilterFamily.SOFT_TSVD, alpha)
        assert adp.filter_value(f, knee) == 1.0
        assert adp.filter_value(f, knee * (1 - 1e-12)) == pytest.approx(1.0, abs=1e-11)

    def test_soft_tsvd_zero(self):
        assert adp.filter_value(SpectralFilter(FilterFamily.SOFT_TSVD, 0.04), 0.0) == 0.0

    def test_soft_tsvd_against_beta_oracle(self):
        """At alpha=0.04, sigma=0.2 the response is 0.5, and it equals
        sigma*beta/(beta^2+alpha) at the brute-force optimal beta (= sqrt(alpha))."""
        alpha, sigma = 0.04, 0.2
        f = SpectralFilter(FilterFamily.SOFT_TSVD, alpha)
        assert adp.filter_value(f, sigma) == pytest.approx(0.5, abs=1e-15)
        beta = soft_tsvd_oracle_beta(sigma, alpha)
        assert beta == pytest.approx(np.sqrt(alpha), abs=1e-5)
        composed = sigma * beta / (beta**2 + alpha)
        assert adp.filter_value(f, sigma) == pytest.approx(composed, abs=1e-9)

    def test_tikhonov_and_tsvd(self):
        assert adp.filter_value(SpectralFilter(FilterFamily.TIKHONOV, 1.0), 1.0) == 0.5
        f = SpectralFilter(FilterFamily.TSVD, 0.1)
        assert adp.filter_value(f, 0.1) == 1.0
        assert adp.filter_value(f, 0.0999) == 0.0

    def test_negative_sigma_rejected(self):
        with pytest.raises(ValueError, match="nonnegative"):
            adp.filter_value(SpectralFilter(FilterFamily.TIKHONOV, 1.0), -1.0)

    def test_alpha_positive_required(self):
        with pytest.raises(ValueError, match="positive"):
            SpectralFilter(FilterFamily.TIKHONOV, 0.0)

    def test_soft_tsvd_monotone_in_sigma(self):
        f = SpectralFilter(FilterFamily.SOFT_TSVD, 0.01)
        grid = np.linspace(0.0, 1.0, 500)
        vals = adp.filter_value(f, grid)
        assert np.all(np.diff(vals) >= 0.0)
        assert np.all(vals <= 1.0)

    def test_soft_tsvd_monotone_in_alpha(self):
        """Below the knee, increasing alpha damps harder."""
        sigma = 0.05
        v1 = adp.filter_value(SpectralFilter(FilterFamily.SOFT_TSVD, 1e-3), sigma)
        v2 = adp.filter_value(SpectralFilter(FilterFamily.SOFT_TSVD, 1e-2), sigma)
        assert v2 < v1


class TestFilteredPseudoinverse:
    def test_tikhonov_on_identity(self):
        s = adp.svd(np.eye(3))
        y = np.array([2.0, 0.0, 0.0])
        x = adp.filtered_pseudoinverse(s, SpectralFilter(FilterFamily.TIKHONOV, 1.0), y)
        np.testing.assert_allclose(x, [1.0, 0.0, 0.0], atol=1e-14)

    def test_soft_tsvd_identity_region_is_exact_inverse(self):
        """With every sigma at or above the knee the filter is 1 and the
        result is the plain least-squares inverse."""
        a = np.diag([3.0, 2.0, 1.0])
        alpha = 0.2  # knee = 2 sqrt(0.2) ~ 0.894 < 1
        s = adp.svd(a)
        rng = np.random.default_rng(0)
        y = rng.standard_normal(3)
        x = adp.filtered_pseudoinverse(s, SpectralFilter(FilterFamily.SOFT_TSVD, alpha), y)
        np.testing.assert_allclose(x, np.linalg.solve(a, y), atol=1e-12)

    def test_tikhonov_matches_normal_equations(self):
        rng = np.random.default_rng(13)
        a = rng.standard_normal((8, 8))
        y = rng.standard_normal(8)
        alpha = 0.05
        x = adp.filtered_pseudoinverse(adp.svd(a), SpectralFilter(FilterFamily.TIKHONOV, alpha), y)
        want = adp.solve_spd(a.T @ a + alpha * np.eye(8), a.T @ y)
        np.testing.assert_allclose(x, want, atol=1e-9)

    def test_zero_singular_values_contribute_nothing(self):
        a = np.zeros((3, 3))
        a[0, 0] = 1.0
        s = adp.svd(a)
        x = adp.filtered_pseudoinverse(s, SpectralFilter(FilterFamily.TIKHONOV, 0.1), np.ones(3))
        assert np.all(np.isfinite(x))

    def test_dimension_mismatch(self):
        s = adp.svd(np.eye(3))
        with pytest.raises(ValueError, match="dimension mismatch"):
            adp.filtered_pseudoinverse(s, SpectralFilter(FilterFamily.TIKHONOV, 1.0), np.ones(4))


class TestOrderOptimality:
    def test_soft_tsvd_all_conditions_hold(self):
        grid = default_sigma_grid()
        for alpha in (1e-4, 1e-3, 1e-2):
            for nu in (0.5, 1.0, 2.0):
                r = adp.check_order_optimality(SpectralFilter(FilterFamily.SOFT_TSVD, alpha), nu, grid)
                assert r.all_ok, (alpha, nu, r)

    def test_tikhonov_fails_condition_two_at_nu_three(self):
        grid = default_sigma_grid()
        r = adp.check_order_optimality(SpectralFilter(FilterFamily.TIKHONOV, 1e-3), 3.0, grid)
        assert not r.cond2_ok
        assert r.cond1_ok and r.cond3_ok

    def test_tikhonov_holds_below_two(self):
        grid = default_sigma_grid()
        for nu in (0.5, 1.0, 1.5):
            r = adp.check_order_optimality(SpectralFilter(FilterFamily.TIKHONOV, 1e-3), nu, grid)
            assert r.all_ok, (nu, r)

    def test_tsvd_holds(self):
        grid = default_sigma_grid()
        for nu in (0.5, 1.0, 3.0):
            r = adp.check_order_optimality(SpectralFilter(FilterFamily.TSVD, 1e-3), nu, grid)
            assert r.all_ok, (nu, r)

    def test_soft_tsvd_condition_three_supremum_is_one(self):
        grid = default_sigma_grid()
        r = adp.check_order_optimality(SpectralFilter(FilterFamily.SOFT_TSVD, 1e-2), 1.0, grid)
        assert r.sup3 == 1.0

    def test_empty_grid_rejected(self):
        with pytest.raises(ValueError, match="nonempty"):
            adp.check_order_optimality(SpectralFilter(FilterFamily.TSVD, 1e-2), 1.0, [])
