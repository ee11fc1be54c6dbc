"""Integration operator discretization, adjoints, rank-one updates."""

import numpy as np
import pytest

import adp


class TestIntegration:
    def test_n1(self):
        op = adp.make_integration(1)
        np.testing.assert_array_equal(op.matrix, [[0.5]])

    def test_n4_entries(self):
        m = adp.make_integration(4).matrix
        assert np.all(np.diag(m) == 0.125)
        below = m[np.tril_indices(4, -1)]
        assert np.all(below == 0.25)
        assert np.all(m[np.triu_indices(4, 1)] == 0.0)

    def test_n4_applied_to_ones(self):
        """Row sums are the midpoint values (i + 1/2) h, exact for n = 4."""
        m = adp.make_integration(4).matrix
        np.testing.assert_array_equal(m @ np.ones(4), [0.125, 0.375, 0.625, 0.875])

    def test_row_sums_exact_power_of_two(self):
        n = 8
        m = adp.make_integration(n).matrix
        np.testing.assert_array_equal(m @ np.ones(n), (np.arange(n) + 0.5) / n)

    def test_grid_matches_rows(self):
        np.testing.assert_array_equal(adp.grid_midpoints(4), [0.125, 0.375, 0.625, 0.875])

    def test_all_singular_values_positive(self):
        s = adp.svd(adp.make_integration(12).matrix)
        assert np.all(s.sigma > 0.0)

    def test_invalid_size(self):
        with pytest.raises(ValueError, match="n >= 1"):
            adp.make_integration(0)


class TestAdjoint:
    def test_symmetric_fixed(self):
        m = np.array([[2.0, 1.0], [1.0, 3.0]])
        np.testing.assert_array_equal(adp.adjoint(m), m)

    def test_transpose(self):
        np.testing.assert_array_equal(
            adp.adjoint(np.array([[1.0, 2.0], [3.0, 4.0]])), [[1.0, 3.0], [2.0, 4.0]]
        )

    def test_involution(self):
        rng = np.random.default_rng(4)
        m = rng.standard_normal((5, 3))
        np.testing.assert_array_equal(adp.adjoint(adp.adjoint(m)), m)

    def test_inner_product_identity(self):
        """<Ax, y> == <x, A^T y> for random vectors."""
        rng = np.random.default_rng(17)
        for _ in range(20):
            a = rng.standard_normal((6, 4))
            x = rng.standard_normal(4)
            y = rng.standard_normal(6)
            assert abs((a @ x) @ y - x @ (adp.adjoint(a) @ y)) <= 1e-12


class TestRankOneUpdate:
    def test_zero_coefficient(self):
        rng = np.random.default_rng(1)
        b = rng.standard_normal((3, 3))
        np.testing.assert_array_equal(adp.rank_one_update(b, 0.0, np.ones(3), np.ones(3)), b)

    def test_unit_vectors(self):
        b = np.zeros((3, 3))
        v = np.array([1.0, 0.0, 0.0])
        u = np.array([0.0, 1.0, 0.0])
        out = adp.rank_one_update(b, 1.0, v, u)
        expected = np.zeros((3, 3))
        expected[0, 1] = -1.0
        np.testing.assert_array_equal(out, expected)

    def test_moves_single_singular_value(self):
        """Updating along a singular pair shifts only that singular value."""
        rng = np.random.default_rng(33)
        b = rng.standard_normal((6, 6))
        s = adp.svd(b)
        i = 2
        c = 0.3 * s.sigma[i]
        updated = adp.rank_one_update(b, c, s.v[:, i], s.u[:, i])
        new_sigma = np.sort(adp.svd(updated).sigma)
        expected = np.sort(np.concatenate([np.delete(s.sigma, i), [s.sigma[i] - c]]))
        np.testing.assert_allclose(new_sigma, expected, atol=1e-10)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="dimension mismatch"):
            adp.rank_one_update(np.eye(3), 1.0, np.ones(2), np.ones(3))
