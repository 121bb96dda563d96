"""Closed-form chain kernels against hand values and a brute-force oracle.

The oracle here is deliberately primitive and local to the tests: build the
dense precision matrix, invert it with numpy, rescale to unit diagonal.  The
library's own inversion module is a separate implementation and is compared
elsewhere.
"""

import math

import numpy as np
import pytest

from ggchain import (
    DomainError,
    centered_chain_correlation,
    centered_chain_correlation_limit,
    centered_chain_correlation_matrix,
    centered_chain_relative_error,
    decay_params,
    open_chain_correlation,
    open_chain_correlation_limit,
    open_chain_correlation_matrix,
    open_chain_covariance,
    open_chain_limit_envelope_error,
    open_chain_relative_error,
    rel_error_coefficient_centered,
    rel_error_coefficient_open,
)

TAU_GRID = (0.05, 0.15, 0.25, 0.35, 0.45, 0.49)
BOUNDS_TAU_GRID = (0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45)


def dense_correlation(n: int, tau: float) -> np.ndarray:
    """Brute-force reference: invert the dense precision matrix, rescale."""
    prec = np.eye(n) + np.diag([-tau] * (n - 1), 1) + np.diag([-tau] * (n - 1), -1)
    cov = np.linalg.inv(prec)
    scale = np.sqrt(np.diag(cov))
    return cov / np.outer(scale, scale)


class TestOpenChainCovariance:
    def test_two_node_hand_inversion(self):
        """2x2 precision [[1,-t],[-t,1]] inverts to entries t/(1-t^2), 1/(1-t^2)."""
        assert open_chain_covariance(2, 1, 2, 0.4) == pytest.approx(0.4 / (1 - 0.16), rel=1e-14)
        assert open_chain_covariance(2, 1, 1, 0.4) == pytest.approx(1.0 / (1 - 0.16), rel=1e-14)

    def test_single_node(self):
        for tau in TAU_GRID:
            assert open_chain_covariance(1, 1, 1, tau) == pytest.approx(1.0, rel=1e-14)

    def test_against_dense_inverse(self):
        for tau in (0.15, 0.45):
            for n in (2, 3, 7, 20):
                prec = np.eye(n) + np.diag([-tau] * (n - 1), 1) + np.diag([-tau] * (n - 1), -1)
                cov = np.linalg.inv(prec)
                for i in range(1, n + 1):
                    for j in range(i, n + 1):
                        assert open_chain_covariance(n, i, j, tau) == pytest.approx(
                            cov[i - 1, j - 1], rel=1e-11
                        )

    def test_domain(self):
        with pytest.raises(DomainError):
            open_chain_covariance(3, 0, 1, 0.4)
        with pytest.raises(DomainError):
            open_chain_covariance(3, 1, 4, 0.4)
        with pytest.raises(DomainError):
            open_chain_covariance(3, 1, 2, 0.0)


class TestOpenChainCorrelation:
    def test_two_node_equals_tau(self):
        """For n = 2 the correlation is the edge weight itself."""
        assert open_chain_correlation(2, 1, 2, 0.4) == pytest.approx(0.4, abs=1e-15)

    def test_three_node_hand_value(self):
        """n = 3 adjacent pair: sqrt(sinh r / sinh 3r) with r = ln 2."""
        expected = math.sqrt(0.75 / 3.9375)
        assert open_chain_correlation(3, 1, 2, 0.4) == pytest.approx(expected, rel=1e-14)

    def test_three_node_far_pair(self):
        """n = 3 end-to-end pair equals 4/21 = tau^2/(1 - tau^2) at tau = 0.4.

        Frozen from the dense-inversion oracle.
        """
        assert open_chain_correlation(3, 1, 3, 0.4) == pytest.approx(4.0 / 21.0, rel=1e-13)

    def test_diagonal_is_exactly_one(self):
        assert open_chain_correlation(5, 3, 3, 0.37) == 1.0

    def test_symmetric_in_indices(self):
        for i, j in [(1, 4), (2, 5), (3, 1)]:
            assert open_chain_correlation(6, i, j, 0.3) == open_chain_correlation(6, j, i, 0.3)

    @pytest.mark.parametrize("tau", TAU_GRID)
    def test_oracle_equivalence(self, tau):
        """Entrywise agreement with the dense inverse within 1e-10 relative."""
        for n in (2, 3, 5, 9, 16, 25):
            ref = dense_correlation(n, tau)
            for i in range(1, n + 1):
                for j in range(i, n + 1):
                    got = open_chain_correlation(n, i, j, tau)
                    assert got == pytest.approx(ref[i - 1, j - 1], rel=1e-10)

    def test_row_decay(self):
        """Moving one node further strictly decreases the correlation."""
        for tau in BOUNDS_TAU_GRID:
            for n in (10, 50):
                for i in (1, 3):
                    values = [open_chain_correlation(n, i, j, tau) for j in range(i, n + 1)]
                    assert all(a > b for a, b in zip(values, values[1:]))

    def test_matrix_matches_scalar(self):
        mat = open_chain_correlation_matrix(6, 0.31)
        for i in range(1, 7):
            for j in range(1, 7):
                assert mat[i - 1, j - 1] == open_chain_correlation(6, i, j, 0.31)

    def test_matrix_tau_zero(self):
        np.testing.assert_array_equal(open_chain_correlation_matrix(4, 0.0), np.eye(4))


class TestOpenChainLimit:
    def test_hand_value(self):
        """i=1, j=2, tau=0.4: 0.5 sqrt(0.75/0.9375) (hand evaluation)."""
        expected = 0.5 * math.sqrt(0.75 / 0.9375)
        assert open_chain_correlation_limit(1, 2, 0.4) == pytest.approx(expected, rel=1e-14)

    def test_diagonal(self):
        assert open_chain_correlation_limit(4, 4, 0.3) == 1.0

    def test_finite_size_converges(self):
        """The finite kernel reaches the limit at large n (1e-12 here)."""
        lim = open_chain_correlation_limit(1, 2, 0.4)
        assert open_chain_correlation(200, 1, 2, 0.4) == pytest.approx(lim, abs=1e-12)

    def test_strictly_below_envelope(self):
        for tau in BOUNDS_TAU_GRID:
            p = decay_params(tau)
            for i, j in [(1, 2), (1, 5), (2, 7), (4, 30)]:
                lim = open_chain_correlation_limit(i, j, tau)
                assert 0.0 < lim <= p.base ** abs(j - i)
                assert open_chain_limit_envelope_error(i, j, tau) < 0.0


class TestBoundChain:
    """Strict bound chain 0 < finite < limit < envelope on a dense grid.

    Value-space comparisons are non-strict (factors saturate at rounding
    level for small tau and large n); strictness is certified by the signs of
    the log-space relative errors, which never saturate on this grid.
    """

    @pytest.mark.parametrize("tau", BOUNDS_TAU_GRID)
    def test_open_chain(self, tau):
        for n in (2, 5, 10, 30, 50):
            for i in range(1, n + 1):
                for j in range(i + 1, n + 1):
                    value = open_chain_correlation(n, i, j, tau)
                    lim = open_chain_correlation_limit(i, j, tau)
                    assert 0.0 < value <= lim
                    assert open_chain_relative_error(n, i, j, tau) < 0.0
                    assert open_chain_limit_envelope_error(i, j, tau) < 0.0

    @pytest.mark.parametrize("tau", BOUNDS_TAU_GRID)
    def test_centered_chain(self, tau):
        p = decay_params(tau)
        for n in (1, 3, 10, 25):
            for i in range(-n, n + 1):
                for j in range(i + 1, n + 1):
                    value = centered_chain_correlation(n, i, j, tau)
                    envelope = p.base ** (j - i)
                    assert 0.0 < value <= envelope
                    assert centered_chain_relative_error(n, i, j, tau) < 0.0


class TestCenteredChain:
    def test_hand_value_from_three_node_oracle(self):
        """Half-width 1 pair (-1, 0) equals the 3-node adjacent correlation."""
        ref = dense_correlation(3, 0.4)[0, 1]
        assert centered_chain_correlation(1, -1, 0, 0.4) == pytest.approx(ref, rel=1e-12)

    def test_mirror_symmetry(self):
        """Negating and swapping indices reflects the chain onto itself."""
        for tau in (0.15, 0.45):
            for n, i, j in [(3, -2, 1), (5, 0, 4), (8, -3, -1), (10, 2, 7)]:
                a = centered_chain_correlation(n, i, j, tau)
                b = centered_chain_correlation(n, -j, -i, tau)
                assert a == pytest.approx(b, rel=1e-13)

    def test_index_shift_identity_bit_exact(self):
        """Centered value is the shifted open-chain value, bit for bit."""
        for tau in TAU_GRID:
            for n in (1, 2, 5, 13, 20):
                for i in range(-n, n + 1):
                    for j in range(-n, n + 1):
                        assert centered_chain_correlation(n, i, j, tau) == open_chain_correlation(
                            2 * n + 1, n + 1 + i, n + 1 + j, tau
                        )

    def test_diagonal(self):
        assert centered_chain_correlation(4, -2, -2, 0.3) == 1.0

    def test_limit_values(self):
        assert centered_chain_correlation_limit(0, 3, 0.4) == pytest.approx(0.125, abs=1e-14)
        assert centered_chain_correlation_limit(2, 2, 0.3) == 1.0
        assert centered_chain_correlation_limit(0, 1, 0.25) == pytest.approx(
            2.0 - math.sqrt(3.0), abs=1e-14
        )

    def test_matrix_matches_scalar(self):
        mat = centered_chain_correlation_matrix(2, 0.41)
        for i in range(-2, 3):
            for j in range(-2, 3):
                assert mat[i + 2, j + 2] == centered_chain_correlation(2, i, j, 0.41)

    def test_domain(self):
        with pytest.raises(DomainError):
            centered_chain_correlation(2, -3, 0, 0.4)
        with pytest.raises(DomainError):
            centered_chain_correlation(2, 0, 1, 0.5)


class TestRelativeErrorKernels:
    def test_matches_plain_quotient(self):
        """Log-space form agrees with exact/limit - 1 where both resolve."""
        for tau in (0.25, 0.45):
            for n, i, j in [(6, 1, 2), (9, 2, 5), (12, 1, 7)]:
                plain = open_chain_correlation(n, i, j, tau) / open_chain_correlation_limit(
                    i, j, tau
                ) - 1.0
                stable = open_chain_relative_error(n, i, j, tau)
                assert stable == pytest.approx(plain, rel=1e-8)

    def test_centered_matches_plain_quotient(self):
        for tau in (0.25, 0.45):
            for n, i, j in [(4, 0, 1), (7, -2, 2), (9, 1, 3)]:
                plain = centered_chain_correlation(n, i, j, tau) / centered_chain_correlation_limit(
                    i, j, tau
                ) - 1.0
                stable = centered_chain_relative_error(n, i, j, tau)
                assert stable == pytest.approx(plain, rel=1e-8)

    def test_sign_survives_saturation(self):
        """Strictly negative even where the plain quotient collapses to 0."""
        value = centered_chain_correlation(50, 0, 1, 0.05)
        limit = centered_chain_correlation_limit(0, 1, 0.05)
        assert value == limit
        assert centered_chain_relative_error(50, 0, 1, 0.05) < 0.0

    def test_diagonal_is_exact_zero(self):
        assert open_chain_relative_error(8, 3, 3, 0.3) == 0.0
        assert centered_chain_relative_error(8, -2, -2, 0.3) == 0.0


class TestErrorCoefficients:
    def test_centered_hand_value(self):
        """(0,1) at tau = 0.4: -sinh(2 ln 2) = -15/8 (hand evaluation)."""
        assert rel_error_coefficient_centered(0, 1, 0.4) == pytest.approx(-1.875, rel=1e-13)

    def test_centered_symmetric_pair(self):
        """Signed min/max convention: (-j, j) gives -2 sinh(2 j rate)."""
        p = decay_params(0.4)
        expected = -2.0 * math.sinh(4.0 * p.rate)
        assert rel_error_coefficient_centered(-2, 2, 0.4) == pytest.approx(expected, rel=1e-13)

    def test_centered_diagonal_zero(self):
        assert rel_error_coefficient_centered(3, 3, 0.4) == 0.0

    def test_centered_nonpositive(self):
        for i, j in [(0, 1), (1, 3), (-2, 2), (-5, -1)]:
            assert rel_error_coefficient_centered(i, j, 0.45) < 0.0

    def test_open_hand_value(self):
        """(1,2) at tau = 0.4: -(16 - 4)/2 = -6 (hand evaluation)."""
        assert rel_error_coefficient_open(1, 2, 0.4) == pytest.approx(-6.0, rel=1e-13)

    def test_open_symmetrised(self):
        assert rel_error_coefficient_open(2, 1, 0.4) == rel_error_coefficient_open(1, 2, 0.4)

    def test_open_diagonal_zero(self):
        assert rel_error_coefficient_open(4, 4, 0.4) == 0.0

    def test_overflow_guard(self):
        """2 max|index| rate beyond 700 raises instead of returning inf."""
        with pytest.raises(OverflowError):
            rel_error_coefficient_centered(0, 150, 0.05)
        with pytest.raises(OverflowError):
            rel_error_coefficient_open(1, 150, 0.05)

    def test_coefficient_bundles(self):
        from ggchain import asymptotic_coefficients_centered, asymptotic_coefficients_open

        p = decay_params(0.45)
        bundle = asymptotic_coefficients_centered(1, 3, 0.45)
        assert bundle.abs_order == 2.0 * p.rate
        assert bundle.rel_coeff == rel_error_coefficient_centered(1, 3, 0.45)
        assert bundle.rel_coeff < 0.0
        assert asymptotic_coefficients_open(2, 2, 0.45).rel_coeff == 0.0
