"""Special-function kernels against independent oracles."""

import math

import mpmath
import numpy as np
import pytest

from morsekit import laguerre, laguerre_derivative, laguerre_signed_log, log_gamma


class TestLogGamma:
    def test_gamma_of_one_is_zero(self):
        assert log_gamma(1.0) == 0.0

    def test_half_integer_closed_form(self):
        assert log_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-13)

    def test_integer_factorial_oracle(self):
        # exact integer factorials are an independent route to ln Gamma(n)
        for n in range(2, 60):
            expected = math.log(math.factorial(n - 1))
            assert log_gamma(float(n)) == pytest.approx(expected, rel=1e-13)

    def test_nineteen(self):
        assert log_gamma(19.0) == pytest.approx(math.log(math.factorial(18)), rel=1e-13)

    def test_rejects_non_positive(self):
        with pytest.raises(ValueError):
            log_gamma(0.0)
        with pytest.raises(ValueError):
            log_gamma(-3.2)

    def test_array_input(self):
        out = log_gamma(np.array([1.0, 2.0, 3.0]))
        assert np.allclose(out, [0.0, 0.0, math.log(2.0)], atol=1e-14)


def _laguerre_coefficient_oracle(n, alpha, x):
    """L_n^alpha(x) from the explicit coefficient sum, in 50-digit arithmetic."""
    with mpmath.workdps(50):
        total = mpmath.mpf(0)
        for i in range(n + 1):
            coeff = (-1) ** i * mpmath.binomial(n + alpha, n - i) / mpmath.factorial(i)
            total += coeff * mpmath.mpf(x) ** i
        return float(total)


class TestLaguerre:
    def test_degree_zero_is_one(self):
        for alpha in (-0.5, 0.0, 2.7):
            for x in (-1.0, 0.0, 3.5, 100.0):
                assert laguerre(0, alpha, x) == 1.0

    def test_degree_one_closed_form(self):
        assert laguerre(1, 0.5, 2.0) == pytest.approx(-0.5, abs=1e-15)

    def test_degree_two_closed_form(self):
        # (a+1)(a+2)/2 - (a+2) x + x^2/2 at a=1, x=1
        assert laguerre(2, 1.0, 1.0) == pytest.approx(0.5, abs=1e-14)

    def test_against_coefficient_expansion(self):
        xs = [0.0, 0.3, 1.0, 2.5, 7.0, 19.5]
        for alpha in (0.0, 0.5, 1.0, 2.3):
            for n in range(0, 11):
                for x in xs:
                    expected = _laguerre_coefficient_oracle(n, alpha, x)
                    got = laguerre(n, alpha, x)
                    assert got == pytest.approx(expected, rel=1e-10, abs=1e-12)

    def test_rejects_bad_domain(self):
        with pytest.raises(ValueError):
            laguerre(-1, 0.0, 1.0)
        with pytest.raises(ValueError):
            laguerre(2, -1.0, 1.0)

    def test_vectorized_matches_scalar(self):
        xs = np.linspace(0.0, 12.0, 25)
        vec = laguerre(6, 1.7, xs)
        for x, v in zip(xs, vec):
            assert v == laguerre(6, 1.7, float(x))


class TestLaguerreDerivative:
    def test_degree_zero_derivative_vanishes(self):
        assert laguerre_derivative(0, 3.1, 2.0) == 0.0

    def test_degree_one_slope(self):
        for alpha in (0.0, 0.5, 4.2):
            for x in (0.0, 1.0, 9.0):
                assert laguerre_derivative(1, alpha, x) == -1.0

    def test_degree_two_identity(self):
        assert laguerre_derivative(2, 1.0, 1.0) == pytest.approx(-laguerre(1, 2.0, 1.0), abs=1e-14)

    def test_finite_difference(self):
        h = 1e-6
        for n in (2, 5, 9):
            for x in (0.7, 3.3, 11.0):
                numeric = (laguerre(n, 1.5, x + h) - laguerre(n, 1.5, x - h)) / (2 * h)
                assert laguerre_derivative(n, 1.5, x) == pytest.approx(numeric, rel=1e-7, abs=1e-6)


class TestSignedLog:
    def test_matches_plain_recurrence_in_range(self):
        xs = np.linspace(0.0, 40.0, 37)
        for n in (0, 1, 4, 12):
            sign, log_abs = laguerre_signed_log(n, 0.8, xs)
            plain = laguerre(n, 0.8, xs)
            with np.errstate(divide="ignore"):
                assert np.allclose(sign * np.exp(log_abs), plain, rtol=1e-12, atol=1e-300)

    def test_survives_overflowing_magnitudes(self):
        # L_200 at large argument overflows doubles by hundreds of orders
        sign, log_abs = laguerre_signed_log(200, 0.9, 4000.0)
        assert np.isfinite(log_abs)
        assert log_abs > 700.0
        assert sign in (-1.0, 1.0)

    def test_agrees_with_high_precision_at_large_degree(self):
        n, alpha = 150, 1.3
        for x in (10.0, 500.0, 2500.0):
            sign, log_abs = laguerre_signed_log(n, alpha, x)
            with mpmath.workdps(60):
                exact = mpmath.laguerre(n, alpha, x)
                expected_log = float(mpmath.log(abs(exact)))
                expected_sign = float(mpmath.sign(exact))
            assert sign == expected_sign
            assert log_abs == pytest.approx(expected_log, rel=1e-11)

    def test_exact_zero_encodes_minus_inf(self):
        # L_1^0(1) = 0 exactly
        sign, log_abs = laguerre_signed_log(1, 0.0, 1.0)
        assert log_abs == -math.inf
