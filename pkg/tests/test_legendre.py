import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cosserat.legendre import ferrers_p, hyp2f1_series, legendre_p


def mp_legendre(nu, m, x):
    """Ferrers P^{-m}_nu(x) from mpmath (type 2 = cut on (-1, 1))."""
    return complex(mpmath.legenp(mpmath.mpc(nu.real, nu.imag), -m, x, type=2))


class TestClosedForms:
    def test_p00_is_one(self):
        assert legendre_p(0.0, 0, 0.3) == pytest.approx(1.0, abs=1e-15)

    @pytest.mark.parametrize("x", [-0.9, -0.2, 0.0, 0.5, 0.99])
    def test_low_degrees(self, x):
        assert legendre_p(1.0, 0, x) == pytest.approx(x, abs=1e-14)
        assert legendre_p(2.0, 0, x) == pytest.approx(0.5 * (3 * x * x - 1), abs=1e-14)

    def test_p_minus1_1(self):
        assert legendre_p(1.0, 1, 0.5) == pytest.approx(math.sqrt(1 - 0.25) / 2, abs=1e-15)

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_p_minus_m_m(self, m):
        x = 0.3
        want = (1 - x * x) ** (m / 2) / (2 ** m * math.factorial(m))
        assert legendre_p(float(m), m, x) == pytest.approx(want, rel=1e-14)

    def test_positive_order_matches_textbook(self):
        # P^1_1(x) = -sqrt(1-x^2) with the Condon-Shortley phase
        x = 0.4
        assert ferrers_p(1.0, 1, x) == pytest.approx(-math.sqrt(1 - x * x), abs=1e-14)

    def test_domain(self):
        with pytest.raises(ValueError):
            legendre_p(0.5, 0, 1.0)
        with pytest.raises(ValueError):
            legendre_p(0.5, -1, 0.2)


class TestAgainstMpmath:
    @pytest.mark.parametrize("nu", [-0.5 + 0.7j, -0.5 + 5j, 1.3 - 0.2j, 2.5 + 3j])
    @pytest.mark.parametrize("m", [0, 1, 2])
    @pytest.mark.parametrize("x", [0.95, 0.1, -0.6, -0.99])
    def test_complex_degree(self, nu, m, x):
        want = mp_legendre(nu, m, x)
        assert abs(legendre_p(nu, m, x) - want) <= 1e-12 * max(1.0, abs(want))

    def test_vectorised_equals_scalar(self):
        nus = -0.5 + 1j * np.linspace(0.0, 8.0, 17)
        vec = legendre_p(nus, 1, -0.3)
        assert np.allclose(vec, [legendre_p(v, 1, -0.3) for v in nus], rtol=1e-15, atol=0)

    @settings(max_examples=25, deadline=None)
    @given(t=st.floats(0.0, 10.0), x=st.floats(-0.95, 0.95), m=st.integers(0, 3))
    def test_critical_line_property(self, t, x, m):
        nu = complex(-0.5, t)
        want = mp_legendre(nu, m, x)
        assert abs(legendre_p(nu, m, x) - want) <= 1e-11 * max(1.0, abs(want))

    def test_conjugate_symmetry(self):
        nu = -0.5 + 0.7j
        assert legendre_p(nu.conjugate(), 1, 0.2) == pytest.approx(
            np.conj(legendre_p(nu, 1, 0.2)), abs=1e-15)


class TestHypergeometric:
    def test_terminating(self):
        # 2F1(-2, b; c; z) is a quadratic
        b, c, z = 1.5, 2.0, 0.3
        want = 1 - 2 * b * z / c + b * (b + 1) * z * z / (c * (c + 1))
        assert hyp2f1_series(-2.0, b, c, z) == pytest.approx(want, abs=1e-15)

    def test_against_mpmath(self):
        a, b, c, z = 0.3 + 1j, -0.7 + 2j, 1.0, 0.9
        assert hyp2f1_series(a, b, c, z) == pytest.approx(
            complex(mpmath.hyp2f1(a, b, c, z)), rel=1e-13)
