import math

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from cosserat.contour import Box
from cosserat.mellin2d import (BOUNDARY_TAG, Corner, EssentialSpectrumError, eval_char,
                               essential_interval, essential_spectrum_polygon,
                               general_roots, imaginary_roots, lbb_upper_bound,
                               mellin_det_2d, min_positive_real_root, poisson_ratio,
                               positive_real_roots, scan_rows, sigma_from_poisson,
                               singular_function)
from helpers import cosserat_residual

HALF_PI = math.pi / 2


class TestInterval:
    def test_right_angle(self):
        iv = essential_interval(HALF_PI)
        assert iv.lo == pytest.approx(0.5 - 1 / math.pi, abs=1e-12)
        assert iv.hi == pytest.approx(0.5 + 1 / math.pi, abs=1e-12)

    def test_flat_and_full_openings_are_degenerate(self):
        assert essential_interval(math.pi).degenerate
        assert essential_interval(2 * math.pi).degenerate

    def test_reentrant_corner(self):
        iv = essential_interval(Corner.from_degrees(270))
        assert iv.lo == pytest.approx(0.5 - 1 / (3 * math.pi), abs=1e-14)

    @pytest.mark.parametrize("w", [0.0, -1.0, 7.0])
    def test_rejects_openings(self, w):
        with pytest.raises(ValueError):
            essential_interval(w)

    def test_square_bound(self):
        assert lbb_upper_bound([HALF_PI] * 4) == pytest.approx(math.sqrt(0.5 - 1 / math.pi), abs=1e-12)
        assert lbb_upper_bound([HALF_PI] * 4) == pytest.approx(0.4262512, abs=1e-7)

    def test_polygon_merges(self):
        spec = essential_spectrum_polygon([HALF_PI] * 4)
        assert len(spec.intervals) == 1 and 1.0 in spec
        spec = essential_spectrum_polygon([HALF_PI, 3 * HALF_PI, HALF_PI, HALF_PI, HALF_PI])
        assert len(spec.intervals) == 1
        assert spec.bottom == pytest.approx(0.5 - 1 / math.pi)

    def test_poisson_roundtrip(self):
        assert sigma_from_poisson(poisson_ratio(0.3)) == pytest.approx(0.3)


class TestCharacteristic:
    def test_value_at_zero(self):
        # (1 - 2 sigma) omega - sin omega at lam = 0
        assert eval_char(0.0, 0.0, HALF_PI, 1) == pytest.approx(HALF_PI - 1, abs=1e-15)

    @given(lam=st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False),
           sigma=st.floats(0, 1), omega=st.floats(0.1, 2 * math.pi))
    def test_determinant_factorises(self, lam, sigma, omega):
        prod = eval_char(lam, sigma, omega, 1) * eval_char(lam, sigma, omega, -1)
        det = mellin_det_2d(lam, sigma, omega)
        assert abs(det - prod) <= 1e-9 * max(1.0, abs(det))

    @given(lam=st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False),
           sigma=st.floats(0, 1), omega=st.floats(0.1, 2 * math.pi))
    def test_sigma_reflection(self, lam, sigma, omega):
        a = eval_char(lam, 1 - sigma, omega, -1)
        b = eval_char(lam, sigma, omega, 1)
        assert abs(a + b) <= 1e-9 * max(1.0, abs(b))


class TestImaginaryRoots:
    def test_known_root(self):
        # independent oracle: 0.4 sinh(pi t/2)/t = 1 solved by mpmath
        t_ref = float(mpmath.findroot(lambda t: 0.4 * mpmath.sinh(mpmath.pi * t / 2) / t - 1, 1.1))
        res = imaginary_roots(0.3, HALF_PI)
        ts = sorted(r.lam.imag for r in res)
        assert ts == pytest.approx([-t_ref, t_ref], abs=1e-12)
        assert abs(t_ref - 1.1118) < 1e-3

    def test_roots_solve_equation(self):
        for r in imaginary_roots(0.7, 2.0):
            assert abs(eval_char(r.lam, 0.7, 2.0, r.branch)) < 1e-12

    def test_half_is_boundary_of_theory(self):
        res = imaginary_roots(0.5, HALF_PI)
        assert len(res) == 0 and BOUNDARY_TAG in res.tags

    def test_outside_interval_is_empty(self):
        res = imaginary_roots(0.1, HALF_PI)
        assert res.status == "resolved" and len(res) == 0

    def test_truncation_flags_unresolved(self):
        # near sigma = 1/2 the root t grows without bound
        res = imaginary_roots(0.5 - 1e-9, HALF_PI, t_max=1.0)
        assert res.status == "unresolved"

    @settings(max_examples=200, deadline=None)
    @given(sigma=st.floats(0, 1), omega=st.floats(0.05, 2 * math.pi))
    def test_existence_iff_interior(self, sigma, omega):
        iv = essential_interval(omega)
        assume(sigma != 0.5 and min(abs(sigma - iv.lo), abs(sigma - iv.hi)) > 1e-6)
        assume(not iv.degenerate)
        res = imaginary_roots(sigma, omega, t_max=200.0)
        assert res.status == "resolved"
        assert (len(res) > 0) == iv.interior(sigma)


class TestRealRoots:
    @pytest.mark.parametrize("sigma,s", [(0.031375609, 0.93189), (0.109538571, 0.69036)])
    def test_regularity_exponents(self, sigma, s):
        assert min_positive_real_root(sigma, HALF_PI) == pytest.approx(s, abs=1e-4)

    def test_limit_sigma_zero(self):
        # at sigma = 0 the exponent of the right angle is 1
        assert min_positive_real_root(0.0, HALF_PI) == pytest.approx(1.0, abs=1e-12)

    def test_inside_interval_raises(self):
        with pytest.raises(EssentialSpectrumError):
            min_positive_real_root(0.3, HALF_PI)

    def test_all_real_roots_solve(self):
        for eps in (1, -1):
            for x in positive_real_roots(0.05, HALF_PI, eps):
                assert abs(eval_char(x, 0.05, HALF_PI, eps)) < 1e-12

    def test_no_smaller_complex_root(self):
        s = min_positive_real_root(0.031375609, HALF_PI)
        for eps in (1, -1):
            res = general_roots(0.031375609, HALF_PI, eps, Box(0.01, 3.0, -5.0, 5.0))
            assert res.status == "resolved"
            assert all(r.lam.real >= s - 1e-9 for r in res)


class TestSingularFunction:
    TRIPLES = [(0.3, HALF_PI), (0.55, 3 * HALF_PI), (0.42, math.pi / 3)]

    @pytest.mark.parametrize("sigma,omega", TRIPLES)
    def test_pde_and_trace(self, sigma, omega):
        root = next(r for r in imaginary_roots(sigma, omega) if r.lam.imag > 0)
        w = singular_function(root, sigma, omega)
        for th in (-omega / 2, omega / 2):
            vals = w(np.array([0.1, 0.5, 1.0, 3.0]), th)
            assert np.abs(vals).max() < 1e-10
        for r, th in [(1.0, 0.1 * omega), (0.6, -0.3 * omega), (1.4, 0.0)]:
            res = cosserat_residual(w.cartesian, r * math.cos(th), r * math.sin(th), sigma)
            assert res < 1e-5

    def test_real_root_function(self):
        sigma = 0.05
        lam = min_positive_real_root(sigma, HALF_PI)
        eps = next(e for e in (1, -1) if abs(eval_char(lam, sigma, HALF_PI, e)) < 1e-10)
        w = singular_function(lam, sigma, HALF_PI, eps)
        assert np.abs(w(1.0, HALF_PI / 2)).max() < 1e-12
        assert cosserat_residual(w.cartesian, 0.8, 0.1, sigma) < 1e-5

    def test_excluded_exponents(self):
        with pytest.raises(ValueError):
            singular_function(1.0, 0.3, HALF_PI, 1)
        with pytest.raises(ValueError):
            singular_function(2.0, 0.3, HALF_PI, 1)  # sin(2 * pi/2) = 0


class TestScanRows:
    def test_row_schema_and_kinds(self):
        rows = scan_rows([HALF_PI], [0.1, 0.3], kind="both")
        kinds = {(r["sigma"], r["kind"]) for r in rows}
        assert (0.3, "purely-imaginary") in kinds
        assert (0.1, "positive-real") in kinds

    def test_none_rows_outside(self):
        rows = scan_rows([HALF_PI], [0.1, 0.9])
        assert [r["kind"] for r in rows] == ["none", "none"]
