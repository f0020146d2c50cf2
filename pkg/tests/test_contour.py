import cmath
import math

import numpy as np
import pytest

from cosserat.contour import (Box, ContourHitsZero, newton_iterate, newton_polish,
                              roots_in_box, winding_number)


def poly(roots):
    def f(z):
        out = 1.0 + 0j
        for r in roots:
            out *= z - r
        return out
    return f


class TestBox:
    def test_rejects_degenerate(self):
        with pytest.raises(ValueError):
            Box(1.0, 1.0, 0.0, 1.0)

    def test_split_cuts_longer_side(self):
        left, right = Box(0, 4, 0, 1).split()
        assert left.re_hi == 2.0 and right.re_lo == 2.0
        low, high = Box(0, 1, 0, 4).split(0.25)
        assert low.im_hi == 1.0 and high.im_lo == 1.0

    def test_contains_with_pad(self):
        b = Box(0, 1, 0, 1)
        assert b.contains(0.5 + 0.5j)
        assert not b.contains(1.001 + 0.5j)
        assert b.contains(1.001 + 0.5j, pad=0.01)


class TestWinding:
    def test_counts_polynomial_zeros(self):
        f = poly([0.2 + 0.3j, -0.5j, 3.0, 0.1 - 0.1j])
        assert winding_number(f, Box(-1, 1, -1, 1)) == 3

    def test_multiplicity(self):
        assert winding_number(poly([0.1j, 0.1j]), Box(-1, 1, -1, 1)) == 2

    def test_no_zero(self):
        assert winding_number(cmath.exp, Box(-5, 5, -5, 5)) == 0

    def test_zero_on_contour(self):
        with pytest.raises(ContourHitsZero):
            winding_number(poly([1.0]), Box(-1, 1, -1, 1))

    def test_rapid_phase_is_resolved(self):
        # sin(20 z) has 13 zeros in (-2, 2): k*pi/20 for |k| <= 12
        f = lambda z: cmath.sin(20 * z)
        assert winding_number(f, Box(-2, 2, -0.5, 0.5)) == 2 * int(2 * 20 / math.pi) + 1


class TestRoots:
    def test_newton_polish(self):
        z = newton_polish(lambda z: z * z - 2, 1.3)
        assert abs(z - math.sqrt(2)) < 1e-14

    def test_newton_reports_failure(self):
        # real iterates of z^2 + 1 never approach +-i
        z, ok = newton_iterate(lambda z: z * z + 1, 0.5, max_iter=40)
        assert not ok and z.imag == 0.0
        z, ok = newton_iterate(lambda z: z * z + 1, 0.5 + 0.5j)
        assert ok and abs(z - 1j) < 1e-14

    def test_roots_in_box(self):
        true = [0.2 + 0.3j, -0.5j, 0.1 - 0.1j, 0.7 + 0.7j]
        res = roots_in_box(poly(true + [3.0]), Box(-1, 1, -1, 1))
        assert res.status == "resolved" and res.count == 4
        got = sorted(res.roots, key=lambda z: (z.imag, z.real))
        want = sorted(true, key=lambda z: (z.imag, z.real))
        assert np.allclose(got, want, atol=1e-12)

    def test_close_pair_is_separated(self):
        res = roots_in_box(poly([0.5, 0.5 + 1e-4]), Box(0, 1, -0.5, 0.5))
        assert res.count == 2
        assert sorted(r.real for r in res.roots) == pytest.approx([0.5, 0.5001], abs=1e-10)

    def test_unresolvable_reports_status(self):
        res = roots_in_box(poly([1.0]), Box(-1, 1, -1, 1))
        assert res.status == "unresolved"
