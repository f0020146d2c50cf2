"""Essential spectrum of a polygon and the corner singular exponents.

For a right angle the essential interval is [1/2 - 1/pi, 1/2 + 1/pi]; every
sigma inside it produces a pair of purely imaginary Mellin exponents, every
sigma below it a positive real exponent that governs corner regularity.
"""

import math

import numpy as np

from cosserat.mellin2d import (essential_interval, essential_spectrum_polygon, imaginary_roots,
                               lbb_upper_bound, min_positive_real_root)

square = [math.pi / 2] * 4
iv = essential_interval(math.pi / 2)
print(f"right angle: [{iv.lo:.10f}, {iv.hi:.10f}]")
print(f"square: inf-sup constant at most {lbb_upper_bound(square):.7f}")

l_shape = [math.pi / 2] * 5 + [3 * math.pi / 2]
spec = essential_spectrum_polygon(l_shape)
print("L-shape intervals:", [(round(i.lo, 6), round(i.hi, 6)) for i in spec.intervals])

print("\n sigma   exponent")
for sigma in np.linspace(0.05, 0.45, 9):
    roots = imaginary_roots(sigma, math.pi / 2)
    if roots.found:
        t = max(r.lam.imag for r in roots)
        print(f"{sigma:6.3f}   +-{t:.6f} i")
    else:
        print(f"{sigma:6.3f}   {min_positive_real_root(sigma, math.pi / 2):.6f}")
