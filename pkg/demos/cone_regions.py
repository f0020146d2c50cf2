"""Regions of the (opening, sigma) plane with critical-line exponents for cones.

Prints the region for the axisymmetric (m = 0) and first (m = 1) Fourier
modes on a coarse grid, one row per opening, '#' marking membership.
"""

import numpy as np

from cosserat.cone3d import region_membership_grid

omega = np.linspace(10, 170, 17)
sigma = np.linspace(0, 1, 41)
for m in (0, 1):
    g = region_membership_grid(m, omega, sigma)
    print(f"m = {m}   sigma from 0 (left) to 1 (right)")
    for wd, row in zip(omega, g.in_region):
        print(f"{wd:6.1f}  " + "".join("#" if x else "." for x in row))
    print()
