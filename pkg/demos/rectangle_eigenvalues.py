"""Discrete Cosserat eigenvalues of the 5 x 1 rectangle under refinement.

Runs Q2-Q1 on uniform levels 1..5, fits the convergence rate from the last
three levels and compares it with twice the corner exponent s(sigma).
Level 5 takes a few seconds.
"""

import math

from cosserat.bounds import horgan_payne_lower, rectangle_upper
from cosserat.fem import FeSpacePair, box_extents
from cosserat.fem.study import convergence_study, corner_rate

a = 0.2
res = convergence_study(box_extents(a), FeSpacePair(2, 1), range(1, 6), k=2)
for n, row in zip(res.levels, res.sigma):
    print(f"level {n}: " + "  ".join(f"{s:.8f}" for s in row))
for j in range(2):
    print(f"sigma_{j + 1}: rate {res.rate[j]:.3f} (corner prediction "
          f"{corner_rate(res.extrapolated[j], math.pi / 2):.3f}), "
          f"extrapolated {res.extrapolated[j]:.8f}, flags {res.flags[j]}")
print(f"bounds: {horgan_payne_lower(a):.7f} <= sigma_1 <= {rectangle_upper(a):.7f}")
