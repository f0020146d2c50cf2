"""Finite-difference operators shared by the singular-function tests."""

import numpy as np

# fourth-order central stencils
D1 = np.array([1, -8, 0, 8, -1]) / 12.0
D2 = np.array([-1, 16, -30, 16, -1]) / 12.0
OFFS = np.arange(-2, 3)


def cosserat_residual(w, x, y, sigma, h=1e-3):
    """Relative residual of ``sigma Lap w - grad div w`` at ``(x, y)``.

    ``w(x, y)`` returns the two components. Mixed derivatives use the
    tensor product of the first-derivative stencil.
    """
    def comp(dx, dy):
        return np.asarray(w(x + dx, y + dy))

    wxx = sum(c * comp(o * h, 0) for c, o in zip(D2, OFFS)) / h**2
    wyy = sum(c * comp(0, o * h) for c, o in zip(D2, OFFS)) / h**2
    wxy = sum(ci * cj * comp(oi * h, oj * h)
              for ci, oi in zip(D1, OFFS) for cj, oj in zip(D1, OFFS)) / h**2
    lap = wxx + wyy
    grad_div = np.array([wxx[0] + wxy[1], wxy[0] + wyy[1]])
    res = sigma * lap - grad_div
    scale = abs(sigma) * np.linalg.norm(lap) + np.linalg.norm(grad_div)
    return np.linalg.norm(res) / scale
