"""Explicit bounds for the Cosserat constant of rectangles, channels and cuboids.

All domains are elongated along ``x1``: the rectangle has aspect ratio
``1 : a`` and the channel is ``(0, pi/a) x section``. The inf-sup constant is
``beta = sqrt(sigma)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Protocol

import numpy as np

from .mellin2d import SpectrumInterval, essential_interval

SERIES_TOL = 1e-8


def _check_a(a: float) -> float:
    a = float(a)
    if not 0.0 < a <= 1.0:
        raise ValueError(f"aspect parameter a must lie in (0, 1], got {a!r}")
    return a


def horgan_payne_lower(a: float) -> float:
    """Lower bound ``sin^2(arctan(a)/2)`` for a rectangle."""
    a = _check_a(a)
    return math.sin(0.5 * math.atan(a)) ** 2


def rectangle_upper(a: float) -> float:
    """Quasimode upper bound ``1 - tanh(rho)/rho`` with ``rho = a*pi/2``."""
    a = _check_a(a)
    rho = 0.5 * a * math.pi
    if rho < 1e-3:
        r2 = rho * rho
        return r2 / 3 - 2 * r2 * r2 / 15 + 17 * r2 ** 3 / 315
    return 1.0 - math.tanh(rho) / rho


def chizhonkov_olshanskii_upper(a: float) -> float:
    """Earlier upper bound ``pi^2 a^2 / 12`` for a rectangle."""
    a = _check_a(a)
    return math.pi ** 2 * a * a / 12


class CrossSection(Protocol):
    def __call__(self, a: float) -> tuple[float, float]:
        """Return ``(<psi_a, 1>, measure)`` where ``(-Lap + a^2) psi_a = 1``, zero trace."""


@dataclass(frozen=True)
class IntervalSection:
    """Interval ``(0, length)``; closed form ``psi_a = (1 - cosh(a s)/cosh(a L/2))/a^2``."""

    length: float = math.pi

    def __call__(self, a: float) -> tuple[float, float]:
        L = self.length
        x = 0.5 * a * L
        if x < 1e-3:
            integral = L ** 3 / 12 - a * a * L ** 5 / 120 + 17 * a ** 4 * L ** 7 / 20160
        else:
            integral = (L - 2 * math.tanh(x) / a) / (a * a)
        return integral, L


def odd_lattice_sum(shift: float, scale1: float = 1.0, scale2: float = 1.0,
                    tol: float = SERIES_TOL, prefactor: float = 1.0) -> float:
    """``sum_{k1,k2 odd} 1/(k1^2 k2^2 ((scale1 k1)^2 + (scale2 k2)^2 + shift))``.

    Truncated at ``k1, k2 <= K`` with ``K`` chosen so that ``prefactor`` times
    the tail bound

        sum_{k1 > K or k2 > K} ... <= (pi^2/8) / (6 K^3) * (1/s1^2 + 1/s2^2)

    is below ``tol``.
    """
    bound_coef = prefactor * (math.pi ** 2 / 8) / 6 * (1 / scale1 ** 2 + 1 / scale2 ** 2)
    K = max(1, math.ceil((bound_coef / tol) ** (1 / 3)))
    K += 1 - K % 2
    k = np.arange(1, K + 1, 2, dtype=float)
    k1, k2 = np.meshgrid(k, k, indexing="ij")
    terms = 1.0 / (k1 ** 2 * k2 ** 2 * ((scale1 * k1) ** 2 + (scale2 * k2) ** 2 + shift))
    # sum small terms first
    return float(np.sum(np.sort(terms.ravel())))


def tail_bound(K: int, scale1: float = 1.0, scale2: float = 1.0) -> float:
    return (math.pi ** 2 / 8) / (6 * K ** 3) * (1 / scale1 ** 2 + 1 / scale2 ** 2)


@dataclass(frozen=True)
class RectangleSection:
    """Rectangle ``(0, l1) x (0, l2)``, solved by the double sine series."""

    l1: float = math.pi
    l2: float = math.pi
    tol: float = 1e-12

    def __call__(self, a: float) -> tuple[float, float]:
        l1, l2 = self.l1, self.l2
        pre = 64 * l1 * l2 / math.pi ** 6
        s = odd_lattice_sum(a * a / math.pi ** 2, 1 / l1, 1 / l2, self.tol, pre)
        # <psi,1> = 64 l1 l2/pi^4 * sum 1/(k1^2 k2^2 ((k1 pi/l1)^2 + (k2 pi/l2)^2 + a^2))
        return pre * s, l1 * l2


@dataclass(frozen=True)
class FemSection:
    """Box section of any dimension solved with tensor Lagrange elements."""

    extents: tuple[float, ...]
    cells: tuple[int, ...]
    degree: int = 4

    def __call__(self, a: float) -> tuple[float, float]:
        from .fem.assembly import reaction_solve
        from .fem.mesh import UniformCells, build_mesh

        mesh = build_mesh(self.extents, UniformCells(self.cells))
        return reaction_solve(mesh, self.degree, a * a), float(np.prod(self.extents))


def channel_upper(a: float, section: CrossSection | Callable) -> float:
    """Quasimode bound ``a^2 <psi_a, 1> / |section|`` for ``(0, pi/a) x section``."""
    a = _check_a(a)
    integral, measure = section(a)
    return a * a * integral / measure


def cuboid_upper(a: float, tol: float = SERIES_TOL) -> float:
    """Bound ``(8a/pi^2)^2 sum 1/(k1^2 k2^2 (k1^2+k2^2+a^2))`` for the cuboid ``1/a x 1 x 1``."""
    a = _check_a(a)
    pre = (8 * a / math.pi ** 2) ** 2
    return pre * odd_lattice_sum(a * a, tol=tol, prefactor=pre)


def dobrowolski_upper(a: float, tol: float = SERIES_TOL) -> float:
    """Bound ``(16 sqrt(3) a / pi^3)^2 sum 1/(k1^2 k2^2 (k1^2+k2^2))`` for the cuboid."""
    a = _check_a(a)
    pre = (16 * math.sqrt(3) * a / math.pi ** 3) ** 2
    return pre * odd_lattice_sum(0.0, tol=tol, prefactor=pre)


def edge_interval_3d(omega: float) -> SpectrumInterval:
    """Interval contained in the essential spectrum near an edge of opening ``omega``."""
    iv = essential_interval(omega)
    return SpectrumInterval(iv.lo, iv.hi, relation="contained-in")


@dataclass(frozen=True)
class BoundReport:
    a: float
    lower_hp: float
    upper_rect: float
    upper_co: float
    upper_cuboid: float
    upper_dobrowolski: float

    @classmethod
    def at(cls, a: float, tol: float = SERIES_TOL) -> "BoundReport":
        return cls(a, horgan_payne_lower(a), rectangle_upper(a),
                   chizhonkov_olshanskii_upper(a), cuboid_upper(a, tol),
                   dobrowolski_upper(a, tol))

    def beta(self, shape: str = "rect") -> tuple[float | None, float]:
        """``(beta_lower, beta_upper)``; no lower bound is available for cuboids."""
        if shape == "rect":
            return math.sqrt(self.lower_hp), math.sqrt(self.upper_rect)
        if shape == "cuboid":
            return None, math.sqrt(self.upper_cuboid)
        raise ValueError(f"unknown shape {shape!r}")


BOUND_COLUMNS = ("a", "lower_hp", "upper_rect", "upper_co", "upper_cuboid",
                 "upper_dobrowolski", "beta_lower", "beta_upper")


def bound_rows(a_grid, shape: str = "rect", tol: float = SERIES_TOL) -> list[dict]:
    rows = []
    for a in a_grid:
        rep = BoundReport.at(float(a), tol)
        lo, hi = rep.beta(shape)
        rows.append({"a": rep.a, "lower_hp": rep.lower_hp, "upper_rect": rep.upper_rect,
                     "upper_co": rep.upper_co, "upper_cuboid": rep.upper_cuboid,
                     "upper_dobrowolski": rep.upper_dobrowolski,
                     "beta_lower": "" if lo is None else lo, "beta_upper": hi})
    return rows
