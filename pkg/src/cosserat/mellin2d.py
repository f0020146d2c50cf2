"""Corner characteristic equation of the plane Cosserat operator.

A plane sector of opening ``omega`` contributes singular exponents ``lam``
solving

    (1 - 2*sigma) * sin(lam*omega) / lam = eps * sin(omega),   eps = +1 or -1.

Roots on the imaginary axis make ``sigma`` a point of the essential spectrum;
the smallest positive real root is the corner regularity exponent. The
product of the two branches is the Mellin determinant of the Lame system
with Poisson ratio ``nu = (sigma + 1) / 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import brentq

from .contour import Box, roots_in_box

TWO_PI = 2 * math.pi
KIND_TOL = 1e-12
BOUNDARY_TAG = "boundary-of-theory"


class EssentialSpectrumError(ValueError):
    """The requested quantity is undefined for sigma in the essential spectrum."""


@dataclass(frozen=True)
class Corner:
    """Plane sector of opening ``omega`` (radians), ``0 < omega <= 2*pi``."""

    omega: float

    def __post_init__(self):
        check_opening(self.omega)

    @classmethod
    def from_degrees(cls, deg: float) -> "Corner":
        return cls(math.radians(deg))


def check_opening(omega: float) -> float:
    omega = float(omega)
    if not (0.0 < omega <= TWO_PI * (1 + 1e-14)):
        raise ValueError(f"corner opening must lie in (0, 2*pi], got {omega!r}")
    return min(omega, TWO_PI)


def _opening(corner) -> float:
    return corner.omega if isinstance(corner, Corner) else check_opening(corner)


def poisson_ratio(sigma: float) -> float:
    """Poisson ratio of the Lame operator equal to ``sigma*Delta - grad div``."""
    return 0.5 * (sigma + 1.0)


def sigma_from_poisson(nu: float) -> float:
    return 2.0 * nu - 1.0


def theory_tags(sigma: float) -> tuple[str, ...]:
    """Fredholm statements exclude sigma in {0, 1/2, 1}."""
    return (BOUNDARY_TAG,) if sigma in (0.0, 0.5, 1.0) else ()


@dataclass(frozen=True)
class ComplexRoot:
    lam: complex
    branch: int
    kind: str

    @classmethod
    def classify(cls, lam: complex, branch: int, tol: float = KIND_TOL) -> "ComplexRoot":
        lam = complex(lam)
        scale = max(1.0, abs(lam))
        if abs(lam.real) <= tol * scale:
            kind = "purely-imaginary"
            lam = complex(0.0, lam.imag)
        elif abs(lam.imag) <= tol * scale and lam.real > 0:
            kind = "positive-real"
            lam = complex(lam.real, 0.0)
        else:
            kind = "general"
        return cls(lam, int(branch), kind)


@dataclass(frozen=True)
class SpectrumInterval:
    """Closed interval ``[lo, hi]`` of the Cosserat essential spectrum.

    ``relation`` is ``"equals"`` when the interval is the exact corner
    contribution and ``"contained-in"`` when it is only known to be a subset.
    """

    lo: float
    hi: float
    relation: str = "equals"

    def __post_init__(self):
        if not (0.0 <= self.lo <= self.hi <= 1.0):
            raise ValueError(f"invalid spectrum interval [{self.lo}, {self.hi}]")

    @property
    def degenerate(self) -> bool:
        return self.hi - self.lo <= 1e-15

    def __contains__(self, sigma: float) -> bool:
        return self.lo <= sigma <= self.hi

    def interior(self, sigma: float) -> bool:
        return self.lo < sigma < self.hi


@dataclass(frozen=True)
class EssentialSpectrum:
    """Union of disjoint closed intervals plus isolated points."""

    intervals: tuple[SpectrumInterval, ...]
    points: tuple[float, ...] = (1.0,)

    def __contains__(self, sigma: float) -> bool:
        return any(sigma in iv for iv in self.intervals) or sigma in self.points

    @property
    def bottom(self) -> float:
        return min([iv.lo for iv in self.intervals] + list(self.points))


@dataclass
class RootSearch:
    """Result of a root search: the roots, a status and theory tags."""

    roots: list[ComplexRoot] = field(default_factory=list)
    status: str = "resolved"
    tags: tuple[str, ...] = ()

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    @property
    def found(self) -> bool:
        return self.status == "resolved" and len(self.roots) > 0


def _sin_over(z):
    # sin(z)/z with the removable singularity filled; np.sinc returns nan
    # for subnormal complex arguments
    z = np.asarray(z, dtype=complex)
    small = np.abs(z) < 1e-6
    safe = np.where(small, 1.0, z)
    return np.where(small, 1.0 - z * z / 6.0, np.sin(safe) / safe)


def eval_char(lam, sigma: float, omega, branch: int):
    """Evaluate ``(1-2 sigma) sin(lam omega)/lam - eps sin(omega)``.

    Works on scalars and arrays; the removable singularity at ``lam = 0`` is
    replaced by its limit ``(1-2 sigma) omega - eps sin(omega)``.
    """
    omega = _opening(omega)
    lam = np.asarray(lam, dtype=complex)
    val = (1 - 2 * sigma) * omega * _sin_over(lam * omega) - branch * math.sin(omega)
    return val[()] if val.ndim == 0 else val


def mellin_det_2d(lam, sigma: float, omega):
    """Mellin determinant ``lam**-2 ((3-4nu)^2 sin^2(lam omega) - lam^2 sin^2 omega)``."""
    omega = _opening(omega)
    nu = poisson_ratio(sigma)
    lam = np.asarray(lam, dtype=complex)
    s = omega * _sin_over(lam * omega)
    val = (3 - 4 * nu) ** 2 * s * s - math.sin(omega) ** 2
    return val[()] if val.ndim == 0 else val


def essential_interval(corner) -> SpectrumInterval:
    """Essential-spectrum interval ``1/2 -+ |sin w|/(2w)`` of one corner."""
    omega = _opening(corner)
    half = abs(math.sin(omega)) / (2 * omega)
    return SpectrumInterval(0.5 - half, 0.5 + half)


def _merge(intervals: Iterable[SpectrumInterval]) -> list[SpectrumInterval]:
    merged: list[SpectrumInterval] = []
    for iv in sorted(intervals, key=lambda i: (i.lo, i.hi)):
        if merged and iv.lo <= merged[-1].hi:
            last = merged.pop()
            iv = SpectrumInterval(last.lo, max(last.hi, iv.hi), last.relation)
        merged.append(iv)
    return merged


def essential_spectrum_polygon(corners: Sequence) -> EssentialSpectrum:
    """Essential spectrum of a polygon: merged corner intervals and ``{1}``."""
    if len(corners) == 0:
        raise ValueError("a polygon needs at least one corner")
    return EssentialSpectrum(tuple(_merge(essential_interval(c) for c in corners)), (1.0,))


def lbb_upper_bound(corners: Sequence) -> float:
    """Upper bound ``min_c sqrt(1/2 - |sin w_c|/(2 w_c))`` for the inf-sup constant."""
    if len(corners) == 0:
        raise ValueError("a polygon needs at least one corner")
    return math.sqrt(min(essential_interval(c).lo for c in corners))


def _sinhc_scaled(t: float, omega: float) -> float:
    # sinh(t*omega)/t, continuous at t = 0
    x = t * omega
    if abs(x) < 1e-8:
        return omega * (1 + x * x / 6)
    return math.sinh(x) / t


def imaginary_roots(sigma: float, corner, t_max: float | None = None) -> RootSearch:
    """Roots ``lam = +-i t`` of the characteristic equation.

    On ``lam = i t`` the equation reads ``(1-2 sigma) sinh(t w)/t = eps sin w``.
    With ``eps`` matched to the sign of ``(1-2 sigma) sin w`` the left side
    minus the right is strictly increasing in ``t > 0``, so there is at most
    one root ``t > 0`` and it exists iff sigma is interior to the corner
    interval. It is bracketed on ``[0, t_max]`` and refined by Brent's method.
    Without ``t_max`` the bracket extends to where ``sinh(t w)`` overflows, so
    only sigma within about ``1e-300`` of 1/2 is left unresolved.
    """
    omega = _opening(corner)
    if not 0.0 <= sigma <= 1.0:
        raise ValueError(f"sigma must lie in [0, 1], got {sigma!r}")
    if t_max is not None and t_max <= 0:
        raise ValueError("t_max must be positive")
    tags = theory_tags(sigma)
    c = 1 - 2 * sigma
    sw = math.sin(omega)
    if abs(sw) < 1e-15:
        sw = 0.0
    if c == 0.0:
        # char == -eps sin w for every lam
        status = "degenerate" if sw == 0.0 else "resolved"
        return RootSearch([], status, tags)
    eps = 1 if c * sw > 0 else -1
    a, b = abs(c), abs(sw)

    def h(t):
        return a * _sinhc_scaled(t, omega) - b

    h0 = a * omega - b
    if abs(h0) <= 1e-14 * max(1.0, b):
        return RootSearch([ComplexRoot(0j, eps, "purely-imaginary")], "resolved", tags)
    if h0 > 0:
        return RootSearch([], "resolved", tags)
    t_hi = 700.0 / omega   # sinh overflows beyond
    if t_max is not None:
        t_hi = min(t_hi, t_max)
    if h(t_hi) <= 0:
        return RootSearch([], "unresolved", tags)
    t = brentq(h, 0.0, t_hi, xtol=1e-15, rtol=1e-15, maxiter=500)
    roots = [ComplexRoot(complex(0.0, t), eps, "purely-imaginary"),
             ComplexRoot(complex(0.0, -t), eps, "purely-imaginary")]
    return RootSearch(roots, "resolved", tags)


def positive_real_roots(sigma: float, corner, branch: int, lam_max: float = 10.0,
                        n_scan: int = 4000) -> list[float]:
    """All real roots in ``(0, lam_max]`` of one branch, by sign-change scan."""
    omega = _opening(corner)
    grid = np.linspace(0.0, lam_max, n_scan + 1)[1:]

    def f(x):
        return float(np.real(eval_char(x, sigma, omega, branch)))

    vals = np.real(eval_char(grid, sigma, omega, branch))
    roots = [float(x) for x, v in zip(grid, vals) if v == 0.0]
    for i in np.nonzero(vals[:-1] * vals[1:] < 0)[0]:
        roots.append(brentq(f, grid[i], grid[i + 1], xtol=1e-15, rtol=1e-15))
    return sorted(roots)


def min_positive_real_root(sigma: float, corner, lam_max: float = 10.0) -> float:
    """Regularity exponent: the smallest positive real root over both branches.

    Raises
    ------
    EssentialSpectrumError
        If sigma lies in the corner's essential interval.
    """
    omega = _opening(corner)
    iv = essential_interval(omega)
    if sigma in iv:
        raise EssentialSpectrumError(
            f"regularity undefined, sigma={sigma} in essential spectrum [{iv.lo}, {iv.hi}]")
    cands = []
    for eps in (1, -1):
        cands.extend(positive_real_roots(sigma, omega, eps, lam_max))
    if not cands:
        raise EssentialSpectrumError(f"no positive real root below lam_max={lam_max}")
    return min(cands)


def general_roots(sigma: float, corner, branch: int, box: Box) -> RootSearch:
    """Complex roots of one branch inside ``box`` by the argument principle."""
    omega = _opening(corner)

    def f(z):
        return complex(eval_char(z, sigma, omega, branch))

    res = roots_in_box(f, box)
    return RootSearch([ComplexRoot.classify(z, branch) for z in res.roots], res.status,
                      theory_tags(sigma))


@dataclass(frozen=True)
class SingularFunction:
    """Homogeneous solution ``r^lam W(theta)`` of ``sigma Lap w = grad div w``.

    Built in the basis ``z^lam``, ``zbar^lam``, ``z^(lam-1) zbar``,
    ``zbar^(lam-1) z`` times the vectors ``(1, i)`` and ``(1, -i)``, with
    ``z = x1 + i x2``; its trace vanishes on ``theta = +-omega/2``.
    """

    lam: complex
    sigma: float
    omega: float
    eps: int
    a: complex
    b: complex

    def __call__(self, r, theta):
        """Return the two components ``(w1, w2)`` at polar points ``(r, theta)``."""
        r = np.asarray(r, dtype=float)
        th = np.asarray(theta, dtype=float)
        lam, eps, a = self.lam, self.eps, self.a
        c = (2 * self.sigma - 1) / lam
        rl = r.astype(complex) ** lam
        z_l = rl * np.exp(1j * lam * th)             # z^lam
        zb_l = rl * np.exp(-1j * lam * th)           # zbar^lam
        z3 = rl * np.exp(1j * (lam - 2) * th)        # z^(lam-1) zbar
        z4 = rl * np.exp(-1j * (lam - 2) * th)       # zbar^(lam-1) z
        # scalar multipliers of (1, i) and of (1, -i)
        plus = z3 + eps * c * zb_l - a * z_l
        minus = c * z_l + eps * z4 - a * eps * zb_l
        return np.stack([plus + minus, 1j * (plus - minus)])

    def cartesian(self, x1, x2):
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        return self(np.hypot(x1, x2), np.arctan2(x2, x1))


def singular_function(root, sigma: float, corner, eps: int | None = None) -> SingularFunction:
    """Singular function attached to a root of the characteristic equation.

    ``root`` is a :class:`ComplexRoot` (its branch supplies ``eps``) or a
    complex number together with ``eps``.
    """
    omega = _opening(corner)
    if isinstance(root, ComplexRoot):
        lam, eps = root.lam, root.branch if eps is None else eps
    else:
        lam = complex(root)
    if eps not in (1, -1):
        raise ValueError("branch eps must be +1 or -1")
    if abs(lam) < 1e-12 or abs(lam - 1) < 1e-12:
        raise ValueError("lam in {0, 1} is excluded from the singular-function basis")
    s = np.sin(lam * omega)
    if abs(s) < 1e-12:
        raise ValueError(f"non-generic lam={lam}: sin(lam*omega) vanishes")
    a = np.sin((lam - 1) * omega) / s
    b = math.sin(omega) / s
    return SingularFunction(complex(lam), float(sigma), omega, int(eps), complex(a), complex(b))


def scan_rows(omegas: Sequence[float], sigmas: Sequence[float], t_max: float | None = None,
              kind: str = "imaginary") -> list[dict]:
    """Rows of the 2D scan table (one or more per grid point).

    ``kind`` selects purely imaginary roots (``"imaginary"``), the smallest
    positive real root (``"real"``) or both. Grid points without any root of
    the selected kind give one row with ``kind = "none"``.
    """
    if kind not in ("imaginary", "real", "both"):
        raise ValueError(f"unknown scan kind {kind!r}")
    rows = []
    for omega in omegas:
        for sigma in sigmas:
            base = {"omega_rad": float(omega), "sigma": float(sigma)}
            found = []
            status = "resolved"
            if kind in ("imaginary", "both"):
                res = imaginary_roots(sigma, omega, t_max)
                status = res.status
                for r in res.roots:
                    if r.lam.imag >= 0:
                        found.append(dict(base, branch=r.branch, kind=r.kind,
                                          root_re=r.lam.real, root_im=r.lam.imag,
                                          status=res.status))
            if kind in ("real", "both") and sigma not in essential_interval(omega):
                best = None
                for eps in (1, -1):
                    rts = positive_real_roots(sigma, omega, eps)
                    if rts and (best is None or rts[0] < best[0]):
                        best = (rts[0], eps)
                if best is not None:
                    found.append(dict(base, branch=best[1], kind="positive-real",
                                      root_re=best[0], root_im=0.0, status="resolved"))
            if not found:
                found.append(dict(base, branch="", kind="none", root_re="", root_im="",
                                  status=status))
            rows.extend(found)
    return rows
