"""Mellin determinant of the Cosserat operator at an axisymmetric cone.

The cone ``{theta < omega}`` is treated with the Boussinesq representation and
separation of the azimuthal frequency ``m``. Traces of the three generating
solutions on ``theta = omega`` give a 3x3 matrix in the Ferrers functions
``P^{-m}_lam`` and ``P^{-m}_{lam+1}`` evaluated at ``cos(omega)``; its
determinant vanishes at the singular exponents ``lam``. The point ``sigma``
belongs to the essential spectrum when a zero sits on ``Re lam = -1/2``.

Only the third column depends on ``sigma`` and does so affinely, so on the
critical line the determinant reads ``D0(t) + sigma*D1(t)`` and
``sigma*(t) = -D0/D1`` is real; the region scan follows that curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .contour import Box, roots_in_box, winding_number
from .legendre import legendre_p
from .mellin2d import BOUNDARY_TAG, ComplexRoot, RootSearch, theory_tags

CRITICAL_RE = -0.5
TAU_CAP = 600.0


@dataclass(frozen=True)
class Cone:
    """Axisymmetric cone ``{theta < omega}``, ``0 < omega < pi``."""

    omega: float

    def __post_init__(self):
        if not 0.0 < self.omega < math.pi:
            raise ValueError(f"cone opening must lie in (0, pi), got {self.omega!r}")

    @classmethod
    def from_degrees(cls, deg: float) -> "Cone":
        return cls(math.radians(deg))


def _omega(cone) -> float:
    return cone.omega if isinstance(cone, Cone) else Cone(float(cone)).omega


def _legendre_pair(lam, m: int, w: float, rescale: bool = False):
    # Every entry is linear in (p1, p0); a common rescaling multiplies the
    # determinant by a nonzero factor and leaves its zeros alone.
    x = math.cos(w)
    p1, p0 = legendre_p(lam + 1, m, x), legendre_p(lam, m, x)
    if rescale:
        c = np.maximum(np.abs(p1), np.abs(p0))
        c = np.where(c > 0, c, 1.0)
        p1, p0 = p1 / c, p0 / c
    return p1, p0


def _assemble(sigma, lam, m, w, p1, p0, corrected=True):
    x, s2 = math.cos(w), math.sin(w) ** 2
    m32 = (lam + 1 - (m if corrected else 0)) * x * p0 - (lam + 1) * p1
    out = np.empty(np.shape(lam) + (3, 3), dtype=complex)
    out[..., 0, 0] = (lam + 1) * p1
    out[..., 0, 1] = m * p1
    out[..., 0, 2] = (lam + 2 * sigma - 1) * x * p0
    out[..., 1, 0] = (lam + 1) * x * p1 - (lam + 1 - m) * p0
    out[..., 1, 1] = m * x * p1
    out[..., 1, 2] = (lam + 1 + m) * x * p1 + (1 - 2 * sigma) * s2 * p0 - (lam + 1) * x * x * p0
    out[..., 2, 0] = -m * p1
    out[..., 2, 1] = m32
    out[..., 2, 2] = -m * x * p0
    return out


def mellin_matrix_3d(sigma: float, lam, m: int, cone, corrected: bool = True) -> np.ndarray:
    """Trace matrix of the three Boussinesq solutions, shape ``lam.shape + (3, 3)``.

    ``corrected=False`` drops the ``-m`` in ``(lam+1-m)`` of the (3, 2) entry,
    reproducing a misprint that circulates in the literature; it exists for
    regression tests only. The frequencies ``m`` and ``-m`` describe the same
    angular problem, so only ``|m|`` enters.
    """
    w = _omega(cone)
    m = abs(int(m))
    lam = np.asarray(lam, dtype=complex)
    p1, p0 = _legendre_pair(lam, m, w)
    return _assemble(sigma, lam, m, w, p1, p0, corrected)


def mellin_det_3d(sigma: float, lam, m: int, cone, corrected: bool = True):
    """Determinant of :func:`mellin_matrix_3d`."""
    d = np.linalg.det(mellin_matrix_3d(sigma, lam, m, cone, corrected))
    return d[()] if np.ndim(d) == 0 else d


def _hadamard(mat):
    d = np.linalg.det(mat)
    return d / np.prod(np.linalg.norm(mat, axis=-1), axis=-1)


def normalized_det_3d(sigma: float, lam, m: int, cone):
    """Determinant divided by the product of the row norms.

    The raw determinant grows like ``exp(3 t omega)`` along the critical line,
    so absolute residuals are meaningless there; this ratio lies in
    ``[0, 1]`` by Hadamard's inequality and is zero exactly at the roots.
    """
    w = _omega(cone)
    m = abs(int(m))
    lam = np.asarray(lam, dtype=complex)
    d = _hadamard(_assemble(sigma, lam, m, w, *_legendre_pair(lam, m, w, rescale=True)))
    return d[()] if np.ndim(d) == 0 else d


def det_affine_parts(lam, m: int, cone, rescale: bool = False) -> tuple[np.ndarray, np.ndarray]:
    """``(D0, D1)`` with ``det = D0 + sigma*D1`` for every sigma.

    With ``rescale`` both parts are divided by the same positive factor per
    point, which avoids overflow for large ``|lam|`` and keeps ``-D0/D1``.
    """
    w = _omega(cone)
    m = abs(int(m))
    lam = np.asarray(lam, dtype=complex)
    p1, p0 = _legendre_pair(lam, m, w, rescale)
    d0 = np.linalg.det(_assemble(0.0, lam, m, w, p1, p0))
    d1 = np.linalg.det(_assemble(1.0, lam, m, w, p1, p0)) - d0
    return d0, d1


def sigma_crossing(t, m: int, cone) -> tuple[np.ndarray, np.ndarray]:
    """Value of sigma making ``-1/2 + i t`` a root, and its imaginary residue.

    Returns ``(sigma_star, imag_part)``; ``imag_part`` is round-off sized
    when the determinant has a real zero curve on the critical line.
    """
    d0, d1 = det_affine_parts(CRITICAL_RE + 1j * np.asarray(t, dtype=float), m, cone, True)
    with np.errstate(divide="ignore", invalid="ignore"):
        s = -d0 / d1
    return s.real, s.imag


def critical_line_roots(sigma: float, cone, m: int, t_max: float = 20.0,
                        delta: float = 1e-3, line_tol: float = 1e-8) -> RootSearch:
    """Roots ``-1/2 + i t`` with ``0 <= t <= t_max`` of the cone determinant.

    Zeros are counted by the argument principle in the thin box
    ``[-1/2 - delta, -1/2 + delta] x [0, t_max]``, isolated by bisection and
    polished by Newton's method. Only representatives with ``t >= 0`` are
    returned; their conjugates are roots too.
    """
    w = _omega(cone)
    tags = theory_tags(sigma)
    if sigma == 0.5:
        return RootSearch([], BOUNDARY_TAG, tags)

    def f(z):
        return complex(mellin_det_3d(sigma, z, m, w))

    res = None
    for t_lo in (0.0, 1e-7, 1e-5):
        box = Box(CRITICAL_RE - delta, CRITICAL_RE + delta, t_lo, t_max)
        res = roots_in_box(f, box)
        if res.status == "resolved":
            break
    roots = []
    for z in res.roots:
        if abs(z.real - CRITICAL_RE) <= line_tol:
            z = complex(CRITICAL_RE, abs(z.imag))
            roots.append(ComplexRoot(z, m, "critical-line"))
    return RootSearch(roots, res.status, tags)


def critical_line_winding(sigma: float, cone, m: int, t_max: float = 20.0,
                          delta: float = 1e-3, t_lo: float = 1e-7) -> int:
    """Argument-principle zero count in the thin box around the critical line."""
    w = _omega(cone)

    def f(z):
        return complex(mellin_det_3d(sigma, z, m, w))

    return winding_number(f, Box(CRITICAL_RE - delta, CRITICAL_RE + delta, t_lo, t_max))


def default_t_grid(t_max: float = 20.0, omega: float | None = None) -> np.ndarray:
    """Sample points in ``t`` for the region scan.

    Dense near ``t = 0`` and uniform up to ``min(t_max, 20)``; beyond that
    geometric. With ``omega`` given, points with ``t * omega > TAU_CAP`` are
    dropped since the Legendre functions grow like ``exp(t omega)`` and
    would overflow.
    """
    parts = [np.geomspace(1e-6, 0.5, 60), np.linspace(0.5, min(t_max, 20.0), 240)]
    if t_max > 20.0:
        parts.append(np.geomspace(20.0, t_max, int(40 * math.log10(t_max / 20.0)) + 2))
    t = np.unique(np.concatenate(parts))
    if omega is not None:
        t = t[t * omega <= TAU_CAP]
    return t


@dataclass
class RegionGrid:
    """Membership of ``(omega, sigma)`` points in the region ``R^m``."""

    m: int
    omega_deg: np.ndarray
    sigma: np.ndarray
    in_region: np.ndarray      # (n_omega, n_sigma) bool
    num_roots: np.ndarray      # (n_omega, n_sigma) int
    min_abs_det: np.ndarray    # (n_omega, n_sigma) float
    first_root_t: np.ndarray   # (n_omega, n_sigma) float, nan if none
    status: np.ndarray         # (n_omega, n_sigma) str
    roots: dict                # (i, j) -> list of polished lam

    @property
    def unresolved(self) -> int:
        return int(np.sum(self.status == "unresolved"))

    def rows(self) -> list[dict]:
        out = []
        for i, wd in enumerate(self.omega_deg):
            for j, s in enumerate(self.sigma):
                t = self.first_root_t[i, j]
                r = self.min_abs_det[i, j]
                out.append({"m": self.m, "omega_deg": float(wd), "sigma": float(s),
                            "in_region": int(self.in_region[i, j]),
                            "num_roots": int(self.num_roots[i, j]),
                            "min_abs_det": "" if np.isnan(r) else float(r),
                            "first_root_t": "" if np.isnan(t) else float(t),
                            "status": str(self.status[i, j])})
        return out


def _column(m, wd, sigmas, t_max, t_grid, det_tol):
    w = math.radians(wd)
    tg = default_t_grid(t_max, w) if t_grid is None else t_grid

    def sstar(t):
        return float(sigma_crossing(t, m, w)[0])

    lam = CRITICAL_RE + 1j * tg
    p1, p0 = _legendre_pair(lam, m, w, rescale=True)
    d0 = np.linalg.det(_assemble(0.0, lam, m, w, p1, p0))
    d1 = np.linalg.det(_assemble(1.0, lam, m, w, p1, p0)) - d0
    with np.errstate(divide="ignore", invalid="ignore"):
        curve = (-d0 / d1).real
    n = len(sigmas)
    inreg = np.zeros(n, bool)
    nroots = np.zeros(n, int)
    resid = np.full(n, np.inf)
    first = np.full(n, np.nan)
    status = np.full(n, "resolved", dtype=object)
    roots = {}
    for j, s in enumerate(sigmas):
        if s == 0.5:
            status[j] = BOUNDARY_TAG
            resid[j] = np.nan
            continue
        line_min = np.nanmin(np.abs(_hadamard(_assemble(s, lam, m, w, p1, p0))))
        h = curve - s
        found = []
        ok = np.isfinite(h[:-1]) & np.isfinite(h[1:]) & (h[:-1] * h[1:] <= 0)
        for i in np.nonzero(ok)[0]:
            if h[i] == 0 and h[i + 1] == 0:
                continue
            if h[i + 1] == 0 and i + 2 < len(h):
                continue  # counted by the next bracket
            ta, tb = tg[i], tg[i + 1]
            t = ta if h[i] == 0 else brentq(lambda u: sstar(u) - s, ta, tb, xtol=1e-15, rtol=1e-15)
            z = complex(CRITICAL_RE, t)
            r = abs(normalized_det_3d(s, z, m, w))
            if r > det_tol:
                if abs(sstar(t) - s) > 1e3 * max(abs(h[i]), abs(h[i + 1])):
                    continue  # bracket straddles a pole of sigma*(t)
                status[j] = "unresolved"
                continue
            found.append(z)
            resid[j] = min(resid[j], r)
        if not found:
            resid[j] = line_min
        nroots[j] = len(found)
        inreg[j] = bool(found)
        if found:
            first[j] = found[0].imag
            roots[j] = found
    return inreg, nroots, resid, first, status, roots


def region_membership_grid(m: int, omega_deg, sigma_grid, t_max: float = 1000.0,
                           t_grid: np.ndarray | None = None, det_tol: float = 1e-9,
                           workers: int = 1) -> RegionGrid:
    """Scan the ``(omega, sigma)`` plane for critical-line roots at frequency ``m``.

    For each opening the curve ``sigma*(t)`` is sampled once on
    :func:`default_t_grid`; each crossing with a grid value of ``sigma`` is
    refined by Brent's method on the real function ``sigma*(t) - sigma`` and
    kept when the normalised determinant (see :func:`normalized_det_3d`) at
    ``-1/2 + i t`` is at most ``det_tol``. ``min_abs_det`` reports that
    normalised residual: at the best root when there is one, otherwise its
    minimum over the sampled line.

    As ``t`` grows, ``sigma*(t)`` tends to ``1/2`` roughly like
    ``1/(t omega)``, so membership of grid values close to ``1/2`` depends on
    ``t_max``; small openings need ``t_max`` in the hundreds, hence the
    default of 1000.
    """
    omega_deg = np.asarray(omega_deg, dtype=float)
    sigma_grid = np.asarray(sigma_grid, dtype=float)
    if np.any((omega_deg <= 0) | (omega_deg >= 180)):
        raise ValueError("cone openings must lie in (0, 180) degrees")
    if np.any((sigma_grid < 0) | (sigma_grid > 1)):
        raise ValueError("sigma grid must lie in [0, 1]")
    tg = None if t_grid is None else np.asarray(t_grid, dtype=float)
    args = [(abs(m), wd, sigma_grid, t_max, tg, det_tol) for wd in omega_deg]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(workers) as pool:
            cols = list(pool.map(_column, *zip(*args)))
    else:
        cols = [_column(*a) for a in args]
    shape = (len(omega_deg), len(sigma_grid))
    grid = RegionGrid(m, omega_deg, sigma_grid, np.zeros(shape, bool), np.zeros(shape, int),
                      np.zeros(shape), np.full(shape, np.nan),
                      np.full(shape, "resolved", dtype=object), {})
    for i, (inreg, nr, md, first, st, roots) in enumerate(cols):
        grid.in_region[i] = inreg
        grid.num_roots[i] = nr
        grid.min_abs_det[i] = md
        grid.first_root_t[i] = first
        grid.status[i] = st
        for j, zs in roots.items():
            grid.roots[(i, j)] = zs
    return grid
