"""Zeros of holomorphic functions inside rectangles of the complex plane.

Zeros are counted with the argument principle: the change of ``arg f`` along
the boundary of a box, tracked by adaptive sampling, divided by ``2*pi``.
Boxes holding zeros are bisected until each holds a single zero, which is
then polished by Newton's method with a central-difference derivative.
No derivative of ``f`` is ever required from the caller.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

HoloFunc = Callable[[complex], complex]


class ContourHitsZero(RuntimeError):
    """Raised when a zero lies on (or numerically too close to) a contour."""


@dataclass(frozen=True)
class Box:
    """Closed rectangle ``[re_lo, re_hi] x [im_lo, im_hi]``."""

    re_lo: float
    re_hi: float
    im_lo: float
    im_hi: float

    def __post_init__(self):
        if not (self.re_lo < self.re_hi and self.im_lo < self.im_hi):
            raise ValueError(f"degenerate box {self}")

    @property
    def width(self) -> float:
        return self.re_hi - self.re_lo

    @property
    def height(self) -> float:
        return self.im_hi - self.im_lo

    @property
    def center(self) -> complex:
        return complex(0.5 * (self.re_lo + self.re_hi), 0.5 * (self.im_lo + self.im_hi))

    def contains(self, z: complex, pad: float = 0.0) -> bool:
        return (self.re_lo - pad <= z.real <= self.re_hi + pad
                and self.im_lo - pad <= z.imag <= self.im_hi + pad)

    def corners(self) -> list[complex]:
        return [complex(self.re_lo, self.im_lo), complex(self.re_hi, self.im_lo),
                complex(self.re_hi, self.im_hi), complex(self.re_lo, self.im_hi)]

    def split(self, frac: float = 0.5) -> tuple["Box", "Box"]:
        """Cut across the longer side at ``frac`` of its length."""
        if self.width >= self.height:
            cut = self.re_lo + frac * self.width
            return (Box(self.re_lo, cut, self.im_lo, self.im_hi),
                    Box(cut, self.re_hi, self.im_lo, self.im_hi))
        cut = self.im_lo + frac * self.height
        return (Box(self.re_lo, self.re_hi, self.im_lo, cut),
                Box(self.re_lo, self.re_hi, cut, self.im_hi))


def _segment_phase(f, za, zb, fa, fb, max_step, depth, floor):
    # Phase increment of f from za to zb, refined until every sub-step turns
    # by less than max_step radians.
    d = cmath.phase(fb / fa)
    if abs(d) <= max_step:
        return d
    if depth == 0:
        raise ContourHitsZero(f"phase not resolved between {za} and {zb}")
    zm = 0.5 * (za + zb)
    fm = f(zm)
    if not np.isfinite(fm) or abs(fm) <= floor:
        raise ContourHitsZero(f"|f| vanishes on the contour near {zm}")
    return (_segment_phase(f, za, zm, fa, fm, max_step, depth - 1, floor)
            + _segment_phase(f, zm, zb, fm, fb, max_step, depth - 1, floor))


def winding_number(f: HoloFunc, box: Box, n_per_side: int = 32,
                   max_step: float = math.pi / 4, max_depth: int = 40,
                   floor: float = 0.0) -> int:
    """Number of zeros of ``f`` inside ``box`` (counted with multiplicity).

    Raises
    ------
    ContourHitsZero
        If ``|f| <= floor`` at a sample point or the phase cannot be
        resolved within ``max_depth`` bisections.
    """
    corners = box.corners()
    total = 0.0
    for s in range(4):
        za, zb = corners[s], corners[(s + 1) % 4]
        pts = [za + (zb - za) * k / n_per_side for k in range(n_per_side + 1)]
        vals = [f(z) for z in pts]
        for z, v in zip(pts, vals):
            if not np.isfinite(v) or abs(v) <= floor:
                raise ContourHitsZero(f"|f| vanishes on the contour near {z}")
        for k in range(n_per_side):
            total += _segment_phase(f, pts[k], pts[k + 1], vals[k], vals[k + 1],
                                    max_step, max_depth, floor)
    count = total / (2 * math.pi)
    n = int(round(count))
    if abs(count - n) > 1e-6:
        raise ContourHitsZero(f"non-integer winding {count}")
    return n


def newton_iterate(f: HoloFunc, z0: complex, tol: float = 1e-14,
                   max_iter: int = 60, h: float | None = None) -> tuple[complex, bool]:
    """Newton iteration with a central-difference derivative.

    Returns the last iterate and whether the step-size criterion was met.
    """
    z = complex(z0)
    for _ in range(max_iter):
        step = h if h is not None else 1e-6 * max(1.0, abs(z))
        fz = f(z)
        dfz = (f(z + step) - f(z - step)) / (2 * step)
        if dfz == 0 or not np.isfinite(dfz):
            return z, False
        dz = fz / dfz
        z -= dz
        if abs(dz) <= tol * max(1.0, abs(z)):
            return z, True
    return z, False


def newton_polish(f: HoloFunc, z0: complex, tol: float = 1e-14,
                  max_iter: int = 60, h: float | None = None) -> complex:
    """Newton iteration with a central-difference derivative; returns the last iterate."""
    return newton_iterate(f, z0, tol, max_iter, h)[0]


@dataclass
class BoxRoots:
    roots: list[complex] = field(default_factory=list)
    count: int = 0
    status: str = "resolved"


def roots_in_box(f: HoloFunc, box: Box, max_depth: int = 30,
                 min_size: float = 1e-10, floor: float = 0.0,
                 polish_tol: float = 1e-14) -> BoxRoots:
    """Locate all zeros of ``f`` in ``box``.

    The box is bisected until each piece holds one zero; a Newton polish
    started at the piece centre must converge inside the piece (slightly
    padded), otherwise bisection continues. Pieces whose boundary meets a zero are
    re-cut at a shifted position. Status is ``"unresolved"`` if any piece
    could not be settled within ``max_depth`` levels, or if the same zero
    was claimed by two pieces.
    """
    out = BoxRoots()
    try:
        out.count = winding_number(f, box, floor=floor)
    except ContourHitsZero:
        out.status = "unresolved"
        return out
    stack = [(box, out.count, 0)]
    while stack:
        b, n, depth = stack.pop()
        if n == 0:
            continue
        if n == 1:
            z, ok = newton_iterate(f, b.center, tol=polish_tol)
            if ok and b.contains(z, pad=1e-9 * max(1.0, abs(z))):
                out.roots.append(z)
                continue
        if depth >= max_depth or max(b.width, b.height) < min_size:
            z = newton_polish(f, b.center, tol=polish_tol)
            out.roots.extend([z] * n)
            out.status = "unresolved"
            continue
        # off-centre cuts: midlines of symmetric boxes often carry zeros of
        # real-coefficient functions, and two zeros on one edge can alias
        for frac in (0.4873, 0.5291, 0.4411, 0.5):
            left, right = b.split(frac)
            try:
                nl = winding_number(f, left, floor=floor)
            except ContourHitsZero:
                continue
            stack.append((left, nl, depth + 1))
            stack.append((right, n - nl, depth + 1))
            break
        else:
            out.roots.extend([newton_polish(f, b.center, tol=polish_tol)] * n)
            out.status = "unresolved"
    out.roots.sort(key=lambda z: (z.imag, z.real))
    for z0, z1 in zip(out.roots, out.roots[1:]):
        if abs(z1 - z0) <= 1e-10 * max(1.0, abs(z0)):
            # a simple zero reported twice means a cut passed through zeros
            out.status = "unresolved"
    return out
