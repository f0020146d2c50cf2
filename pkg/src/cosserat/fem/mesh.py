"""Tensor-product meshes of boxes ``(0, L1) x ... x (0, Ld)``.

A mesh is a list of strictly increasing breakpoint arrays, one per axis; the
cells are all products of consecutive intervals. Three recipes are provided:

* ``Uniform(n)``: ``round(L * 2**n)`` equal cells on an axis of length ``L``,
  so the ``1/a x 1`` rectangle gets ``(2**n / a) x 2**n`` cells.
* ``UniformCells(counts)``: explicit cell counts per axis.
* ``CornerRefined(layers, ratio)``: ``max(2, round(L))`` equal base cells
  per axis, the two end cells replaced by geometric meshes of ``layers``
  cells with grading ``ratio`` toward the end point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np


class MeshSpecError(ValueError):
    """Malformed or inadmissible mesh description."""


@dataclass(frozen=True)
class Uniform:
    level: int

    def __post_init__(self):
        if int(self.level) != self.level or self.level < 0:
            raise MeshSpecError(f"uniform level must be a non-negative integer, got {self.level!r}")

    def breakpoints(self, length: float) -> np.ndarray:
        n = max(1, int(round(length * 2 ** self.level)))
        return np.linspace(0.0, length, n + 1)

    def label(self) -> str:
        return f"uniform:{self.level}"


@dataclass(frozen=True)
class UniformCells:
    counts: tuple[int, ...]

    def __post_init__(self):
        if not self.counts or any(int(c) != c or c < 1 for c in self.counts):
            raise MeshSpecError(f"cell counts must be positive integers, got {self.counts!r}")

    def breakpoints_all(self, extents) -> list[np.ndarray]:
        if len(extents) != len(self.counts):
            raise MeshSpecError(f"{len(self.counts)} cell counts for a {len(extents)}-d box")
        return [np.linspace(0.0, L, int(c) + 1) for L, c in zip(extents, self.counts)]

    def label(self) -> str:
        return "cells:" + "x".join(str(int(c)) for c in self.counts)


@dataclass(frozen=True)
class CornerRefined:
    layers: int = 6
    ratio: float = 0.5

    def __post_init__(self):
        if int(self.layers) != self.layers or self.layers < 1:
            raise MeshSpecError(f"layers must be a positive integer, got {self.layers!r}")
        if not 0.0 < self.ratio < 1.0:
            raise MeshSpecError(f"grading ratio must lie in (0, 1), got {self.ratio!r}")

    def breakpoints(self, length: float) -> np.ndarray:
        nb = max(2, int(round(length)))
        h = length / nb
        # geometric points h*q^j, j = 0..layers-1, measured from the end
        g = h * self.ratio ** np.arange(self.layers)
        left = np.concatenate([[0.0], g[::-1]])
        right = length - left[::-1]
        inner = np.linspace(h, length - h, nb - 1)
        return np.unique(np.concatenate([left, inner, right]))

    def label(self) -> str:
        return f"refined:{self.layers},{self.ratio:g}"


MeshRecipe = Uniform | UniformCells | CornerRefined


@dataclass(frozen=True)
class TensorMesh:
    """Breakpoints per axis; cells are the products of consecutive intervals."""

    breakpoints: tuple[np.ndarray, ...]
    label: str = ""

    def __post_init__(self):
        for k, b in enumerate(self.breakpoints):
            b = np.asarray(b, dtype=float)
            if b.ndim != 1 or b.size < 2:
                raise MeshSpecError(f"axis {k} needs at least two breakpoints")
            if b[0] != 0.0:
                raise MeshSpecError(f"axis {k} must start at 0")
            if np.any(np.diff(b) <= 0):
                raise MeshSpecError(f"breakpoints on axis {k} are not strictly increasing")

    @property
    def dim(self) -> int:
        return len(self.breakpoints)

    @property
    def extents(self) -> tuple[float, ...]:
        return tuple(float(b[-1]) for b in self.breakpoints)

    @property
    def cells(self) -> tuple[int, ...]:
        return tuple(len(b) - 1 for b in self.breakpoints)

    @property
    def n_cells(self) -> int:
        return int(np.prod(self.cells))

    def widths(self, axis: int) -> np.ndarray:
        return np.diff(self.breakpoints[axis])


def build_mesh(extents, recipe: MeshRecipe) -> TensorMesh:
    """Mesh of the box with the given ``extents`` following ``recipe``."""
    extents = tuple(float(L) for L in extents)
    if not 1 <= len(extents) <= 3 or any(L <= 0 for L in extents):
        raise MeshSpecError(f"invalid box extents {extents!r}")
    if isinstance(recipe, UniformCells):
        bps = recipe.breakpoints_all(extents)
    elif isinstance(recipe, (Uniform, CornerRefined)):
        bps = [recipe.breakpoints(L) for L in extents]
    else:
        raise MeshSpecError(f"unknown mesh recipe {recipe!r}")
    return TensorMesh(tuple(bps), recipe.label())


_SPEC = re.compile(r"^\s*(uniform|cells|refined)\s*:\s*(.+?)\s*$")


def parse_mesh_spec(text: str) -> MeshRecipe:
    """Parse ``uniform:N``, ``cells:40x4`` or ``refined:L,q``."""
    m = _SPEC.match(text)
    if not m:
        raise MeshSpecError(f"cannot parse mesh spec {text!r}")
    kind, arg = m.groups()
    try:
        if kind == "uniform":
            return Uniform(int(arg))
        if kind == "cells":
            return UniformCells(tuple(int(c) for c in arg.lower().split("x")))
        parts = arg.split(",")
        if len(parts) == 1:
            return CornerRefined(int(parts[0]))
        if len(parts) == 2:
            return CornerRefined(int(parts[0]), float(parts[1]))
    except ValueError as exc:
        if isinstance(exc, MeshSpecError):
            raise
        raise MeshSpecError(f"cannot parse mesh spec {text!r}") from exc
    raise MeshSpecError(f"cannot parse mesh spec {text!r}")


def box_extents(a: float, dim: int = 2) -> tuple[float, ...]:
    """``1/a x 1`` (``dim=2``) or ``1/a x 1 x 1`` (``dim=3``)."""
    a = float(a)
    if not 0.0 < a <= 1.0:
        raise MeshSpecError(f"aspect parameter a must lie in (0, 1], got {a!r}")
    if dim not in (2, 3):
        raise MeshSpecError(f"dimension must be 2 or 3, got {dim!r}")
    return (1.0 / a,) + (1.0,) * (dim - 1)


def uniform_cells_for(a: float, level: int, dim: int = 2) -> tuple[int, ...]:
    """Cell counts of ``Uniform(level)`` on the ``a``-box, e.g. ``(10, 2)`` for a=0.2, n=1."""
    return tuple(max(1, int(round(L * 2 ** level))) for L in box_extents(a, dim))

