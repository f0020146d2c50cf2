"""Continuous tensor-product Lagrange spaces for the Stokes pair.

Velocities use degree ``deg_u`` with zero trace, pressures degree ``deg_p``
without boundary condition. Nodes on each cell are the Gauss-Lobatto-Legendre
points, so a 1D space of degree ``k`` on ``N`` cells has ``N*k + 1`` nodes
and the tensor space has the product of the per-axis counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import legendre as L

MAX_DEGREE = 8


class SpaceError(ValueError):
    """Inadmissible pair of polynomial degrees."""


@dataclass(frozen=True)
class FeSpacePair:
    deg_u: int = 2
    deg_p: int = 1

    def __post_init__(self):
        du, dp = self.deg_u, self.deg_p
        if not 2 <= du <= MAX_DEGREE:
            raise SpaceError(f"velocity degree must lie in 2..{MAX_DEGREE}, got {du}")
        if dp < 1 or dp not in (du - 1, du - 2):
            raise SpaceError(f"pressure degree must be deg_u-1 or deg_u-2 and >= 1, got {dp}")

    def n_nodes_1d(self, n_cells: int, which: str) -> int:
        """Nodes per axis; velocity counts exclude the two end points."""
        if which == "u":
            return n_cells * self.deg_u - 1
        return n_cells * self.deg_p + 1

    def ndofs(self, cells) -> tuple[int, int]:
        """``(ndof_u, ndof_p)`` with ``ndof_u`` counting all ``d`` components."""
        nu = int(np.prod([self.n_nodes_1d(c, "u") for c in cells]))
        npr = int(np.prod([self.n_nodes_1d(c, "p") for c in cells]))
        return len(cells) * nu, npr


@lru_cache(maxsize=None)
def gll_nodes(k: int) -> np.ndarray:
    """Gauss-Lobatto-Legendre nodes of degree ``k`` mapped to ``[0, 1]``."""
    if k < 1:
        raise SpaceError("degree must be at least 1")
    inner = L.legroots(L.legder([0] * k + [1])) if k > 1 else np.array([])
    x = np.concatenate([[-1.0], np.sort(inner.real), [1.0]])
    return 0.5 * (x + 1.0)


@lru_cache(maxsize=None)
def _lagrange_coeffs(k: int) -> np.ndarray:
    # columns: Legendre coefficients (on [-1, 1]) of the Lagrange basis
    t = 2.0 * gll_nodes(k) - 1.0
    return np.linalg.inv(L.legvander(t, k).T).T


def lagrange_basis(k: int, x) -> tuple[np.ndarray, np.ndarray]:
    """Values and derivatives of the degree-``k`` Lagrange basis on ``[0, 1]``.

    Returns two arrays of shape ``(len(x), k + 1)``.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    t = 2.0 * x - 1.0
    c = _lagrange_coeffs(k)
    vals = L.legvander(t, k) @ c
    dc = np.stack([L.legder(c[:, j]) for j in range(k + 1)], axis=1)
    ders = 2.0 * (L.legvander(t, k - 1) @ dc) if k > 0 else np.zeros_like(vals)
    return vals, ders


def gauss_rule(n: int) -> tuple[np.ndarray, np.ndarray]:
    """``n``-point Gauss-Legendre rule on ``[0, 1]``."""
    x, w = L.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w
