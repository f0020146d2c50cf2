"""Evaluation of discrete pressure and velocity fields on sample grids."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from .assembly import OperatorSet
from .mesh import TensorMesh
from .spaces import lagrange_basis


def axis_evaluation(breaks: np.ndarray, degree: int, x, interior: bool = False) -> sp.csr_matrix:
    """Matrix mapping nodal values on one axis to values at the points ``x``.

    With ``interior`` the two end nodes are dropped (zero-trace space).
    """
    breaks = np.asarray(breaks, dtype=float)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    L = breaks[-1]
    tol = 1e-12 * max(1.0, L)
    if np.any(x < -tol) or np.any(x > L + tol):
        raise ValueError(f"sample points outside [0, {L}]")
    x = np.clip(x, 0.0, L)
    n = len(breaks) - 1
    cell = np.clip(np.searchsorted(breaks, x, side="right") - 1, 0, n - 1)
    h = breaks[cell + 1] - breaks[cell]
    vals, _ = lagrange_basis(degree, (x - breaks[cell]) / h)
    cols = cell[:, None] * degree + np.arange(degree + 1)[None, :]
    rows = np.repeat(np.arange(len(x)), degree + 1)
    n_nodes = n * degree + 1
    E = sp.coo_matrix((vals.ravel(), (rows, cols.ravel())), shape=(len(x), n_nodes)).tocsc()
    if interior:
        E = E[:, 1:-1]
    return E.tocsr()


def _tensor_eval(mats, coef: np.ndarray) -> np.ndarray:
    # coef is x-fastest; reshape with the last axis first
    shape = [m.shape[1] for m in mats][::-1]
    c = coef.reshape(shape)
    d = len(mats)
    for axis, E in enumerate(mats):
        ax = d - 1 - axis
        c = np.moveaxis(c, ax, 0)
        c = (E @ c.reshape(c.shape[0], -1)).reshape((E.shape[0],) + c.shape[1:])
        c = np.moveaxis(c, 0, ax)
    return c.ravel()


def sample_grid(mesh: TensorMesh, counts) -> list[np.ndarray]:
    """Uniform sample coordinates per axis including the end points."""
    return [np.linspace(0.0, L, int(n)) for L, n in zip(mesh.extents, counts)]


def velocity_from_pressure(ops: OperatorSet, p: np.ndarray) -> list[np.ndarray]:
    """``u_k = R^{-1} B_k^T p``, the velocity realising ``<S p, p>``."""
    return [ops.solve_R(Bk.T @ p) for Bk in ops.B]


def export_eigenfunction(ops: OperatorSet, p: np.ndarray, axes_samples,
                         velocity: bool = True) -> dict[str, np.ndarray]:
    """Pressure (and velocity) samples on the tensor grid ``axes_samples``.

    Returns a dict with coordinate columns ``x, y[, z]``, ``p`` and, if
    requested, ``ux, uy[, uz]``; rows run with the first coordinate fastest.
    """
    mesh = ops.mesh
    d = mesh.dim
    if len(axes_samples) != d:
        raise ValueError(f"need {d} sample axes")
    names = "xyz"[:d]
    grids = np.meshgrid(*axes_samples[::-1], indexing="ij")[::-1]
    out = {names[k]: grids[k].ravel() for k in range(d)}
    Ep = [axis_evaluation(b, ops.spaces.deg_p, s) for b, s in zip(mesh.breakpoints, axes_samples)]
    out["p"] = _tensor_eval(Ep, np.asarray(p, dtype=float))
    if velocity:
        Eu = [axis_evaluation(b, ops.spaces.deg_u, s, interior=True)
              for b, s in zip(mesh.breakpoints, axes_samples)]
        for k, uk in enumerate(velocity_from_pressure(ops, p)):
            out["u" + names[k]] = _tensor_eval(Eu, uk)
    return out
