"""Kronecker assembly of the discrete Stokes operators on tensor meshes.

On a box every bilinear form of the Cosserat problem factorises over the
axes, so the global matrices are sums of Kronecker products of 1D matrices.
Unknowns are ordered with the first coordinate running fastest; velocity
unknowns are the interior nodes of one scalar component (the ``d``
components share ``R``).

With ``phi`` the zero-trace velocity basis and ``psi`` the pressure basis:

    R   = int grad phi_i . grad phi_j
    B_k = int psi_i d_k phi_j          (shape n_p x n_u)
    M_p = int psi_i psi_j
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, reduce

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from .mesh import TensorMesh
from .spaces import FeSpacePair, gauss_rule, lagrange_basis


@dataclass(frozen=True)
class AxisMatrices:
    """1D matrices on one axis. Velocity rows/columns exclude the end nodes."""

    Kuu: sp.csr_matrix
    Muu: sp.csr_matrix
    Dup: sp.csr_matrix   # int phi_i' psi_j
    Mup: sp.csr_matrix   # int phi_i psi_j
    Mpp: sp.csr_matrix
    load_u: np.ndarray   # int phi_i


def _scatter(n_rows, n_cols, rows_of, cols_of, blocks):
    r = np.concatenate([np.repeat(ri, len(ci)) for ri, ci in zip(rows_of, cols_of)])
    c = np.concatenate([np.tile(ci, len(ri)) for ri, ci in zip(rows_of, cols_of)])
    v = np.concatenate([b.ravel() for b in blocks])
    return sp.coo_matrix((v, (r, c)), shape=(n_rows, n_cols)).tocsr()


def axis_matrices(breaks: np.ndarray, ku: int, kp: int) -> AxisMatrices:
    """Assemble the 1D matrices with a ``(ku + 1)``-point Gauss rule per cell."""
    h = np.diff(np.asarray(breaks, dtype=float))
    if np.any(h <= 0):
        raise ValueError("zero or negative cell length")
    n = len(h)
    xq, wq = gauss_rule(ku + 1)
    Vu, Du = lagrange_basis(ku, xq)
    Vp, _ = lagrange_basis(kp, xq)
    W = np.diag(wq)
    ref_m = Vu.T @ W @ Vu
    ref_k = Du.T @ W @ Du
    ref_d = Du.T @ W @ Vp
    ref_mup = Vu.T @ W @ Vp
    ref_mpp = Vp.T @ W @ Vp
    ref_load = Vu.T @ wq

    n_u_all = n * ku + 1
    n_p = n * kp + 1
    # global velocity index with the two end nodes removed; -1 marks dropped
    vmap = np.arange(n_u_all) - 1
    vmap[-1] = -1
    urows, prows = [], []
    for c in range(n):
        urows.append(vmap[c * ku + np.arange(ku + 1)])
        prows.append(c * kp + np.arange(kp + 1))

    def assemble(ref, scale, rows_u: bool, cols_u: bool, n_rows, n_cols):
        rows_of, cols_of, blocks = [], [], []
        for c in range(n):
            ri = urows[c] if rows_u else prows[c]
            ci = urows[c] if cols_u else prows[c]
            blk = ref * scale[c]
            rk, ck = ri >= 0, ci >= 0
            rows_of.append(ri[rk])
            cols_of.append(ci[ck])
            blocks.append(blk[np.ix_(rk, ck)])
        return _scatter(n_rows, n_cols, rows_of, cols_of, blocks)

    nu = n_u_all - 2
    ones = np.ones(n)
    load = np.zeros(nu)
    for c in range(n):
        keep = urows[c] >= 0
        np.add.at(load, urows[c][keep], (ref_load * h[c])[keep])
    return AxisMatrices(
        Kuu=assemble(ref_k, 1.0 / h, True, True, nu, nu),
        Muu=assemble(ref_m, h, True, True, nu, nu),
        Dup=assemble(ref_d, ones, True, False, nu, n_p),
        Mup=assemble(ref_mup, h, True, False, nu, n_p),
        Mpp=assemble(ref_mpp, h, False, False, n_p, n_p),
        load_u=load,
    )


def kron_axes(mats) -> sp.csr_matrix:
    """Kronecker product with the first axis running fastest."""
    return reduce(lambda A, B: sp.kron(A, B, format="csr"), list(mats)[::-1])


@dataclass
class OperatorSet:
    """Stiffness ``R``, couplings ``B[k]`` and pressure mass ``Mp``.

    ``R`` is factorised on first use and the factor is reused afterwards.
    """

    mesh: TensorMesh
    spaces: FeSpacePair
    R: sp.csc_matrix
    B: tuple
    Mp: sp.csr_matrix
    axes: tuple = field(repr=False, default=())

    @property
    def dim(self) -> int:
        return self.mesh.dim

    @property
    def n_u(self) -> int:
        return self.R.shape[0]

    @property
    def n_p(self) -> int:
        return self.Mp.shape[0]

    @cached_property
    def lu(self):
        return splu(self.R.tocsc())

    def solve_R(self, rhs: np.ndarray) -> np.ndarray:
        return self.lu.solve(np.asarray(rhs, dtype=float))


def assemble(mesh: TensorMesh, spaces: FeSpacePair) -> OperatorSet:
    """Discrete operators of the Stokes pair ``spaces`` on ``mesh``."""
    axes = tuple(axis_matrices(b, spaces.deg_u, spaces.deg_p) for b in mesh.breakpoints)
    d = mesh.dim
    R = sum(kron_axes([ax.Kuu if j == k else ax.Muu for j, ax in enumerate(axes)])
            for k in range(d))
    B = tuple(kron_axes([(ax.Dup if j == k else ax.Mup).T for j, ax in enumerate(axes)])
              for k in range(d))
    Mp = kron_axes([ax.Mpp for ax in axes])
    return OperatorSet(mesh, spaces, R.tocsc(), B, Mp.tocsr(), axes)


def reaction_solve(mesh: TensorMesh, degree: int, c: float) -> float:
    """``int psi`` for ``(-Lap + c) psi = 1`` with zero trace, degree-``degree`` elements."""
    axes = [axis_matrices(b, degree, 1) for b in mesh.breakpoints]
    d = len(axes)
    A = sum(kron_axes([ax.Kuu if j == k else ax.Muu for j, ax in enumerate(axes)])
            for k in range(d))
    A = A + c * kron_axes([ax.Muu for ax in axes])
    b = reduce(lambda u, v: np.kron(u, v), [ax.load_u for ax in axes][::-1])
    psi = splu(A.tocsc()).solve(b)
    return float(b @ psi)
