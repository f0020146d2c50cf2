"""Discrete Cosserat eigenvalues from the pressure Schur complement.

The discrete problem is ``S q = sigma M_p q`` with ``S = sum_k B_k R^{-1} B_k^T``.
Constants always lie in the kernel of ``S``; other kernel vectors are
spurious pressure modes of the element pair. Eigenvalues below
``KERNEL_TOL`` are reported as the discrete kernel, the ``k`` smallest of the
others as the Cosserat eigenvalues.

Two solvers are used. Small pressure spaces form ``S`` densely from
``n_p`` solves with the factorised ``R`` and call a symmetric-definite dense
eigensolver. Larger ones run shift-invert Lanczos on the pencil
``(S, M_p)`` with shift ``mu < 0``, where ``(S - mu M_p)^{-1}`` is applied
through the sparse saddle-point matrix

    [ R_d   B^T    ]
    [ B     mu M_p ]

whose pressure block of the inverse equals ``(mu M_p - S)^{-1}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
from scipy.sparse.linalg import LinearOperator, eigsh, splu

from .assembly import OperatorSet

KERNEL_TOL = 1e-10
RESIDUAL_TOL = 1e-8
DENSE_MAX = 600


class EigenSolverError(RuntimeError):
    """The iterative eigensolver did not deliver the requested pairs."""


def constant_mode(ops: OperatorSet) -> np.ndarray:
    """Constant pressure normalised in the ``M_p`` norm."""
    one = np.ones(ops.n_p)
    return one / np.sqrt(one @ (ops.Mp @ one))


def project_mean_zero(ops: OperatorSet, q: np.ndarray) -> np.ndarray:
    """Remove the ``M_p``-projection onto constants."""
    c = constant_mode(ops)
    return q - c * (c @ (ops.Mp @ q))


def schur_apply(ops: OperatorSet, q: np.ndarray, project: bool = True) -> np.ndarray:
    """``sum_k B_k R^{-1} B_k^T q``, optionally after removing the mean of ``q``."""
    q = np.asarray(q, dtype=float)
    if project:
        q = project_mean_zero(ops, q)
    out = np.zeros(ops.n_p)
    for Bk in ops.B:
        out += Bk @ ops.solve_R(Bk.T @ q)
    return out


def dense_schur(ops: OperatorSet) -> np.ndarray:
    """``S`` as a dense symmetric matrix."""
    S = np.zeros((ops.n_p, ops.n_p))
    for Bk in ops.B:
        X = ops.solve_R(Bk.T.toarray())
        S += Bk @ X
    return 0.5 * (S + S.T)


def multiplicities(values, rel_tol: float = 1e-8) -> list[int]:
    """Sizes of clusters of (sorted) eigenvalues closer than ``rel_tol`` relatively."""
    out = []
    for i, v in enumerate(values):
        if i and abs(v - values[i - 1]) <= rel_tol * max(abs(v), 1e-300):
            out[-1] += 1
        else:
            out.append(1)
    return out


@dataclass
class EigReport:
    sigma: np.ndarray            # (k,) ascending
    vectors: np.ndarray          # (n_p, k), M_p-orthonormal
    residuals: np.ndarray        # ||S q - sigma M_p q|| / ||M_p q||
    kernel_dim: int
    solver: str
    meta: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    @property
    def converged(self) -> bool:
        return bool(np.all(self.residuals <= RESIDUAL_TOL))

    @property
    def multiplicity(self) -> list[int]:
        return multiplicities(list(self.sigma))

    def to_dict(self) -> dict:
        return {
            "domain": self.meta.get("domain", {}),
            "mesh": self.meta.get("mesh", {}),
            "spaces": self.meta.get("spaces", {}),
            "eigs": [{"j": j + 1, "sigma": float(s), "residual": float(r)}
                     for j, (s, r) in enumerate(zip(self.sigma, self.residuals))],
            "kernel_dim": int(self.kernel_dim),
            "multiplicities": self.multiplicity,
            "solver": self.solver,
            "timings": dict(self.timings),
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False, **kw)


def _metadata(ops: OperatorSet, a: float | None) -> dict:
    nu, npr = ops.spaces.ndofs(ops.mesh.cells)
    return {
        "domain": {"d": ops.dim, "a": a, "extents": list(ops.mesh.extents)},
        "mesh": {"spec": ops.mesh.label, "cells": list(ops.mesh.cells)},
        "spaces": {"deg_u": ops.spaces.deg_u, "deg_p": ops.spaces.deg_p,
                   "ndof_u": nu, "ndof_p": npr},
    }


def _residuals(ops, lam, Q):
    res = np.empty(len(lam))
    for j in range(len(lam)):
        Mq = ops.Mp @ Q[:, j]
        res[j] = np.linalg.norm(schur_apply(ops, Q[:, j], project=False) - lam[j] * Mq) / np.linalg.norm(Mq)
    return res


def _dense(ops):
    S = dense_schur(ops)
    lam, Q = sla.eigh(S, ops.Mp.toarray())
    return lam, Q


def _shift_invert(ops, k, shift, seed, max_rounds=6):
    d = ops.dim
    Rd = sp.block_diag([ops.R] * d, format="csc")
    Bcat = sp.hstack(ops.B, format="csr")
    K = sp.bmat([[Rd, Bcat.T], [Bcat, shift * ops.Mp]], format="csc")
    lu = splu(K)
    nU = Rd.shape[0]

    def opinv(b):
        rhs = np.concatenate([np.zeros(nU), np.ravel(b)])
        return -lu.solve(rhs)[nU:]

    n = ops.n_p
    A = LinearOperator((n, n), matvec=lambda q: schur_apply(ops, q, project=False), dtype=float)
    OPinv = LinearOperator((n, n), matvec=opinv, dtype=float)
    v0 = np.random.default_rng(seed).standard_normal(n)
    nev = k + 4
    for _ in range(max_rounds):
        nev = min(nev, n - 1)
        lam, Q = eigsh(A, k=nev, M=ops.Mp, sigma=shift, OPinv=OPinv, which="LM",
                       v0=v0, tol=1e-13)
        order = np.argsort(lam)
        lam, Q = lam[order], Q[:, order]
        if np.sum(lam >= KERNEL_TOL) >= k or nev == n - 1:
            return lam, Q
        nev *= 2
    raise EigenSolverError(f"fewer than {k} nonzero eigenvalues after {max_rounds} rounds")


def cosserat_eigs(ops: OperatorSet, k: int = 6, *, method: str = "auto",
                  shift: float = -0.05, seed: int = 0, a: float | None = None) -> EigReport:
    """The ``k`` smallest nonzero discrete Cosserat eigenvalues.

    Parameters
    ----------
    ops : OperatorSet
        Assembled operators.
    k : int
        Number of nonzero eigenvalues wanted.
    method : {"auto", "dense", "lanczos"}
        ``auto`` picks ``dense`` when ``n_p <= DENSE_MAX``.
    shift : float
        Negative shift of the Lanczos iteration.
    seed : int
        Seed of the Lanczos start vector.
    a : float, optional
        Aspect parameter, only stored in the report metadata.
    """
    if k < 1 or k > ops.n_p - 2:
        raise ValueError(f"k must lie in 1..{ops.n_p - 2}, got {k}")
    if method == "auto":
        method = "dense" if ops.n_p <= DENSE_MAX else "lanczos"
    if method == "dense":
        lam, Q = _dense(ops)
    elif method == "lanczos":
        if shift >= 0:
            raise ValueError("the shift must be negative")
        lam, Q = _shift_invert(ops, k, shift, seed)
    else:
        raise ValueError(f"unknown method {method!r}")
    kern = lam < KERNEL_TOL
    kernel_dim = int(np.sum(kern))
    lam, Q = lam[~kern][:k], Q[:, ~kern][:, :k]
    # M_p-normalise (eigh and eigsh already do; this guards round-off)
    for j in range(Q.shape[1]):
        Q[:, j] /= np.sqrt(Q[:, j] @ (ops.Mp @ Q[:, j]))
    res = _residuals(ops, lam, Q)
    return EigReport(lam, Q, res, kernel_dim, method, _metadata(ops, a))
