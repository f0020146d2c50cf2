"""Convergence of discrete Cosserat eigenvalues under uniform refinement."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..mellin2d import EssentialSpectrumError, min_positive_real_root
from .assembly import assemble
from .eigen import cosserat_eigs
from .mesh import Uniform, build_mesh
from .spaces import FeSpacePair


def fitted_rate(s0: float, s1: float, s2: float) -> float:
    """``log2((s1 - s0) / (s2 - s1))``; ``nan`` if the differences change sign."""
    d1, d2 = s1 - s0, s2 - s1
    if d1 == 0 or d2 == 0 or d1 * d2 < 0:
        return math.nan
    return math.log2(d1 / d2)


def richardson(coarse: float, fine: float, rate: float) -> float:
    """Limit of ``s_n = s* + C 2^{-rate n}`` from two consecutive levels."""
    return fine + (fine - coarse) / (2.0 ** rate - 1.0)


def corner_rate(sigma: float, omega: float = math.pi / 2) -> float:
    """Predicted eigenvalue rate ``2 s`` from the corner regularity exponent.

    ``nan`` when ``sigma`` lies in the essential spectrum of the corner.
    """
    try:
        return 2.0 * min_positive_real_root(sigma, omega)
    except EssentialSpectrumError:
        return math.nan


@dataclass
class StudyResult:
    levels: list[int]
    sigma: np.ndarray                      # (n_levels, k)
    rate: np.ndarray                       # (k,) from the last three levels
    extrapolated: np.ndarray               # (k,)
    flags: list[list[str]] = field(default_factory=list)

    def rows(self, a: float, spaces: FeSpacePair) -> list[dict]:
        return [{"a": a, "level": n, "deg_u": spaces.deg_u, "deg_p": spaces.deg_p,
                 "j": j + 1, "sigma": float(self.sigma[i, j])}
                for i, n in enumerate(self.levels) for j in range(self.sigma.shape[1])]


def eigs_on_levels(extents, spaces: FeSpacePair, levels, k: int, **eig_kw) -> np.ndarray:
    out = []
    for n in levels:
        ops = assemble(build_mesh(extents, Uniform(n)), spaces)
        out.append(cosserat_eigs(ops, k, **eig_kw).sigma)
    return np.array(out)


def analyse(levels, sigma: np.ndarray) -> StudyResult:
    """Rates and extrapolated limits from per-level eigenvalues.

    Flags per eigenvalue: ``"rate-unreliable"`` when the last two differences
    change sign, ``"non-monotone"`` when some refinement step increased it.
    """
    sigma = np.asarray(sigma, dtype=float)
    if len(levels) < 3:
        raise ValueError("a convergence study needs at least three levels")
    k = sigma.shape[1]
    rate = np.full(k, np.nan)
    extra = np.full(k, np.nan)
    flags = []
    for j in range(k):
        s0, s1, s2 = sigma[-3:, j]
        r = fitted_rate(s0, s1, s2)
        f = []
        if math.isnan(r) or r <= 0:
            f.append("rate-unreliable")
            extra[j] = s2
        else:
            extra[j] = richardson(s1, s2, r)
        rate[j] = r
        if np.any(np.diff(sigma[:, j]) > 0):
            f.append("non-monotone")
        flags.append(f)
    return StudyResult(list(levels), sigma, rate, extra, flags)


def convergence_study(extents, spaces: FeSpacePair, levels, k: int = 2, **eig_kw) -> StudyResult:
    """Eigenvalues on ``Uniform(n)`` meshes for ``n`` in ``levels`` and their analysis."""
    levels = list(levels)
    return analyse(levels, eigs_on_levels(extents, spaces, levels, k, **eig_kw))


def two_level_extrapolation(coarse, fine, omega: float = math.pi / 2) -> np.ndarray:
    """Richardson step with the corner-predicted rate ``2 s(sigma)`` per eigenvalue.

    Eigenvalues inside the essential spectrum have no predicted rate and are
    returned unchanged from the fine level.
    """
    out = []
    for c, f in zip(coarse, fine):
        r = corner_rate(f, omega)
        out.append(f if math.isnan(r) or r <= 0 else richardson(c, f, r))
    return np.array(out)
