"""Ferrers (associated Legendre) functions of complex degree on ``(-1, 1)``.

    P^{-m}_nu(x) = ((1-x)/(1+x))^{m/2} / m!  *  2F1(-nu, nu+1; 1+m; (1-x)/2)

The Gauss series is summed directly; it converges for every ``x`` in
``(-1, 1)``, slowly as ``x -> -1``. Evaluation is vectorised over ``nu``.
"""

from __future__ import annotations

import math

import numpy as np

SERIES_TOL = 1e-15
CHUNK = 512
MAX_TERMS = 20_000_000


class SeriesDivergence(ArithmeticError):
    """The hypergeometric series did not meet its stopping rule."""


def hyp2f1_series(a, b, c: float, z: float, tol: float = SERIES_TOL,
                  max_terms: int = MAX_TERMS) -> np.ndarray:
    """Gauss series ``2F1(a, b; c; z)`` for ``0 <= z < 1``, vectorised in ``a, b``.

    Summation stops once three consecutive terms are below ``tol`` times the
    partial sum.
    """
    a, b = np.broadcast_arrays(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))
    shape = a.shape
    a, b = a.ravel(), b.ravel()
    n = a.size
    total = np.ones(n, dtype=complex)
    last = np.ones(n, dtype=complex)
    run = np.zeros(n, dtype=int)
    active = np.arange(n)
    k0 = 0
    ks = np.arange(CHUNK, dtype=float)
    while active.size:
        if k0 >= max_terms:
            raise SeriesDivergence(f"2F1 series not converged after {max_terms} terms")
        k = k0 + ks
        aa, bb = a[active, None], b[active, None]
        ratio = (aa + k) * (bb + k) / ((c + k) * (k + 1.0)) * z
        terms = last[active, None] * np.cumprod(ratio, axis=1)
        partial = total[active, None] + np.cumsum(terms, axis=1)
        small = np.abs(terms) <= tol * np.abs(partial)
        # length of the run of small terms ending at each position
        j = np.arange(CHUNK)
        last_big = np.maximum.accumulate(np.where(small, -1, j), axis=1)
        runs = np.where(last_big < 0, run[active, None] + j + 1, j - last_big)
        hit = runs >= 3
        done = hit.any(axis=1)
        stop = np.where(done, hit.argmax(axis=1), CHUNK - 1)
        rows = np.arange(active.size)
        total[active] = partial[rows, stop]
        last[active] = terms[rows, stop]
        run[active] = runs[rows, stop]
        active = active[~done]
        k0 += CHUNK
    return total.reshape(shape)


def legendre_p(nu, m: int, x: float) -> np.ndarray | complex:
    """Ferrers function ``P^{-m}_nu(x)`` for integer ``m >= 0`` and ``-1 < x < 1``."""
    m = int(m)
    if m < 0:
        raise ValueError("legendre_p takes the order magnitude m >= 0")
    x = float(x)
    if not -1.0 < x < 1.0:
        raise ValueError(f"x must lie in (-1, 1), got {x!r}")
    nu = np.asarray(nu, dtype=complex)
    f = hyp2f1_series(-nu, nu + 1.0, 1.0 + m, 0.5 * (1.0 - x))
    val = f * (((1.0 - x) / (1.0 + x)) ** (0.5 * m) / math.factorial(m))
    return val[()] if val.ndim == 0 else val


def ferrers_p(nu, order: int, x: float):
    """Ferrers function ``P^{order}_nu(x)`` for any integer order.

    Positive orders use ``P^m_nu = (-1)^m (nu-m+1)_{2m} P^{-m}_nu``.
    """
    m = abs(int(order))
    val = legendre_p(nu, m, x)
    if order <= 0:
        return val
    nu = np.asarray(nu, dtype=complex)
    poch = np.ones_like(nu)
    for j in range(-m + 1, m + 1):
        poch = poch * (nu + j)
    out = (-1) ** m * poch * val
    return out[()] if np.ndim(out) == 0 else out
