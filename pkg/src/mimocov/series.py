"""Truncated power-series algebra on coefficient arrays.

A series of order M is a length-M float array holding Taylor coefficients
(p_0, ..., p_{M-1}).  The same array is also the first column of an M x M
lower-triangular Toeplitz matrix, and that identification is the whole
point: the exponential and the inverse of such a matrix are again
lower-triangular Toeplitz, so every operation below works on first columns
only and no M x M matrix is ever materialized on the production path.
``toeplitz_exp_nilpotent`` re-derives the exponential by explicitly summing
powers of the nilpotent part; it exists as an independent cross-check of
``series_exp``, not as an optimization.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, SingularityError

MAX_ORDER = 512


def series(coeffs) -> np.ndarray:
    """Validate and return a fresh float64 coefficient array."""
    arr = np.array(coeffs, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise DomainError("a series must be a non-empty 1-D coefficient array")
    if arr.size > MAX_ORDER:
        raise DomainError(f"series order {arr.size} exceeds the guard {MAX_ORDER}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("series coefficients must all be finite")
    return arr


def series_exp(t) -> np.ndarray:
    """Coefficients of exp(T(z)) given the coefficients of T(z).

    Uses the logarithmic-derivative recursion
    p_0 = e^{t_0},  p_n = (1/n) sum_{i=0}^{n-1} (n - i) t_{n-i} p_i,
    which costs O(M^2) and never forms a factorial.
    """
    t = series(t)
    m = t.size
    p = np.zeros(m)
    p[0] = math.exp(t[0])
    weighted = t * np.arange(m)  # j * t_j
    for n in range(1, m):
        p[n] = np.dot(weighted[1 : n + 1], p[n - 1 :: -1]) / n
    return series(p)


def series_reciprocal(c) -> np.ndarray:
    """Coefficients of 1 / C(z) given the coefficients of C(z).

    b_0 = 1/c_0,  b_n = -(1/c_0) sum_{k=1}^{n} c_k b_{n-k}.
    """
    c = series(c)
    if c[0] == 0.0:
        raise SingularityError("series reciprocal undefined: leading coefficient is zero")
    m = c.size
    b = np.zeros(m)
    b[0] = 1.0 / c[0]
    for n in range(1, m):
        b[n] = -np.dot(c[1 : n + 1], b[n - 1 :: -1]) / c[0]
    return series(b)


def coeff_sum(p) -> float:
    """Sum of the coefficients, i.e. the l1 column sum of the Toeplitz matrix
    the series represents (all coverage outputs are such sums)."""
    return float(np.sum(series(p)))


def toeplitz_exp_nilpotent(t) -> np.ndarray:
    """First column of exp(T) for the lower-triangular Toeplitz matrix T.

    Splits T = t_0 I + N with N strictly lower triangular (nilpotent, N^M = 0)
    and sums e^{t_0} sum_{k<M} N^k / k!.  The k-th power's first column is the
    k-fold self-convolution of (0, t_1, ..., t_{M-1}), so this path shares no
    code with the recursion in ``series_exp``.
    """
    t = series(t)
    m = t.size
    strict = t.copy()
    strict[0] = 0.0
    total = np.zeros(m)
    total[0] = 1.0
    power = total.copy()  # N^k / k! first column, starting at k = 0
    for k in range(1, m):
        power = np.convolve(power, strict)[:m] / k
        if not power.any():
            break
        total += power
    return series(math.exp(t[0]) * total)
