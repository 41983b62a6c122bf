"""Scalar special functions backing the closed-form coverage entries.

Everything in this module is a pure function of plain Python numbers.  The
hypergeometric evaluators are tuned for the argument shapes that coverage
computations produce: 1F1(a; b; z) with b - a = 1 and z of either sign, and
2F1(a, b; c; z) with z < 0 (interference entries) or 0 <= z < 1 (decay-rate
root finding).  Series are summed with a relative term cutoff and a hard
iteration cap; hitting the cap raises instead of returning a truncated sum.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, NumericalError

# Series controls shared by both hypergeometric evaluators.
_MAX_TERMS = 100_000
_TERM_RTOL = 1e-16

# Largest -z handled by the Kummer-transformed 1F1 series before switching
# to the large-argument expansion (keeps e^{|z|}-sized partial sums finite).
_KUMMER_SERIES_LIMIT = 600.0

_STIRLING_MAX = 64
_FALLING_MAX = 512


def _check_finite(**kwargs: float) -> None:
    for name, value in kwargs.items():
        if not math.isfinite(value):
            raise DomainError(f"{name} must be finite, got {value!r}")


def _sum_by_ratio(ratio, context: str) -> float:
    """Sum 1 + t1 + t2 + ... where t_{k+1} = t_k * ratio(k).

    Stops once two consecutive terms fall below the relative cutoff (a lone
    tiny term can be an accidental zero of a Pochhammer factor, not
    convergence).  Raises on the iteration cap or non-finite partial sums.
    """
    total = 1.0
    term = 1.0
    small = 0
    for k in range(_MAX_TERMS):
        term *= ratio(k)
        total += term
        if term == 0.0:
            return total
        if abs(term) <= _TERM_RTOL * abs(total):
            small += 1
            if small >= 2:
                return total
        else:
            small = 0
        if not math.isfinite(total):
            raise NumericalError(f"series overflowed for {context}")
    raise NumericalError(f"series failed to converge within {_MAX_TERMS} terms for {context}")


def hyp1f1(a: float, b: float, z: float) -> float:
    """Kummer's confluent hypergeometric function 1F1(a; b; z).

    Negative arguments are routed through the Kummer transformation
    1F1(a; b; z) = e^z 1F1(b - a; b; -z) so that the series being summed has
    a positive argument; the direct alternating series loses all precision
    long before z = -30.  Very large negative z falls back to the Poincare
    expansion, which terminates exactly when b - a is a small non-negative
    integer (the case b = a + 1 used throughout the coverage entries).
    """
    _check_finite(a=a, b=b, z=z)
    if b <= 0.0 and b == math.floor(b):
        raise DomainError(f"1F1 undefined for non-positive integer b = {b}")
    if z == 0.0 or a == 0.0:
        return 1.0
    if a == b:
        return math.exp(z)
    if z > 0.0:
        return _sum_by_ratio(
            lambda k: (a + k) * z / ((b + k) * (k + 1.0)),
            f"1F1(a={a}, b={b}, z={z})",
        )
    x = -z
    if x <= _KUMMER_SERIES_LIMIT:
        transformed = _sum_by_ratio(
            lambda k: (b - a + k) * x / ((b + k) * (k + 1.0)),
            f"Kummer-transformed 1F1(a={b - a}, b={b}, z={x})",
        )
        return math.exp(z) * transformed
    return _hyp1f1_large_negative(a, b, x)


def _hyp1f1_large_negative(a: float, b: float, x: float) -> float:
    """1F1(a; b; -x) for x beyond the series range, via the z -> -inf expansion.

    1F1(a; b; -x) ~ [Gamma(b)/Gamma(b-a)] x^{-a} sum_k (a)_k (1+a-b)_k / (k! x^k).
    The e^{-x} companion term is far below double precision here.
    """
    context = f"1F1(a={a}, b={b}, z={-x}) large-argument expansion"
    if b - a <= 0.0:
        raise NumericalError(f"{context}: requires b > a")
    total = 1.0
    term = 1.0
    for k in range(1000):
        nxt = term * (a + k) * (1.0 + a - b + k) / ((k + 1.0) * x)
        if nxt == 0.0:
            break
        if abs(nxt) >= abs(term):
            # Divergent tail reached before the terms got small enough.
            if abs(term) > 1e-13 * abs(total):
                raise NumericalError(f"{context}: asymptotic series does not settle")
            break
        term = nxt
        total += term
        if abs(term) <= 1e-17 * abs(total):
            break
    log_pref = math.lgamma(b) - math.lgamma(b - a) - a * math.log(x)
    return math.exp(log_pref) * total


def hyp2f1(a: float, b: float, c: float, z: float) -> float:
    """Gauss hypergeometric function 2F1(a, b; c; z) for real z < 1.

    Arguments in [0, 1) use the defining series.  Negative arguments are
    always mapped through the Pfaff transformation w = z / (z - 1), which
    keeps w inside (0, 1) and, for the entry-shaped parameters (where
    c - b = 1), produces an all-positive series immune to the cancellation
    that wrecks the direct series at large a.
    """
    sign, log_abs = _hyp2f1_sign_log(a, b, c, z)
    if log_abs == -math.inf:
        return 0.0
    return sign * math.exp(log_abs)


def _hyp2f1_sign_log(a: float, b: float, c: float, z: float) -> tuple[float, float]:
    """(sign, log|2F1|), so callers can fold huge prefactors in log space."""
    _check_finite(a=a, b=b, c=c, z=z)
    if c <= 0.0 and c == math.floor(c):
        raise DomainError(f"2F1 undefined for non-positive integer c = {c}")
    if z == 0.0 or a == 0.0 or b == 0.0:
        return 1.0, 0.0
    if z >= 1.0:
        raise NumericalError(f"2F1(a={a}, b={b}, c={c}, z={z}): argument must lie left of the z = 1 singularity")
    context = f"2F1(a={a}, b={b}, c={c}, z={z})"
    if z > 0.0:
        value = _sum_by_ratio(
            lambda k: (a + k) * (b + k) * z / ((c + k) * (k + 1.0)),
            context,
        )
        return _sign_log(value)
    w = z / (z - 1.0)
    # Pfaff transformation; prefer the slot whose transformed series has
    # non-negative parameters (no sign flips, no cancellation).
    if c - b > 0.0 or c - a <= 0.0:
        p, q, log_pref = a, c - b, -a * math.log1p(-z)
    else:
        p, q, log_pref = b, c - a, -b * math.log1p(-z)
    value = _sum_by_ratio(
        lambda k: (p + k) * (q + k) * w / ((c + k) * (k + 1.0)),
        context + " (Pfaff)",
    )
    sign, log_abs = _sign_log(value)
    return sign, log_abs + log_pref


def _sign_log(value: float) -> tuple[float, float]:
    if value == 0.0:
        return 1.0, -math.inf
    if value > 0.0:
        return 1.0, math.log(value)
    return -1.0, math.log(-value)


def bessel_k_half(n: int, x: float) -> float:
    """Modified Bessel function K_{n - 1/2}(x) for integer n >= 0 and x > 0.

    Half-integer orders have a terminating closed form,
    K_{m+1/2}(x) = sqrt(pi/(2x)) e^{-x} sum_{k=0}^{m} (m+k)! / (k! (m-k)! (2x)^k),
    so the result is exact up to rounding; no series control is needed.
    """
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"order index must be a non-negative integer, got {n!r}")
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"bessel_k_half requires x > 0, got {x!r}")
    m = n - 1 if n >= 1 else 0  # K_{-1/2} = K_{1/2}
    total = 1.0
    term = 1.0
    for k in range(1, m + 1):
        term *= (m + k) * (m - k + 1) / (2.0 * k * x)
        total += term
    return math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) * total


@lru_cache(maxsize=None)
def _stirling1_row(n: int) -> tuple[int, ...]:
    # Signed Stirling numbers of the first kind, row n of the triangle:
    # s(n, k) with (x)_n falling = sum_k s(n, k) x^k.
    if n == 0:
        return (1,)
    prev = _stirling1_row(n - 1)
    row = [0] * (n + 1)
    for k in range(1, n + 1):
        above = prev[k] if k < len(prev) else 0
        row[k] = prev[k - 1] - (n - 1) * above
    return tuple(row)


def stirling_first(n: int, k: int) -> int:
    """Signed Stirling number of the first kind s(n, k), exactly (Python int)."""
    if not isinstance(n, int) or not isinstance(k, int) or n < 0 or k < 0:
        raise DomainError(f"stirling_first takes non-negative integers, got ({n!r}, {k!r})")
    if n > _STIRLING_MAX:
        raise DomainError(f"stirling_first order {n} exceeds the guard {_STIRLING_MAX}")
    if k > n:
        return 0
    return _stirling1_row(n)[k]


@lru_cache(maxsize=None)
def _stirling2_row(n: int) -> tuple[int, ...]:
    # Stirling numbers of the second kind S(n, k).
    if n == 0:
        return (1,)
    prev = _stirling2_row(n - 1)
    row = [0] * (n + 1)
    for k in range(1, n + 1):
        above = prev[k] if k < len(prev) else 0
        row[k] = k * above + prev[k - 1]
    return tuple(row)


def _touchard_exact(k: int, x: Fraction) -> Fraction:
    row = _stirling2_row(k)
    acc = Fraction(0)
    power = Fraction(1)
    for j in range(k + 1):
        acc += row[j] * power
        power *= x
    return acc


def touchard(k: int, x: float) -> float:
    """Touchard (exponential Bell) polynomial T_k(x) = sum_j S(k, j) x^j.

    Evaluated in exact rational arithmetic (floats are dyadic rationals) and
    rounded once at the end; the alternating sums at negative x would
    otherwise shed digits.
    """
    if not isinstance(k, int) or k < 0:
        raise DomainError(f"touchard order must be a non-negative integer, got {k!r}")
    if k > _STIRLING_MAX:
        raise DomainError(f"touchard order {k} exceeds the guard {_STIRLING_MAX}")
    _check_finite(x=x)
    return float(_touchard_exact(k, Fraction(x)))


def falling_factorial(x: float, n: int) -> float:
    """Falling factorial x (x-1) (x-2) ... (x-n+1); equals 1 for n = 0."""
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"falling_factorial order must be a non-negative integer, got {n!r}")
    if n > _FALLING_MAX:
        raise DomainError(f"falling_factorial order {n} exceeds the guard {_FALLING_MAX}")
    _check_finite(x=x)
    out = 1.0
    for j in range(n):
        out *= x - j
    return out


def ln_gamma(x: float) -> float:
    """log Gamma(x) for x > 0."""
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"ln_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)
