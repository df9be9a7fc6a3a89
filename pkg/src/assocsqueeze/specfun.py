"""Special functions: Hermite polynomials, Pochhammer symbols, Kummer's
function, terminating 3F2 at unit argument and associated Laguerre
polynomials.

All polynomial families are evaluated by forward three-term recurrence.
Overflow is reported as :class:`~assocsqueeze.errors.RangeError` instead of
leaking ``inf``/``nan``.  The recommended working range for the Hermite
routines is ``n <= 170`` together with ``|z| <= 30``; inside it no overflow
occurs.
"""

from __future__ import annotations

import cmath
import math
from numbers import Integral, Real

import numpy as np

from .errors import DomainError, RangeError, SeriesError

HERMITE_SAFE_ORDER = 170
HERMITE_SAFE_ABS = 30.0

KUMMER_MAX_TERMS = 500
KUMMER_RTOL = 1e-14


def _number(z):
    """Keep real inputs real, promote everything else to complex."""
    if isinstance(z, Real):
        return float(z)
    return complex(z)


def _is_finite(v) -> bool:
    return cmath.isfinite(v) if isinstance(v, complex) else math.isfinite(v)


def _check_order(n):
    if not isinstance(n, Integral) or n < 0:
        raise DomainError(f"polynomial order must be a nonnegative integer, got {n!r}")


def hermite_phys(n: int, z):
    """Physicists' Hermite polynomial H_n(z).

    Uses H_{n+1} = 2z H_n - 2n H_{n-1} with H_0 = 1, H_1 = 2z.
    """
    _check_order(n)
    z = _number(z)
    h_prev, h = 1.0 + 0 * z, 2 * z
    if n == 0:
        return h_prev
    for k in range(1, n):
        h_prev, h = h, 2 * z * h - 2 * k * h_prev
        if not _is_finite(h):
            raise RangeError(f"H_{k + 1}({z}) overflows double precision", index=k + 1)
    return h


def hermite_scaled(n: int, z):
    """Scaled (probabilists') Hermite polynomial He_n(z) = 2^{-n/2} H_n(z/sqrt 2)."""
    _check_order(n)
    z = _number(z)
    h_prev, h = 1.0 + 0 * z, z
    if n == 0:
        return h_prev
    for k in range(1, n):
        h_prev, h = h, z * h - k * h_prev
        if not _is_finite(h):
            raise RangeError(f"He_{k + 1}({z}) overflows double precision", index=k + 1)
    return h


def pochhammer(a, k: int):
    """Rising factorial (a)_k = a (a+1) ... (a+k-1), with (a)_0 = 1."""
    _check_order(k)
    out = 1.0
    for j in range(k):
        out *= a + j
    return out


def _nonpositive_integer(v) -> bool:
    if isinstance(v, complex):
        if v.imag != 0:
            return False
        v = v.real
    return float(v) <= 0 and float(v) == math.floor(float(v))


def kummer_m(a, c, z, *, rtol: float = KUMMER_RTOL, max_terms: int = KUMMER_MAX_TERMS):
    """Confluent hypergeometric function M(a, c; z) = 1F1(a; c; z).

    For a = -n the exact degree-n polynomial is returned.  Otherwise the
    power series is summed until the geometric tail bound falls below
    ``rtol`` times the largest partial-sum magnitude seen.

    Raises:
        DomainError: if c is a nonpositive integer.
        SeriesError: if the series has not converged after ``max_terms``.
    """
    if _nonpositive_integer(c):
        raise DomainError(f"Kummer M undefined for c = {c}")
    z = _number(z)
    term = 1.0 + 0 * z
    total = term
    if _nonpositive_integer(a):
        for k in range(int(-round(float(a)))):
            term = term * (a + k) / ((c + k) * (k + 1)) * z
            total = total + term
        return total
    scale = abs(total)
    for k in range(max_terms):
        ratio = (a + k) / ((c + k) * (k + 1)) * z
        term = term * ratio
        total = total + term
        if not _is_finite(total):
            raise RangeError(f"M({a}, {c}; {z}) overflows")
        scale = max(scale, abs(total))
        r = abs((a + k + 1) / ((c + k + 1) * (k + 2)) * z)
        if r < 1 and abs(term) * r / (1 - r) <= rtol * scale:
            return total
    raise SeriesError(f"M({a}, {c}; {z}) did not converge in {max_terms} terms")


def hyp3f2_unit(a1, a2, a3, b1, b2):
    """Terminating 3F2(a1, a2, a3; b1, b2; 1) with a3 a nonpositive integer."""
    if not _nonpositive_integer(a3):
        raise DomainError(f"3F2 at unit argument requires a terminating a3 <= 0, got {a3}")
    if _nonpositive_integer(b1) or _nonpositive_integer(b2):
        raise DomainError(f"3F2 lower parameters must avoid nonpositive integers: {b1}, {b2}")
    term = 1.0
    total = 1.0
    for k in range(int(-round(float(a3)))):
        term *= (a1 + k) * (a2 + k) * (a3 + k) / ((b1 + k) * (b2 + k) * (k + 1))
        total += term
    return total


def laguerre_assoc(n: int, k: int, x):
    """Associated Laguerre polynomial L_n^k(x).

    (m+1) L_{m+1} = (2m+1+k-x) L_m - (m+k) L_{m-1}, L_0 = 1, L_1 = 1+k-x.
    """
    _check_order(n)
    _check_order(k)
    x = _number(x)
    l_prev, l = 1.0 + 0 * x, 1.0 + k - x
    if n == 0:
        return l_prev
    for m in range(1, n):
        l_prev, l = l, ((2 * m + 1 + k - x) * l - (m + k) * l_prev) / (m + 1)
        if not _is_finite(l):
            raise RangeError(f"L_{m + 1}^{k}({x}) overflows", index=m + 1)
    return l


def laguerre_normalized(n_max: int, k: int, x) -> np.ndarray:
    """Normalized Laguerre functions sqrt(n!/(n+k)!) x^{k/2} e^{-x/2} L_n^k(x).

    Returns an array of shape ``(n_max + 1,) + np.shape(x)`` for x >= 0.  The
    values stay bounded by one in magnitude, so no overflow occurs at large
    orders where the bare polynomials would.
    """
    _check_order(n_max)
    _check_order(k)
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("normalized Laguerre functions need x >= 0")
    out = np.empty((n_max + 1,) + x.shape)
    with np.errstate(divide="ignore"):
        log_x = np.log(x)
    if k == 0:
        out[0] = np.exp(-x / 2)
    else:
        out[0] = np.where(x > 0, np.exp(0.5 * k * log_x - x / 2 - 0.5 * math.lgamma(k + 1)), 0.0)
    if n_max >= 1:
        out[1] = (1 + k - x) * out[0] / math.sqrt(k + 1)
    for m in range(1, n_max):
        out[m + 1] = ((2 * m + 1 + k - x) * out[m] - math.sqrt(m * (m + k)) * out[m - 1]) / math.sqrt(
            (m + 1) * (m + k + 1)
        )
    return out
