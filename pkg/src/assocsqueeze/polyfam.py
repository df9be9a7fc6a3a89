"""The two solution families of P_{n+2} - alpha P_{n+1} + (n+1) xi P_n = 0.

``plus``  -- two-parametric Hermite polynomials, started from (P_0, P_1) = (1, alpha);
``minus`` -- associated Hermite polynomials, started from (P_0, P_1) = (0, 1).

The forward recurrence is the authoritative route: it is regular for every
(alpha, xi), including xi = 0 and points where some H_k(alpha/sqrt(2 xi))
vanishes.  The closed forms below exist to validate it.

Branch convention: wherever xi^{1/2} appears it is ``cmath.sqrt(xi / 2)``
(principal branch).  The families themselves are branch independent; the
convention only matters for intermediate quantities such as y.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from . import specfun
from .errors import DomainError, PoleError
from .recurrence import RecurrenceSpec, associated_sequence, run_recurrence

PLUS = "plus"
MINUS = "minus"
_POLE_RTOL = 64 * np.finfo(float).eps


def _sign(sign):
    if sign in ("+", PLUS):
        return PLUS
    if sign in ("-", MINUS):
        return MINUS
    raise DomainError(f"family sign must be 'plus' or 'minus', got {sign!r}")


def initial_pair(sign, alpha):
    """(P_0, P_1) of the requested family."""
    return (1.0, complex(alpha)) if _sign(sign) == PLUS else (0.0, 1.0)


def sequence(sign, n_max: int, alpha, xi) -> np.ndarray:
    """P_0 .. P_{n_max} of one family as a complex array."""
    spec = RecurrenceSpec.squeezing(xi)
    if n_max == 0:
        return np.array([initial_pair(sign, alpha)[0]], dtype=complex)
    if _sign(sign) == PLUS:
        seq = run_recurrence(spec, alpha, 1.0, alpha, n_max)
    else:
        seq = associated_sequence(spec, alpha, n_max)
    return seq.values


def p_plus(n: int, alpha, xi) -> complex:
    """P_n(alpha, xi; +) from the recurrence."""
    return complex(sequence(PLUS, n, alpha, xi)[n])


def p_minus(n: int, alpha, xi) -> complex:
    """P_n(alpha, xi; -) from the recurrence; monic of degree n-1 in alpha."""
    return complex(sequence(MINUS, n, alpha, xi)[n])


def amplitude_sequence(sign, n_max: int, alpha, xi) -> np.ndarray:
    """Q_n = P_n / sqrt(n!) for n = 0..n_max.

    Runs the rescaled recurrence
    Q_{n+1} = (alpha Q_n - sqrt(n) xi Q_{n-1}) / sqrt(n+1),
    which stays in range far beyond the order where P_n itself overflows.
    """
    alpha, xi = complex(alpha), complex(xi)
    q = np.zeros(n_max + 1, dtype=complex)
    q[0], q1 = initial_pair(sign, alpha)
    if n_max >= 1:
        q[1] = q1
    for n in range(1, n_max):
        q[n + 1] = (alpha * q[n] - math.sqrt(n) * xi * q[n - 1]) / math.sqrt(n + 1)
    return q


def _half_root(xi):
    xi = complex(xi)
    if xi == 0:
        raise DomainError("closed forms in y = alpha/sqrt(2 xi) need xi != 0")
    return cmath.sqrt(xi / 2)


def p_plus_closed(n: int, alpha, xi) -> complex:
    """(xi/2)^{n/2} H_n(alpha / sqrt(2 xi))."""
    s = _half_root(xi)
    return s ** n * specfun.hermite_phys(n, complex(alpha) / (2 * s))


def _hermite_table(n_max, y):
    """H_0..H_{n_max}(y) with a cancellation-aware zero test on each entry."""
    h = np.zeros(n_max + 1, dtype=complex)
    h[0] = 1.0
    if n_max >= 1:
        h[1] = 2 * y
    for k in range(1, n_max):
        t1, t2 = 2 * y * h[k], 2 * k * h[k - 1]
        h[k + 1] = t1 - t2
    for k in range(n_max + 1):
        scale = abs(h[k]) if k < 2 else max(abs(2 * y * h[k - 1]), abs(2 * (k - 1) * h[k - 2]))
        if h[k] == 0 or abs(h[k]) <= _POLE_RTOL * scale:
            raise PoleError(f"H_{k}(y) vanishes at y = {y}", index=k)
    return h


def p_minus_sum_form(n: int, alpha, xi) -> complex:
    """P_n(alpha, xi; -) from the explicit Hermite quotient sum (n >= 1).

    P_{m+1} = (xi/2)^{m/2} H_{m+1}(y) sum_{k=0}^{m} 2^k k! / (H_k(y) H_{k+1}(y)).

    Raises:
        PoleError: if some H_k(y), k <= n, vanishes; use :func:`p_minus` there.
    """
    if n < 1:
        raise DomainError("the sum form starts at n = 1")
    s = _half_root(xi)
    y = complex(alpha) / (2 * s)
    h = _hermite_table(n, y)
    total = 0j
    weight = 1.0
    for k in range(n):
        if k > 0:
            weight *= 2 * k
        total += weight / (h[k] * h[k + 1])
    return s ** (n - 1) * h[n] * total


def p_minus_hypergeometric(n: int, alpha, xi) -> complex:
    """P_n(alpha, xi; -) from its even/odd terminating 3F2 expansions.

    With w = alpha^2 / (2 xi):

    P_{2m+1} = (3/2)_m (-2xi)^m sum_j w^j (-m)_j / ((3/2)_j j!)
               3F2(1, 1/2, j-m; j+1, j+3/2; 1)
    P_{2m+2} = alpha (m+1) (3/2)_m (-2xi)^m sum_j w^j (-m)_j / ((3/2)_j (j+1)!)
               3F2(1, 1/2, j-m; j+2, j+3/2; 1)
    """
    alpha, xi = complex(alpha), complex(xi)
    if xi == 0:
        raise DomainError("hypergeometric form needs xi != 0")
    if n == 0:
        return 0j
    w = alpha ** 2 / (2 * xi)
    odd = n % 2 == 1
    m = (n - 1) // 2 if odd else (n - 2) // 2
    total = 0j
    for j in range(m + 1):
        if odd:
            coef = specfun.pochhammer(-m, j) / (specfun.pochhammer(1.5, j) * math.factorial(j))
            f = specfun.hyp3f2_unit(1, 0.5, j - m, j + 1, j + 1.5)
        else:
            coef = specfun.pochhammer(-m, j) / (specfun.pochhammer(1.5, j) * math.factorial(j + 1))
            f = specfun.hyp3f2_unit(1, 0.5, j - m, j + 2, j + 1.5)
        total += w ** j * coef * f
    prefactor = specfun.pochhammer(1.5, m) * (-2 * xi) ** m
    if not odd:
        prefactor *= alpha * (m + 1)
    return prefactor * total


def plus_kappas(alpha, xi=None):
    """Branch coefficients (kappa_1, kappa~_1, kappa_2, kappa~_2) of the plus family."""
    return {"kappa1": 1.0, "kappa1_t": 0.0, "kappa2": complex(alpha), "kappa2_t": 0.0}


def minus_kappas(alpha, xi):
    """Branch coefficients fixed by P_0 = 0, P_1 = 1.

    The even subsequence starts from (P_0, P_2) = (0, alpha); with
    M(2, 3/2; -w) = (1/2 - w) M(1, 3/2; -w) + 1/2 this forces
    kappa~_1 = -alpha/xi.  The odd one starts from (P_1, P_3) and is fixed by
    kappa~_2 = 1 together with M(1, 1/2; -w) = 1 - 2w M(1, 3/2; -w).
    """
    alpha, xi = complex(alpha), complex(xi)
    w = alpha ** 2 / (2 * xi)
    m13 = specfun.kummer_m(1, 1.5, -w)
    return {
        "kappa1": alpha / xi * m13,
        "kappa1_t": -alpha / xi,
        "kappa2": alpha ** 2 / xi * m13,
        "kappa2_t": 1.0,
    }


def general_solution(parity: str, n: int, alpha, xi, kappa, kappa_tilde) -> complex:
    """Even (P_{2n}) or odd (P_{2n+1}) member of the general solution.

    even: (-2xi)^n [(1/2)_n kappa M(-n, 1/2; w) + n! kappa~ M(n+1, 3/2; -w)]
    odd:  (-2xi)^n [(3/2)_n kappa M(-n, 3/2; w) + n! kappa~ M(n+1, 1/2; -w)]

    with w = alpha^2 / (2 xi).  The non-terminating branch is an alternating
    series; expect cancellation once |w| grows beyond a few tens.
    """
    alpha, xi = complex(alpha), complex(xi)
    if xi == 0:
        raise DomainError("general solution in Kummer form needs xi != 0")
    w = alpha ** 2 / (2 * xi)
    if parity == "even":
        c_term, c_other = 0.5, 1.5
    elif parity == "odd":
        c_term, c_other = 1.5, 0.5
    else:
        raise DomainError(f"parity must be 'even' or 'odd', got {parity!r}")
    out = 0j
    if kappa != 0:
        out += specfun.pochhammer(c_term, n) * kappa * specfun.kummer_m(-n, c_term, w)
    if kappa_tilde != 0:
        out += math.factorial(n) * kappa_tilde * specfun.kummer_m(n + 1, c_other, -w)
    return (-2 * xi) ** n * out
