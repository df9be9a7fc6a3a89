"""Generic three-term recurrence machinery.

Two recurrence forms appear here:

* the monic form ``p_{n+1} = (x - c_n) p_n - lambda_n p_{n-1}`` used to
  generate sequences (:func:`run_recurrence`), their second solutions, and
  the Casorati determinant;
* the general form ``a_n f_{n+1} + b_n f_n + d_n f_{n-1} = 0`` used by the
  comparison method, which pairs an unknown recurrence with a solved one
  through a gauge factor ``f_n = h_n F_n``.

Coefficients are plain callables ``index -> value`` so that a recurrence can
be extended to any order without preallocating tables.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError, PoleError, RangeError

Coefficient = Callable[[int], complex]

COMPATIBILITY_RTOL = 1e-10
GAUGE_RTOL = 1e-12
_POLE_RTOL = 64 * np.finfo(float).eps


@dataclass(frozen=True)
class RecurrenceSpec:
    """Coefficients (c_n, lambda_n) of p_{n+1} = (x - c_n) p_n - lambda_n p_{n-1}."""

    c: Coefficient
    lam: Coefficient
    label: str = ""

    @classmethod
    def hermite(cls) -> "RecurrenceSpec":
        """H_{n+1} = 2z H_n - 2n H_{n-1}; evaluate with x = 2z."""
        return cls(c=lambda n: 0.0, lam=lambda n: 2.0 * n, label="hermite")

    @classmethod
    def squeezing(cls, xi) -> "RecurrenceSpec":
        """P_{n+1} = alpha P_n - xi n P_{n-1}; evaluate with x = alpha."""
        xi = complex(xi)
        return cls(c=lambda n: 0.0, lam=lambda n: xi * n, label=f"squeezing(xi={xi})")


@dataclass(frozen=True, eq=False)
class RecurrenceSequence:
    values: np.ndarray
    spec: RecurrenceSpec
    x: complex
    initial: tuple = field(default=(1.0, 0.0))

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n):
        return self.values[n]

    def __len__(self):
        return len(self.values)

    def replay_residual(self) -> float:
        """Largest relative defect of the defining recurrence over interior indices."""
        v = self.values
        worst = 0.0
        for n in range(1, self.n_max):
            lhs = v[n + 1]
            a = (self.x - self.spec.c(n)) * v[n]
            b = self.spec.lam(n) * v[n - 1]
            scale = max(abs(a), abs(b), abs(lhs))
            if scale > 0:
                worst = max(worst, abs(lhs - (a - b)) / scale)
        return worst


def run_recurrence(spec: RecurrenceSpec, x, p0, p1, n_max: int) -> RecurrenceSequence:
    """Run the monic recurrence forward from the pair (p0, p1) up to n_max."""
    if n_max < 1:
        raise DomainError(f"n_max must be at least 1, got {n_max}")
    x = complex(x)
    values = np.zeros(n_max + 1, dtype=complex)
    values[0], values[1] = p0, p1
    with np.errstate(over="ignore", invalid="ignore"):
        for n in range(1, n_max):
            values[n + 1] = (x - spec.c(n)) * values[n] - spec.lam(n) * values[n - 1]
            if not cmath.isfinite(values[n + 1]):
                raise RangeError(f"recurrence overflows at index {n + 1}", index=n + 1)
    return RecurrenceSequence(values=values, spec=spec, x=x, initial=(complex(p0), complex(p1)))


def associated_sequence(spec: RecurrenceSpec, x, n_max: int) -> RecurrenceSequence:
    """Second solution g_n of the same recurrence with g_0 = 0, g_1 = 1."""
    return run_recurrence(spec, x, 0.0, 1.0, n_max)


def numerator_via_order_reduction(p: RecurrenceSequence, d0, d1) -> RecurrenceSequence:
    """Second solution built from a first one by reduction of order.

    g_{n+1} / p_{n+1} = d0 + d1 * sum_{m<=n} R(m) / (p_m p_{m+1}), g_0 = 0,
    with R(m) = lambda_1 ... lambda_m (R(0) = 1).  With d0 = 0 and
    d1 = p_0 this reproduces the sequence started from (0, 1).

    Raises:
        PoleError: if some p_m in range vanishes (to round-off); the index is
            carried on the exception.
    """
    v = p.values
    spec = p.spec
    for m in range(len(v)):
        scale = abs(v[m])
        if m >= 2:
            scale = max(abs((p.x - spec.c(m - 1)) * v[m - 1]), abs(spec.lam(m - 1) * v[m - 2]))
        if v[m] == 0 or abs(v[m]) <= _POLE_RTOL * scale:
            raise PoleError(f"first solution vanishes at index {m}", index=m)
    g = np.zeros_like(v)
    running = 0.0 + 0.0j
    r = 1.0 + 0.0j
    for m in range(p.n_max):
        if m > 0:
            r *= spec.lam(m)
        running += r / (v[m] * v[m + 1])
        g[m + 1] = v[m + 1] * (d0 + d1 * running)
    return RecurrenceSequence(values=g, spec=spec, x=p.x, initial=(0j, complex(g[1])))


def casorati(p: RecurrenceSequence, g: RecurrenceSequence, n: int):
    """Casorati determinant p_n g_{n+1} - g_n p_{n+1}."""
    if p.spec is not g.spec and p.spec != g.spec:
        raise DomainError("Casorati function needs two solutions of the same recurrence")
    if p.x != g.x:
        raise DomainError(f"sequences evaluated at different points: {p.x} vs {g.x}")
    if n + 1 > min(p.n_max, g.n_max):
        raise DomainError(f"index {n} + 1 exceeds the computed range")
    return p[n] * g[n + 1] - g[n] * p[n + 1]


# ---------------------------------------------------------------------------
# comparison method


class Compatibility:
    """Outcome of :func:`compatibility_check`; truthy iff the pairing works."""

    def __init__(self, ok: bool, worst_residual: float, reason: str | None = None):
        self.ok = ok
        self.worst_residual = worst_residual
        self.reason = reason

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return f"Compatibility(ok={self.ok}, worst_residual={self.worst_residual:.3e}, reason={self.reason!r})"


def compatibility_check(a, b, d, A, B, D, n_max: int, *, n_min: int = 0,
                        rtol: float = COMPATIBILITY_RTOL) -> Compatibility:
    """Test whether f_n = h_n F_n can map the (A, B, D) recurrence onto (a, b, d).

    The condition is A_n D_{n+1} b_n b_{n+1} / (B_n B_{n+1} a_n d_{n+1}) = 1
    for every n_min <= n <= n_max.
    """
    worst = 0.0
    for n in range(n_min, n_max + 1):
        den = B(n) * B(n + 1) * a(n) * d(n + 1)
        if den == 0:
            return Compatibility(False, float("inf"), f"zero denominator at n={n}")
        ratio = A(n) * D(n + 1) * b(n) * b(n + 1) / den
        worst = max(worst, abs(ratio - 1))
    if worst < rtol:
        return Compatibility(True, worst)
    return Compatibility(False, worst, f"compatibility ratio deviates from 1 by {worst:.3e}")


def comparison_gauge(a, b, d, A, B, D, h0, n: int):
    """Gauge factor h_n = h_0 prod_{k<n} A_k b_k / (B_k a_k).

    The second route prod_{k<n} B_{k+1} d_{k+1} / (D_{k+1} b_{k+1}) is evaluated
    too; a relative disagreement above 1e-12 means the coefficient sets are
    not compatible and raises :class:`DomainError`.
    """
    first = complex(h0)
    second = complex(h0)
    for k in range(n):
        den1 = B(k) * a(k)
        den2 = D(k + 1) * b(k + 1)
        if den1 == 0 or den2 == 0:
            raise DomainError(f"zero denominator coefficient at k={k}")
        first *= A(k) * b(k) / den1
        second *= B(k + 1) * d(k + 1) / den2
    scale = max(abs(first), abs(second))
    if scale > 0 and abs(first - second) > GAUGE_RTOL * scale:
        raise DomainError(f"gauge routes disagree at n={n}: {first} vs {second}")
    return first


def squeezing_coefficients(alpha, xi):
    """(a, b, d) for P_{n+1} - alpha P_n + xi n P_{n-1} = 0."""
    alpha, xi = complex(alpha), complex(xi)
    return (lambda n: 1.0), (lambda n: -alpha), (lambda n: xi * n)


def hermite_coefficients(z):
    """(A, B, D) for H_{n+1}(z) - 2z H_n(z) + 2n H_{n-1}(z) = 0."""
    z = complex(z)
    return (lambda n: 1.0), (lambda n: -2 * z), (lambda n: 2.0 * n)


def kummer_coefficients(c, z):
    """(A, B, D) for F_n = M(-n, c; z), read off from the contiguous relation
    (c - a) M(a-1) + (2a - c + z) M(a) - a M(a+1) = 0 at a = -n."""
    z = complex(z)
    return (lambda n: c + n), (lambda n: z - 2 * n - c), (lambda n: float(n))


def even_decoupled_coefficients(alpha, xi):
    """(a, b, d) of the recurrence obeyed by f_n = P_{2n} (valid for n >= 1)."""
    alpha, xi = complex(alpha), complex(xi)
    return ((lambda n: 1.0), (lambda n: 4 * xi * n + xi - alpha ** 2),
            (lambda n: 4 * xi ** 2 * n * (n - 0.5)))


def odd_decoupled_coefficients(alpha, xi):
    """(a, b, d) of the recurrence obeyed by f_n = P_{2n+1} (valid for n >= 1)."""
    alpha, xi = complex(alpha), complex(xi)
    return ((lambda n: 1.0), (lambda n: 4 * xi * n + 3 * xi - alpha ** 2),
            (lambda n: 4 * xi ** 2 * n * (n + 0.5)))
