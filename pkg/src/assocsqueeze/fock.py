"""Truncated Fock-space linear algebra.

States live on span{|0>, ..., |n_cut>}.  Every constructor computes the
amplitudes it needs, measures how much probability the cutoff discards
(``defect``), renormalizes, and refuses to return a state whose defect
exceeds the requested budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from . import specfun
from .errors import DomainError, TruncationError

DEFAULT_BUDGET = 1e-12
NORM_TOL = 1e-10
MAX_AUTO_CUTOFF = 4096
_SERIES_TOL = 1e-16


@dataclass(frozen=True, eq=False)
class StateVector:
    """Amplitudes of a pure state in the Fock basis, index = photon number."""

    amp: np.ndarray
    n_cut: int
    norm_flag: bool = True
    defect: float = 0.0
    label: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        amp = np.array(self.amp, dtype=complex)
        if amp.ndim != 1 or len(amp) != self.n_cut + 1:
            raise DomainError(f"amplitude vector of length {len(amp)} does not match n_cut={self.n_cut}")
        amp.setflags(write=False)
        object.__setattr__(self, "amp", amp)
        if self.norm_flag and abs(self.norm2() - 1) > NORM_TOL:
            raise DomainError(f"state flagged normalized has squared norm {self.norm2()!r}")

    def norm2(self) -> float:
        return float(np.vdot(self.amp, self.amp).real)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amp) ** 2

    def inner(self, other: "StateVector") -> complex:
        """<self|other>."""
        if other.n_cut != self.n_cut:
            raise DomainError(f"cutoff mismatch: {self.n_cut} vs {other.n_cut}")
        return complex(np.vdot(self.amp, other.amp))

    def normalized(self) -> "StateVector":
        nrm = math.sqrt(self.norm2())
        if nrm == 0:
            raise DomainError("cannot normalize the zero vector")
        return StateVector(self.amp / nrm, self.n_cut, True, self.defect, self.label, dict(self.meta))

    def padded(self, n_cut: int) -> "StateVector":
        """Same state embedded in a larger cutoff (zeros appended)."""
        if n_cut < self.n_cut:
            raise DomainError("padding cannot shrink a state")
        amp = np.zeros(n_cut + 1, dtype=complex)
        amp[: self.n_cut + 1] = self.amp
        return StateVector(amp, n_cut, self.norm_flag, self.defect, self.label, dict(self.meta))

    def to_text(self) -> str:
        """Plain-text rows ``n, re, im`` after a ``#`` header with cutoff and defect."""
        lines = [f"# n_cut={self.n_cut} defect={float(self.defect)!r} label={self.label}"]
        for n, c in enumerate(self.amp):
            lines.append(f"{n}, {float(c.real)!r}, {float(c.imag)!r}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "StateVector":
        header, *rows = [ln for ln in text.splitlines() if ln.strip()]
        fields = dict(item.split("=", 1) for item in header.lstrip("# ").split(" ", 2))
        n_cut = int(fields["n_cut"])
        amp = np.zeros(n_cut + 1, dtype=complex)
        for row in rows:
            n, re, im = (s.strip() for s in row.split(","))
            amp[int(n)] = complex(float(re), float(im))
        norm_ok = abs(np.vdot(amp, amp).real - 1) <= NORM_TOL
        return cls(amp, n_cut, norm_ok, float(fields["defect"]), fields.get("label", ""))


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    entries: np.ndarray
    label: str = ""

    @property
    def n_cut(self) -> int:
        return self.entries.shape[0] - 1

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            return OperatorMatrix(self.entries @ other.entries, f"{self.label}{other.label}")
        if isinstance(other, StateVector):
            return self.apply(other)
        return NotImplemented

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return OperatorMatrix(self.entries + other.entries, f"({self.label}+{other.label})")

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return OperatorMatrix(self.entries - other.entries, f"({self.label}-{other.label})")

    def __rmul__(self, scalar) -> "OperatorMatrix":
        return OperatorMatrix(scalar * self.entries, f"{scalar}*{self.label}")

    def dagger(self) -> "OperatorMatrix":
        return OperatorMatrix(self.entries.conj().T, f"{self.label}^+")

    def apply(self, state: StateVector) -> StateVector:
        if state.n_cut != self.n_cut:
            raise DomainError(f"operator on n_cut={self.n_cut} applied to state with n_cut={state.n_cut}")
        out = self.entries @ state.amp
        return StateVector(out, state.n_cut, False, state.defect, f"{self.label}|{state.label}>")


def basis_state(n: int, n_cut: int) -> StateVector:
    if not 0 <= n <= n_cut:
        raise DomainError(f"|{n}> does not fit below cutoff {n_cut}")
    amp = np.zeros(n_cut + 1, dtype=complex)
    amp[n] = 1.0
    return StateVector(amp, n_cut, label=f"fock:{n}")


def ladder_matrices(n_cut: int):
    """Annihilation a, creation a^+ and number a^+ a on the truncated space."""
    if n_cut < 1:
        raise DomainError("ladder operators need n_cut >= 1")
    a = np.diag(np.sqrt(np.arange(1, n_cut + 1, dtype=float)), 1).astype(complex)
    return (
        OperatorMatrix(a, "a"),
        OperatorMatrix(a.conj().T.copy(), "a^+"),
        OperatorMatrix(np.diag(np.arange(n_cut + 1, dtype=float)).astype(complex), "n"),
    )


def distorted_ladder_matrices(n_cut: int):
    """Distorted pair a_2, a_2^+: like a, a^+ but with a_2|1> = 0 and a_2^+|0> = 0."""
    if n_cut < 2:
        raise DomainError("distorted ladder operators need n_cut >= 2")
    a, _, _ = ladder_matrices(n_cut)
    a2 = a.entries.copy()
    a2[0, 1] = 0.0
    return OperatorMatrix(a2, "a2"), OperatorMatrix(a2.conj().T.copy(), "a2^+")


def photon_number_cutoff(mean: float, width: float = 10.0, floor: int = 8) -> int:
    """Cutoff heuristic mean + width * sqrt(mean + 1) rounded up."""
    return max(floor, int(math.ceil(mean + width * math.sqrt(mean + 1.0))) + 2)


def build_state(raw: Callable[[int], np.ndarray], n_cut: int | None, *, label: str,
                auto_cut: int, closed_norm2: float | None = None,
                budget: float = DEFAULT_BUDGET, meta: dict | None = None) -> StateVector:
    """Truncate, measure the discarded mass, renormalize.

    ``raw(n_max)`` returns unnormalized amplitudes 0..n_max.  When the exact
    squared norm is known it is passed as ``closed_norm2`` and the defect is
    exact; otherwise the tail is measured on a longer guard vector.  With
    ``n_cut=None`` the cutoff starts at ``auto_cut`` and doubles until the
    defect fits the budget.
    """
    auto = n_cut is None
    cut = auto_cut if auto else int(n_cut)
    if cut < 1:
        raise DomainError(f"cutoff must be at least 1, got {cut}")
    while True:
        if closed_norm2 is None:
            full = raw(cut + max(24, cut // 2))
            total = float(np.sum(np.abs(full) ** 2))
            kept = full[: cut + 1]
            defect = float(np.sum(np.abs(full[cut + 1:]) ** 2)) / total
        else:
            kept = raw(cut)
            defect = max(0.0, 1.0 - float(np.sum(np.abs(kept) ** 2)) / closed_norm2)
        if defect <= budget:
            break
        if not auto or cut >= MAX_AUTO_CUTOFF:
            raise TruncationError(
                f"{label}: cutoff {cut} discards probability {defect:.3e} > budget {budget:.1e}",
                defect=defect,
            )
        cut *= 2
    info = dict(meta or {})
    numeric_norm2 = float(np.sum(np.abs(kept) ** 2))
    info["numeric_norm2"] = numeric_norm2
    if closed_norm2 is not None:
        info["closed_norm2"] = closed_norm2
    return StateVector(kept / math.sqrt(numeric_norm2), cut, True, defect, label, info)


def _coherent_raw(alpha):
    alpha = complex(alpha)

    def raw(n_max):
        q = np.empty(n_max + 1, dtype=complex)
        q[0] = 1.0
        for n in range(n_max):
            q[n + 1] = q[n] * alpha / math.sqrt(n + 1)
        return q

    return raw


def coherent_state(alpha, n_cut: int | None = None, *, budget: float = DEFAULT_BUDGET) -> StateVector:
    """Glauber state e^{-|alpha|^2/2} sum alpha^n / sqrt(n!) |n>.

    A cutoff of about |alpha|^2 + 10 sqrt(|alpha|^2 + 1) keeps the discarded
    Poisson tail below 1e-12; ``n_cut=None`` picks it automatically.
    """
    alpha = complex(alpha)
    m = abs(alpha) ** 2
    return build_state(_coherent_raw(alpha), n_cut, label=f"glauber(alpha={alpha})",
                       auto_cut=photon_number_cutoff(m), closed_norm2=math.exp(m), budget=budget)


def photon_added_coherent(alpha, n_cut: int | None = None, *, photons: int = 1,
                          budget: float = DEFAULT_BUDGET) -> StateVector:
    """(a^+)^m |alpha>, normalized; m = ``photons`` (one by default).

    For m = 1 the amplitudes are e^{-|alpha|^2/2} sqrt((n+1)/n!) alpha^n / sqrt(1+|alpha|^2)
    on |n+1>.  The squared norm of (a^+)^m |alpha> is m! L_m(-|alpha|^2).
    """
    if photons < 0:
        raise DomainError("number of added photons must be nonnegative")
    alpha = complex(alpha)
    m = abs(alpha) ** 2
    coh = _coherent_raw(alpha)

    def raw(n_max):
        out = np.zeros(n_max + 1, dtype=complex)
        if n_max >= photons:
            base = coh(n_max - photons)
            k = np.arange(n_max - photons + 1)
            rising = np.exp(0.5 * (np.array([math.lgamma(j + photons + 1) - math.lgamma(j + 1) for j in k])))
            out[photons:] = base * rising
        return out

    closed = math.exp(m) * math.factorial(photons) * specfun.laguerre_assoc(photons, 0, -m)
    return build_state(raw, n_cut, label=f"added:{photons}(alpha={alpha})",
                       auto_cut=photon_number_cutoff(m + photons) + photons,
                       closed_norm2=closed, budget=budget)


def _series_action(vec: np.ndarray, step: Callable[[np.ndarray], np.ndarray], coef: complex) -> np.ndarray:
    """exp(coef * X) vec by Taylor series, X supplied as its action ``step``."""
    total = vec.copy()
    term = vec.copy()
    k = 0
    while True:
        k += 1
        term = coef / k * step(term)
        total += term
        tn = np.linalg.norm(term)
        if tn == 0 or tn < _SERIES_TOL * np.linalg.norm(total):
            return total
        if k > 10 * len(vec) + 100:
            raise TruncationError("exponential series did not settle")


def _lower2(v):
    out = np.zeros_like(v)
    m = np.arange(len(v) - 2)
    out[:-2] = np.sqrt((m + 1.0) * (m + 2.0)) * v[2:]
    return out


def _raise2(v):
    out = np.zeros_like(v)
    m = np.arange(2, len(v))
    out[2:] = np.sqrt(m * (m - 1.0)) * v[:-2]
    return out


def squeeze_apply(xi, state: StateVector, *, budget: float = 1e-10) -> StateVector:
    """Apply the squeeze operator in disentangled order.

    S(xi) = exp(-(xi/2) a^+2) (1-|xi|^2)^{(a a^+ + a^+ a)/4} exp((xi*/2) a^2).
    The outer factors are Taylor series of matrix actions; the middle one is
    diagonal, (1-|xi|^2)^{(2n+1)/4}.  Components at or below the cutoff are
    exact, so the lost norm is exactly the mass pushed past the cutoff.
    """
    xi = complex(xi)
    if abs(xi) >= 1:
        raise DomainError(f"squeeze parameter needs |xi| < 1, got {xi}")
    v = state.amp.copy()
    v = _series_action(v, _lower2, np.conj(xi) / 2)
    n = np.arange(len(v))
    v = v * (1 - abs(xi) ** 2) ** ((2 * n + 1) / 4)
    v = _series_action(v, _raise2, -xi / 2)
    out_norm2 = float(np.vdot(v, v).real)
    defect = max(0.0, 1.0 - out_norm2 / state.norm2())
    if defect > budget:
        raise TruncationError(
            f"squeezing with xi={xi} pushes {defect:.3e} of the norm past n_cut={state.n_cut}",
            defect=defect,
        )
    return StateVector(v / math.sqrt(out_norm2), state.n_cut, True, state.defect + defect,
                       f"S({xi}){state.label}", {"squeeze_defect": defect})


def _require_normalized(state: StateVector):
    if abs(state.norm2() - 1) > NORM_TOL:
        raise DomainError(f"expected a normalized state, squared norm is {state.norm2()!r}")


def expectation(op: OperatorMatrix, state: StateVector) -> complex:
    """<psi| op |psi> for a normalized state."""
    _require_normalized(state)
    if op.n_cut != state.n_cut:
        raise DomainError(f"operator on n_cut={op.n_cut} vs state on n_cut={state.n_cut}")
    return complex(np.vdot(state.amp, op.entries @ state.amp))


class QuadratureStats(NamedTuple):
    var_x: float
    var_p: float
    cov_xp: float


def _ladder_pair(n_cut, distorted):
    if distorted:
        return distorted_ladder_matrices(n_cut)
    a, ad, _ = ladder_matrices(n_cut)
    return a, ad


def quadrature_stats(state: StateVector, distorted: bool = False) -> QuadratureStats:
    """Variances of x = (A^+ + A)/sqrt 2, p = i(A^+ - A)/sqrt 2 and their
    symmetrized covariance, with A = a or the distorted a_2.

    The state is padded by two levels first so that A A^+ does not see the
    truncation edge.
    """
    _require_normalized(state)
    big = state.padded(state.n_cut + 2)
    A, Ad = _ladder_pair(big.n_cut, distorted)
    x = (1 / math.sqrt(2)) * (Ad + A)
    p = (1j / math.sqrt(2)) * (Ad - A)
    psi = big.amp
    xpsi = x.entries @ psi
    ppsi = p.entries @ psi
    mx = np.vdot(psi, xpsi).real
    mp = np.vdot(psi, ppsi).real
    var_x = np.vdot(xpsi, xpsi).real - mx ** 2
    var_p = np.vdot(ppsi, ppsi).real - mp ** 2
    # <xp + px>/2 = Re <x psi | p psi>
    cov = np.vdot(xpsi, ppsi).real - mx * mp
    return QuadratureStats(float(var_x), float(var_p), float(cov))


def commutator_mean(state: StateVector, distorted: bool = False) -> float:
    """<[A, A^+]>, i.e. <[x, p]>/i for the corresponding quadratures."""
    _require_normalized(state)
    big = state.padded(state.n_cut + 2)
    A, Ad = _ladder_pair(big.n_cut, distorted)
    psi = big.amp
    apsi = A.entries @ psi
    adpsi = Ad.entries @ psi
    return float(np.vdot(adpsi, adpsi).real - np.vdot(apsi, apsi).real)


def schrodinger_gap(state: StateVector, distorted: bool = False) -> float:
    """var_x var_p - (cov^2 + |<[x,p]>|^2 / 4); zero for minimum-uncertainty states."""
    s = quadrature_stats(state, distorted)
    c = commutator_mean(state, distorted)
    return s.var_x * s.var_p - (s.cov_xp ** 2 + 0.25 * c ** 2)
