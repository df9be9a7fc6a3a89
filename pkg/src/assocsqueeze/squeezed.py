"""State families built from the plus/minus polynomial solutions.

+-------------------+------------------------------------------------+
| family            | amplitudes (before normalization)              |
+===================+================================================+
| glauber           | alpha^n / sqrt(n!)                             |
| squeezed_vacuum   | P_n(0, xi; +) / sqrt(n!)   (even n only)       |
| odd_photon        | P_n(0, xi; -) / sqrt(n!)   (odd n only)        |
| conventional      | P_n(alpha, xi; +) / sqrt(n!)                   |
| associated        | P_n(alpha, xi; -) / sqrt(n!),  amp_0 = 0       |
| distorted_coherent| alpha^{n-1} / sqrt(n!),  n >= 1                |
+-------------------+------------------------------------------------+

The conventional family solves (a + xi a^+)|psi> = alpha|psi>; the minus
families solve the same equation with the distorted pair a_2, a_2^+.
Normalization constants are taken real and positive.  The cutoff actually
used is always the numerically normalized one; closed-form norms are kept in
``state.meta`` for cross-checking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import fock, polyfam
from .errors import DomainError
from .fock import StateVector

FAMILIES = ("glauber", "squeezed_vacuum", "odd_photon", "conventional", "associated", "distorted_coherent")
TAU_REGIME_TOL = 1e-12
_TAIL_LOG = 30.0  # about -ln(1e-13)


def _check_xi(xi) -> complex:
    xi = complex(xi)
    if not abs(xi) < 1:
        raise DomainError(f"xi must satisfy |xi| < 1, got {xi}")
    return xi


def tau(xi):
    """Squeezing classifier tau = |1 - xi| / |1 + xi|.

    regime 'a': tau = 1 (no squeezing, xi = 0 or arg xi = +-pi/2),
    'b': tau < 1 (x squeezed), 'c': tau > 1 (p squeezed).
    """
    xi = _check_xi(xi)
    t = abs(1 - xi) / abs(1 + xi)
    if abs(t - 1) <= TAU_REGIME_TOL:
        return t, "a"
    return t, ("b" if t < 1 else "c")


def auto_cutoff(alpha, xi) -> int:
    """Family-agnostic starting cutoff.

    Mean photon number of the conventional state plus 10 sqrt(mean + 1), plus
    the geometric tail length 30/(-ln|xi|) of the squeezing factor.
    Constructors double it until the measured tail defect fits the budget.
    """
    x = abs(complex(xi))
    mean = mean_photon_plus_closed(alpha, xi)
    geo = 0 if x == 0 else int(math.ceil(_TAIL_LOG / -math.log(x)))
    return fock.photon_number_cutoff(mean) + geo


def _amplitudes(sign, alpha, xi):
    return lambda n_max: polyfam.amplitude_sequence(sign, n_max, alpha, xi)


def mehler_norm2(alpha, xi) -> float:
    """sum_n |P_n(alpha, xi; +)|^2 / n! in closed form (Mehler's formula)."""
    alpha, xi = complex(alpha), _check_xi(xi)
    d = 1 - abs(xi) ** 2
    return d ** -0.5 * math.exp((abs(alpha) ** 2 - (xi * alpha.conjugate() ** 2).real) / d)


def odd_norm2(xi) -> float:
    """sum_n |P_n(0, xi; -)|^2 / n! = arcsin|xi| / (|xi| sqrt(1-|xi|^2)); 1 at xi = 0."""
    r = abs(_check_xi(xi))
    if r == 0:
        return 1.0
    return math.asin(r) / (r * math.sqrt(1 - r * r))


def distorted_norm2(alpha) -> float:
    """sum_{n>=0} |alpha|^{2n} / (n+1)! = (e^{|alpha|^2} - 1) / |alpha|^2; 1 at alpha = 0."""
    m = abs(complex(alpha)) ** 2
    return 1.0 if m == 0 else math.expm1(m) / m


def squeezed_vacuum(xi, n_cut: int | None = None, *, budget: float = fock.DEFAULT_BUDGET) -> StateVector:
    xi = _check_xi(xi)
    return fock.build_state(_amplitudes(polyfam.PLUS, 0, xi), n_cut, label=f"sqvac(xi={xi})",
                            auto_cut=auto_cutoff(0, xi), closed_norm2=mehler_norm2(0, xi), budget=budget,
                            meta={"family": "squeezed_vacuum", "alpha": 0j, "xi": xi})


def odd_photon_squeezed(xi, n_cut: int | None = None, *, budget: float = fock.DEFAULT_BUDGET) -> StateVector:
    """Odd-photon squeezed state; tends to |1> as xi -> 0."""
    xi = _check_xi(xi)
    return fock.build_state(_amplitudes(polyfam.MINUS, 0, xi), n_cut, label=f"oddsq(xi={xi})",
                            auto_cut=auto_cutoff(0, xi) + 1, closed_norm2=odd_norm2(xi), budget=budget,
                            meta={"family": "odd_photon", "alpha": 0j, "xi": xi})


def conventional_squeezed(alpha, xi, n_cut: int | None = None, *,
                          budget: float = fock.DEFAULT_BUDGET) -> StateVector:
    """Conventional squeezed state; ``meta`` holds both the Mehler and the summed norm."""
    alpha, xi = complex(alpha), _check_xi(xi)
    return fock.build_state(_amplitudes(polyfam.PLUS, alpha, xi), n_cut,
                            label=f"squeezed(alpha={alpha},xi={xi})", auto_cut=auto_cutoff(alpha, xi),
                            closed_norm2=mehler_norm2(alpha, xi), budget=budget,
                            meta={"family": "conventional", "alpha": alpha, "xi": xi})


def associated_squeezed(alpha, xi, n_cut: int | None = None, *,
                        budget: float = fock.DEFAULT_BUDGET) -> StateVector:
    """Associated squeezed state.  No closed norm exists off the boundaries, so
    the defect is measured on a guard extension beyond the cutoff."""
    alpha, xi = complex(alpha), _check_xi(xi)
    closed = None
    if alpha == 0:
        closed = odd_norm2(xi)
    elif xi == 0:
        closed = distorted_norm2(alpha)
    return fock.build_state(_amplitudes(polyfam.MINUS, alpha, xi), n_cut,
                            label=f"assoc(alpha={alpha},xi={xi})", auto_cut=auto_cutoff(alpha, xi) + 1,
                            closed_norm2=closed, budget=budget,
                            meta={"family": "associated", "alpha": alpha, "xi": xi})


def distorted_raw(alpha):
    """Unnormalized distorted coherent amplitudes alpha^{n-1}/sqrt(n!), n >= 1."""
    alpha = complex(alpha)

    def raw(n_max):
        q = np.zeros(n_max + 1, dtype=complex)
        if n_max >= 1:
            q[1] = 1.0
        for n in range(1, n_max):
            q[n + 1] = q[n] * alpha / math.sqrt(n + 1)
        return q

    return raw


def distorted_coherent(alpha, n_cut: int | None = None, *,
                       budget: float = fock.DEFAULT_BUDGET) -> StateVector:
    """Distorted coherent state; |1> at alpha = 0."""
    alpha = complex(alpha)
    return fock.build_state(distorted_raw(alpha), n_cut, label=f"distorted(alpha={alpha})",
                            auto_cut=fock.photon_number_cutoff(abs(alpha) ** 2) + 1,
                            closed_norm2=distorted_norm2(alpha), budget=budget,
                            meta={"family": "distorted_coherent", "alpha": alpha, "xi": 0j})


@dataclass(frozen=True)
class SqueezeParams:
    alpha: complex
    xi: complex
    family: str

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "xi", complex(self.xi))
        if self.family != "glauber":
            _check_xi(self.xi)

    @property
    def distorted(self) -> bool:
        """Whether the family is minimal for the distorted quadratures."""
        return self.family in ("odd_photon", "associated", "distorted_coherent")

    def build(self, n_cut: int | None = None, *, budget: float = fock.DEFAULT_BUDGET) -> StateVector:
        f = self.family
        if f == "glauber":
            return fock.coherent_state(self.alpha, n_cut, budget=budget)
        if f == "squeezed_vacuum":
            return squeezed_vacuum(self.xi, n_cut, budget=budget)
        if f == "odd_photon":
            return odd_photon_squeezed(self.xi, n_cut, budget=budget)
        if f == "conventional":
            return conventional_squeezed(self.alpha, self.xi, n_cut, budget=budget)
        if f == "associated":
            return associated_squeezed(self.alpha, self.xi, n_cut, budget=budget)
        return distorted_coherent(self.alpha, n_cut, budget=budget)


def mean_photon_plus_closed(alpha, xi) -> float:
    """Closed mean photon number of the conventional family."""
    alpha, xi = complex(alpha), _check_xi(xi)
    r2, a2 = abs(xi) ** 2, abs(alpha) ** 2
    num = r2 * (1 - r2) + a2 * (1 + r2) - alpha ** 2 * xi.conjugate() - alpha.conjugate() ** 2 * xi
    return float(num.real / (1 - r2) ** 2)


def mean_photon_minus_alpha0(xi) -> float:
    """Mean photon number of the associated family on the alpha = 0 boundary."""
    r = abs(_check_xi(xi))
    if r == 0:
        return 1.0
    return r / (math.asin(r) * math.sqrt(1 - r * r)) + r * r / (1 - r * r)


def mean_photon_minus_xi0(alpha) -> float:
    """Mean photon number of the distorted coherent state, |alpha|^2 / (1 - e^{-|alpha|^2})."""
    m = abs(complex(alpha)) ** 2
    if m == 0:
        return 1.0
    return m / -math.expm1(-m)


def mean_photon_minus_boundaries(*, alpha=None, xi=None) -> float:
    """Boundary means of the associated family: pass ``xi`` for the alpha = 0
    edge or ``alpha`` for the xi = 0 edge (exactly one of them)."""
    if (alpha is None) == (xi is None):
        raise DomainError("give exactly one of alpha (xi = 0 edge) or xi (alpha = 0 edge)")
    return mean_photon_minus_alpha0(xi) if alpha is None else mean_photon_minus_xi0(alpha)


def photon_probabilities(state: StateVector) -> np.ndarray:
    fock._require_normalized(state)
    return state.probabilities()


def mean_photon_number(state: StateVector) -> float:
    p = photon_probabilities(state)
    return float(np.dot(np.arange(len(p)), p))


def eigen_residual(state: StateVector, alpha, xi, distorted: bool = False) -> float:
    """|| (A + xi A^+)|psi> - alpha|psi> || with A = a (or a_2), top two rows masked.

    Truncating A^+ corrupts the last rows only; they are dropped before the
    norm is taken.
    """
    fock._require_normalized(state)
    if state.n_cut < 3:
        raise DomainError("eigen residual needs n_cut >= 3")
    A, Ad = fock._ladder_pair(state.n_cut, distorted)
    v = A.entries @ state.amp + complex(xi) * (Ad.entries @ state.amp) - complex(alpha) * state.amp
    return float(np.linalg.norm(v[:-2]))


def ladder_generator_action(alpha, n_cut: int, step: float = 1e-5) -> np.ndarray:
    """[1 + alpha d/dalpha] applied to the distorted coherent state.

    The derivative acts on the series sum alpha^n/sqrt((n+1)!) |n+1> with the
    normalization frozen at its value at ``alpha``, and is taken by a central
    difference along real alpha (the series is holomorphic, so this is
    d/dalpha).  Compare with (|alpha| sqrt(1+|alpha|^2)/sqrt(1-e^{-|alpha|^2}))
    times the one-photon added coherent state.
    """
    alpha = complex(alpha)
    raw = distorted_raw(alpha)(n_cut)
    der = (distorted_raw(alpha + step)(n_cut) - distorted_raw(alpha - step)(n_cut)) / (2 * step)
    return (raw + alpha * der) / math.sqrt(distorted_norm2(alpha))
