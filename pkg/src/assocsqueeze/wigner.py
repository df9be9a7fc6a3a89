"""Wigner function W(z) = e^{2|z|^2} int d^2beta/pi <-beta|rho|beta> e^{2(z beta* - z* beta)}.

In this normalization the vacuum gives W(z) = exp(-2|z|^2), so W(0) = 1; it
is pi/2 times the common (2/pi)-normalized Wigner function.

Fast path: the beta integral is Gaussian and closes into the displaced
number-state kernel.  For m = n + k, k >= 0,

    K_mn(z) = (-1)^n e^{-i k phi} l_n^k(4|z|^2),   phi = arg z,

with l_n^k the normalized Laguerre function, and K_nm = conj(K_mn).  Then
W(z) = sum_{m,n} psi_m conj(psi_n) K_mn(z).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import fock, specfun
from .errors import DomainError, NumericError
from .fock import StateVector

IMAG_TOL = 1e-10
DEFAULT_AXIS = (-4.0, 4.0, 161)


def _trimmed(state: StateVector) -> np.ndarray:
    """Amplitudes with exact trailing zeros dropped (speeds up the kernel sums)."""
    fock._require_normalized(state)
    amp = state.amp
    nz = np.nonzero(amp)[0]
    if len(nz) == 0:
        raise DomainError("zero state")
    return amp[: nz[-1] + 1]


def wigner_point(state: StateVector, z) -> float:
    """W(z) from the full Hermitian double sum.

    Raises:
        NumericError: if the imaginary residue of the sum exceeds 1e-10.
    """
    psi = _trimmed(state)
    z = complex(z)
    n_top = len(psi) - 1
    x = 4 * abs(z) ** 2
    phase = np.exp(-1j * math.atan2(z.imag, z.real)) if z != 0 else 1.0
    total = 0j
    for k in range(n_top + 1):
        ell = specfun.laguerre_normalized(n_top - k, k, x)
        n = np.arange(n_top - k + 1)
        signs = np.where(n % 2 == 0, 1.0, -1.0)
        kern = signs * ell * phase ** k
        # m = n + k >= n block
        total += np.sum(psi[k:] * np.conj(psi[: n_top - k + 1]) * kern)
        if k > 0:
            # mirrored block m = n, n' = n + k with K = conj(K_{n+k, n})
            total += np.sum(psi[: n_top - k + 1] * np.conj(psi[k:]) * np.conj(kern))
    if abs(total.imag) > IMAG_TOL:
        raise NumericError(f"Wigner double sum has imaginary residue {total.imag:.3e} at z={z}")
    return float(total.real)


@dataclass(frozen=True, eq=False)
class WignerGrid:
    """Real W values on a rectangular grid; ``values[i, j]`` sits at
    re = re_axis[j], im = im_axis[i] (rows follow Im z)."""

    re_min: float
    re_max: float
    re_steps: int
    im_min: float
    im_max: float
    im_steps: int
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    @property
    def re_axis(self) -> np.ndarray:
        return np.linspace(self.re_min, self.re_max, self.re_steps)

    @property
    def im_axis(self) -> np.ndarray:
        return np.linspace(self.im_min, self.im_max, self.im_steps)

    def argmax(self) -> complex:
        i, j = np.unravel_index(np.argmax(self.values), self.values.shape)
        return complex(self.re_axis[j], self.im_axis[i])

    def to_csv(self) -> str:
        lines = ["re_z, im_z, w"]
        re, im = self.re_axis, self.im_axis
        for i in range(self.im_steps):
            for j in range(self.re_steps):
                lines.append(f"{float(re[j])!r}, {float(im[i])!r}, {float(self.values[i, j])!r}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "re_axis": {"min": self.re_min, "max": self.re_max, "steps": self.re_steps},
            "im_axis": {"min": self.im_min, "max": self.im_max, "steps": self.im_steps},
            "order": "row-major, rows follow im_z",
            "values": [float(v) for v in self.values.ravel()],
        }
        return json.dumps(doc, sort_keys=True)


def _check_axis(lo, hi, steps):
    if steps < 1 or (steps > 1 and not hi > lo):
        raise DomainError(f"bad grid axis [{lo}, {hi}] with {steps} points")


def wigner_values(state: StateVector, z) -> np.ndarray:
    """Fast-path W over an array of points z (any shape).  Uses the Hermitian
    folding W = sum_n |psi_n|^2 K_nn + 2 Re sum_{k>0} ..., which is real by
    construction."""
    psi = _trimmed(state)
    z = np.asarray(z, dtype=complex)
    n_top = len(psi) - 1
    x = 4 * np.abs(z) ** 2
    phase = np.exp(-1j * np.angle(z))
    out = np.zeros(z.shape)
    for k in range(n_top + 1):
        coeff = psi[k:] * np.conj(psi[: n_top - k + 1])
        coeff = coeff * np.where(np.arange(n_top - k + 1) % 2 == 0, 1.0, -1.0)
        if not np.any(coeff):
            continue
        ell = specfun.laguerre_normalized(n_top - k, k, x)
        s = np.tensordot(coeff, ell, axes=(0, 0))
        if k == 0:
            out += s.real
        else:
            out += 2 * (s * phase ** k).real
    return out


def wigner_grid(state: StateVector, re_axis=DEFAULT_AXIS, im_axis=DEFAULT_AXIS) -> WignerGrid:
    """Dense evaluation on ``re_axis x im_axis``, each given as (min, max, steps)."""
    _check_axis(*re_axis)
    _check_axis(*im_axis)
    re = np.linspace(*re_axis[:2], int(re_axis[2]))
    im = np.linspace(*im_axis[:2], int(im_axis[2]))
    zz = re[None, :] + 1j * im[:, None]
    vals = wigner_values(state, zz)
    return WignerGrid(float(re_axis[0]), float(re_axis[1]), int(re_axis[2]),
                      float(im_axis[0]), float(im_axis[1]), int(im_axis[2]), vals,
                      {"state": state.label, "n_cut": state.n_cut})


@dataclass(frozen=True)
class OracleResult:
    value: float
    warnings: tuple = ()
    radius: float = 0.0
    steps: int = 0


def wigner_quadrature_oracle(state: StateVector, z, radius: float | None = None,
                             steps: int = 400) -> OracleResult:
    """Midpoint-rule evaluation of the defining beta integral over |beta| <= radius.

    <-beta|psi> = e^{-|beta|^2/2} sum psi_n (-beta*)^n / sqrt(n!),
    <psi|beta>  = e^{-|beta|^2/2} sum conj(psi_n) beta^n / sqrt(n!).

    The integrand is smooth and decays like a Gaussian, so the midpoint rule
    converges fast once the radius covers it.  Too small a radius or too
    coarse a mesh is reported in ``warnings`` rather than raised.
    """
    psi = _trimmed(state)
    z = complex(z)
    n_top = len(psi) - 1
    prob = np.abs(psi) ** 2
    n_idx = np.arange(n_top + 1)
    mean = float(prob @ n_idx)
    n_eff = mean + 5 * math.sqrt(max(0.0, float(prob @ n_idx ** 2) - mean ** 2))
    if radius is None:
        radius = 6.0 + 1.5 * math.sqrt(n_eff + 1) + abs(z)
    h = 2 * radius / steps
    t = -radius + h * (np.arange(steps) + 0.5)
    beta = t[None, :] + 1j * t[:, None]
    inside = np.abs(beta) <= radius
    b = beta[inside]
    # power sums by Horner on sqrt(n!)-scaled coefficients
    c = psi * np.exp([-0.5 * math.lgamma(n + 1) for n in range(n_top + 1)])
    left = np.zeros_like(b)
    right = np.zeros_like(b)
    for n in range(n_top, -1, -1):
        left = left * (-np.conj(b)) + c[n]
        right = right * b + np.conj(c[n])
    weight = np.exp(-np.abs(b) ** 2 + 2 * abs(z) ** 2 + 2 * (z * np.conj(b) - np.conj(z) * b))
    integrand = left * right * weight
    value = complex(np.sum(integrand) * h * h / math.pi)
    warnings = []
    if math.exp(-radius ** 2) >= 1e-12:
        warnings.append(f"radius {radius} leaves Gaussian tail exp(-R^2) >= 1e-12")
    rim = np.abs(b) > radius - 2 * h
    if rim.any():
        edge = float(np.max(np.abs(integrand[rim])))
        if edge > 1e-10 * max(1.0, abs(value)):
            warnings.append(f"integrand not negligible on the rim ({edge:.2e})")
    # oscillation e^{4i Im(z beta*)} and the polynomial factors need several points per period
    if h * (4 * abs(z) + 2 * math.sqrt(n_eff + 1)) > math.pi:
        warnings.append(f"mesh step {h:.3g} too coarse for |z|={abs(z):.3g}, effective n={n_eff:.1f}")
    if abs(value.imag) > 1e-8 * max(1.0, abs(value.real)):
        warnings.append(f"imaginary residue {value.imag:.2e}")
    return OracleResult(float(value.real), tuple(warnings), float(radius), int(steps))
