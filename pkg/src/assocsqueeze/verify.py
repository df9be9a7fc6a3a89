"""Invariant suite behind ``assocsqueeze verify``.

Each check returns a measured residual and the bound it must not exceed.  A
tolerance profile rescales every bound: ``default`` (x1), ``loose`` (x100),
``zero`` (all bounds 0, so any round-off fails) or a positive number.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import fock, polyfam, recurrence, specfun, squeezed, wigner, nonclassical
from .errors import DomainError

PROFILES = {"default": 1.0, "loose": 100.0, "zero": 0.0}

PLUS_TABLE = [
    lambda a, x: 1.0,
    lambda a, x: a,
    lambda a, x: a ** 2 - x,
    lambda a, x: a ** 3 - 3 * x * a,
    lambda a, x: a ** 4 - 6 * x * a ** 2 + 3 * x ** 2,
]
MINUS_TABLE = [
    lambda a, x: 0.0,
    lambda a, x: 1.0,
    lambda a, x: a,
    lambda a, x: a ** 2 - 2 * x,
    lambda a, x: a ** 3 - 5 * x * a,
]

_SAMPLE_POINTS = [(1.0, 0.6), (0.3 + 0.4j, 0.5j), (-1.2, 0.25), (2.0, -0.3 + 0.1j)]


@dataclass(frozen=True)
class Entry:
    invariant: str
    module: str
    residual: float
    bound: float

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.bound)

    def as_dict(self) -> dict:
        return {"invariant": self.invariant, "module": self.module, "residual": self.residual,
                "bound": self.bound, "passed": self.passed}


def profile_scale(profile) -> float:
    if isinstance(profile, str) and profile in PROFILES:
        return PROFILES[profile]
    try:
        scale = float(profile)
    except (TypeError, ValueError):
        raise DomainError(f"unknown tolerance profile {profile!r}; use default, loose, zero or a number")
    if not scale >= 0 or math.isinf(scale):
        raise DomainError(f"tolerance scale must be finite and nonnegative, got {profile!r}")
    return scale


def _rel(a, b) -> float:
    return abs(a - b) / max(1.0, abs(b))


def _specfun():
    yield "laguerre_assoc(2,1,1) = 1/2", abs(specfun.laguerre_assoc(2, 1, 1.0) - 0.5), 1e-15
    x = 0.7
    erf_form = math.sqrt(math.pi) * math.erf(x) / (2 * x)
    yield "M(1/2,3/2;-x^2) = sqrt(pi) erf(x)/(2x)", _rel(specfun.kummer_m(0.5, 1.5, -x * x), erf_form), 1e-14
    worst = max(_rel(specfun.hermite_scaled(n, 1.3), 2 ** (-n / 2) * specfun.hermite_phys(n, 1.3 / math.sqrt(2)))
                for n in range(20))
    yield "He_n(z) = 2^{-n/2} H_n(z/sqrt 2), n < 20", worst, 1e-12


def _recurrence():
    spec = recurrence.RecurrenceSpec.squeezing(0.6)
    p = recurrence.run_recurrence(spec, 1.0, 1.0, 1.0, 12)
    g = recurrence.associated_sequence(spec, 1.0, 12)
    worst = max(_rel(recurrence.casorati(p, g, n), np.prod([spec.lam(k) for k in range(1, n + 1)]))
                for n in range(11))
    yield "Casorati C_n = prod lambda_k, n <= 10", worst, 1e-10
    red = recurrence.numerator_via_order_reduction(p, 0.0, p[0])
    yield "order reduction = associated sequence", float(np.max(np.abs(red.values - g.values))), 1e-10
    ch = recurrence.compatibility_check(*recurrence.squeezing_coefficients(1.0, 0.6),
                                        *recurrence.hermite_coefficients(1.0 / math.sqrt(1.2)), 20)
    yield "compatibility squeezing <-> Hermite", ch.worst_residual, 1e-10


def _polyfam():
    worst = 0.0
    for a, x in _SAMPLE_POINTS:
        sp, sm = polyfam.sequence("plus", 4, a, x), polyfam.sequence("minus", 4, a, x)
        for n in range(5):
            worst = max(worst, _rel(sp[n], PLUS_TABLE[n](a, x)), _rel(sm[n], MINUS_TABLE[n](a, x)))
    yield "polynomial tables n <= 4", worst, 1e-12
    worst = 0.0
    for a, x in _SAMPLE_POINTS:
        seq = polyfam.sequence("minus", 12, a, x)
        worst = max(worst, max(_rel(polyfam.p_minus_sum_form(n, a, x), seq[n]) for n in range(1, 13)))
    yield "associated sum form = recurrence", worst, 1e-9
    worst = 0.0
    for a, x in _SAMPLE_POINTS:
        sp, sm = polyfam.sequence("plus", 2, a, x), polyfam.sequence("minus", 2, a, x)
        worst = max(worst, abs(sp[1] - a * sp[0]), abs(sm[2] - a * sm[1]))
    yield "constraint pair P1 - aP0 (+), P2 - aP1 (-)", worst, 1e-15


def _fock():
    n = 12
    a, ad, _ = fock.ladder_matrices(n)
    comm = (a @ ad - ad @ a).entries
    yield "[a, a^+] = 1 on n <= n_cut - 2", float(np.max(np.abs(comm[: n - 1, : n - 1] - np.eye(n - 1)))), 1e-13
    sv = fock.squeeze_apply(0.8, fock.basis_state(0, 120))
    ref = squeezed.squeezed_vacuum(0.8, 120)
    yield "squeeze_apply|0> = squeezed vacuum (xi=0.8)", abs(1 - abs(sv.inner(ref)) ** 2), 1e-10
    alpha, cut = 0.7 + 0.5j, 60
    d = squeezed.distorted_coherent(alpha, cut)
    k = abs(alpha) / math.sqrt(-math.expm1(-abs(alpha) ** 2))
    x, dnum = fock.ladder_matrices(cut)[0], fock.ladder_matrices(cut)[2]
    coh, add = fock.coherent_state(alpha, cut), fock.photon_added_coherent(alpha, cut)
    yield "a|alpha;-> = k|alpha>", float(np.linalg.norm(x.entries @ d.amp - k * coh.amp)), 1e-9
    k2 = k * math.sqrt(1 + abs(alpha) ** 2)
    yield "n|alpha;-> = k'|alpha,1>_add", float(np.linalg.norm(dnum.entries @ d.amp - k2 * add.amp)), 1e-9
    lhs = squeezed.ladder_generator_action(alpha, cut)
    yield "[1 + alpha d/dalpha]|alpha;-> = k'|alpha,1>_add", \
        float(np.linalg.norm(lhs - k2 * add.amp) / np.linalg.norm(lhs)), 1e-5


def _squeezed():
    grid = [(a, x) for a in (0.0, 1.0, 2.0, 3.0) for x in (0.0, 0.3, 0.6, 0.8)]
    wp = wm = 0.0
    sat_p = sat_m = ratio = mean = 0.0
    for a, x in grid:
        sp = squeezed.conventional_squeezed(a, x, 150)
        sm = squeezed.associated_squeezed(a, x, 150)
        wp = max(wp, squeezed.eigen_residual(sp, a, x))
        wm = max(wm, squeezed.eigen_residual(sm, a, x, distorted=True))
        st = fock.quadrature_stats(sp)
        sat_p = max(sat_p, abs(st.var_x * st.var_p - (0.25 + st.cov_xp ** 2)))
        ratio = max(ratio, abs(st.var_x / st.var_p - squeezed.tau(x)[0] ** 2))
        sat_m = max(sat_m, abs(fock.schrodinger_gap(sm, distorted=True)))
        mean = max(mean, _rel(squeezed.mean_photon_number(sp), squeezed.mean_photon_plus_closed(a, x)))
    yield "eigen_residual plus family (a + xi a^+)", wp, 1e-8
    yield "eigen_residual minus family (a2 + xi a2^+)", wm, 1e-8
    yield "Schrodinger saturation, conventional", sat_p, 1e-7
    yield "variance ratio var_x/var_p = tau^2", ratio, 1e-7
    yield "Schrodinger saturation, associated (distorted)", sat_m, 1e-7
    yield "mean photons closed vs numeric (plus)", mean, 1e-8
    worst = 0.0
    for x in (0.2, 0.6, 0.8):
        s = squeezed.odd_photon_squeezed(x)
        worst = max(worst, _rel(squeezed.mean_photon_number(s), squeezed.mean_photon_minus_alpha0(x)),
                    _rel(s.meta["numeric_norm2"], squeezed.odd_norm2(x)))
    for a in (0.5, 1.0, 3.0):
        s = squeezed.distorted_coherent(a)
        worst = max(worst, _rel(squeezed.mean_photon_number(s), squeezed.mean_photon_minus_xi0(a)))
    yield "boundary means and arcsin norm (minus)", worst, 1e-8
    worst = 0.0
    for a in (0.5, 2.0, 3.0):
        for x in (0.4, 0.8):
            s = squeezed.conventional_squeezed(a, x)
            worst = max(worst, _rel(s.meta["numeric_norm2"], s.meta["closed_norm2"]))
    yield "Mehler norm vs amplitude sum", worst, 1e-9
    f1 = abs(squeezed.associated_squeezed(0, 0.6, 100).inner(squeezed.odd_photon_squeezed(0.6, 100))) ** 2
    f2 = abs(squeezed.associated_squeezed(1.5, 0, 60).inner(squeezed.distorted_coherent(1.5, 60))) ** 2
    yield "boundary identities (fidelity defect)", max(abs(1 - f1), abs(1 - f2)), 1e-10


def _wigner():
    vac = fock.basis_state(0, 4)
    zs = [0.3 + 0.2j, -1.1j, 0.8]
    yield "vacuum W = exp(-2|z|^2)", max(abs(wigner.wigner_point(vac, z) - math.exp(-2 * abs(z) ** 2)) for z in zs), 1e-14
    yield "|1> at origin = -1", abs(wigner.wigner_point(fock.basis_state(1, 4), 0) + 1), 1e-14
    worst = 0.0
    for st, z in [(squeezed.associated_squeezed(0.6 + 0.3j, 0.4), 0.4 - 0.3j),
                  (squeezed.conventional_squeezed(-0.5, 0.3j), 0.9j),
                  (squeezed.odd_photon_squeezed(0.5), 0.2 + 0.6j)]:
        worst = max(worst, abs(wigner.wigner_point(st, z) - wigner.wigner_quadrature_oracle(st, z).value))
    yield "kernel vs quadrature oracle", worst, 1e-5


def _nonclassical():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(5):
        u = rng.normal(size=21) + 1j * rng.normal(size=21)
        v = rng.normal(size=21) + 1j * rng.normal(size=21)
        a = fock.StateVector(u / np.linalg.norm(u), 20)
        b = fock.StateVector(v / np.linalg.norm(v), 20)
        worst = max(worst, abs(nonclassical.trace_distance_pure(a, b) - nonclassical.trace_distance_oracle(a, b)))
    yield "trace distance closed vs Jacobi", worst, 1e-8
    yield "entropy of coherent input", abs(nonclassical.linear_entropy_after_bs(fock.coherent_state(1.3))), 1e-10
    yield "entropy of |1> input = 1/2", abs(nonclassical.linear_entropy_after_bs(fock.basis_state(1, 6)) - 0.5), 1e-10
    p, m = nonclassical.align(squeezed.conventional_squeezed(0, 0.6), squeezed.odd_photon_squeezed(0.6))
    yield "d(+,-) = 1 at alpha = 0", abs(nonclassical.trace_distance_pure(p, m) - 1), 1e-12


SUITE: dict[str, Callable] = {
    "specfun": _specfun,
    "recurrence": _recurrence,
    "polyfam": _polyfam,
    "fock": _fock,
    "squeezed": _squeezed,
    "wigner": _wigner,
    "nonclassical": _nonclassical,
}


def run_suite(profile="default") -> list[Entry]:
    """Run every invariant; bounds are multiplied by the profile scale."""
    scale = profile_scale(profile)
    out = []
    for module, checks in SUITE.items():
        for name, residual, bound in checks():
            residual = float(residual)
            if cmath.isnan(residual):
                residual = math.inf
            out.append(Entry(name, module, residual, bound * scale))
    return out
