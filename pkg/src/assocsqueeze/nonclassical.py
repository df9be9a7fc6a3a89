"""Nonclassicality diagnostics: trace distance between pure states and the
linear entropy of one output port of a 50:50 beam splitter fed with the
state and the vacuum."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import fock
from .errors import DomainError, NumericError
from .fock import StateVector

JACOBI_MAX_CUT = 60
JACOBI_MAX_SWEEPS = 100
UNITARITY_TOL = 1e-10


def align(*states: StateVector):
    """Pad states to a common cutoff (the largest one)."""
    n = max(s.n_cut for s in states)
    return tuple(s.padded(n) if s.n_cut < n else s for s in states)


def _pair(psi1: StateVector, psi2: StateVector):
    fock._require_normalized(psi1)
    fock._require_normalized(psi2)
    if psi1.n_cut != psi2.n_cut:
        raise DomainError(f"cutoff mismatch {psi1.n_cut} vs {psi2.n_cut}; pad with align() first")


def trace_distance_pure(psi1: StateVector, psi2: StateVector) -> float:
    """d = sqrt(1 - |<psi1|psi2>|^2), half the trace norm of the projector difference."""
    _pair(psi1, psi2)
    f = abs(psi1.inner(psi2)) ** 2
    return math.sqrt(max(0.0, 1.0 - f))


def _schur2(app: float, aqq: float, g: float):
    """(c, s) diagonalizing the real symmetric block [[app, g], [g, aqq]]."""
    tau = (aqq - app) / (2 * g)
    t = 1.0 / (tau + math.sqrt(1 + tau * tau)) if tau >= 0 else -1.0 / (-tau + math.sqrt(1 + tau * tau))
    c = 1 / math.sqrt(1 + t * t)
    return c, t * c


def jacobi_eigenvalues(h: np.ndarray, *, max_sweeps: int = JACOBI_MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation first removes the phase of h_pq with diag(1, e^{-i phi}) and
    then applies the real symmetric 2x2 Schur rotation.  Works on a private
    copy.

    Raises:
        NumericError: if the off-diagonal mass has not fallen below round-off
            after ``max_sweeps`` sweeps.
    """
    a = np.array(h, dtype=complex)
    n = a.shape[0]
    if a.shape != (n, n):
        raise DomainError("Jacobi solver needs a square matrix")
    scale = np.linalg.norm(a)
    if scale == 0 or n == 1:
        return np.real(np.diag(a)).copy()
    tol = np.finfo(float).eps * scale
    for _ in range(max_sweeps):
        off = math.sqrt(max(0.0, np.linalg.norm(a) ** 2 - np.linalg.norm(np.diag(a)) ** 2))
        if off <= tol:
            return np.sort(np.real(np.diag(a)))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                g = abs(apq)
                if g <= tol * 1e-3:
                    continue
                phase = apq / g
                c, s = _schur2(a[p, p].real, a[q, q].real, g)
                # V = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                v = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ v
                a[idx, :] = v.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    raise NumericError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")


def trace_distance_oracle(psi1: StateVector, psi2: StateVector) -> float:
    """(1/2) sum |lambda_i| of rho_1 - rho_2 from the Jacobi eigensolver (n_cut <= 60)."""
    _pair(psi1, psi2)
    if psi1.n_cut > JACOBI_MAX_CUT:
        raise DomainError(f"eigen oracle limited to n_cut <= {JACOBI_MAX_CUT}, got {psi1.n_cut}")
    u, v = psi1.amp, psi2.amp
    diff = np.outer(u, u.conj()) - np.outer(v, v.conj())
    return 0.5 * float(np.sum(np.abs(jacobi_eigenvalues(diff))))


@dataclass(frozen=True, eq=False)
class JointAmplitudeMatrix:
    """entries[k, j]: amplitude of |k> on port 1 and |j> on port 2."""

    entries: np.ndarray

    def __post_init__(self):
        total = float(np.sum(np.abs(self.entries) ** 2))
        if abs(total - 1) > UNITARITY_TOL:
            raise NumericError(f"joint amplitudes carry total probability {total!r}")

    def reduced_port1(self) -> np.ndarray:
        """Reduced density matrix on port 1, G = A A^+."""
        return self.entries @ self.entries.conj().T


def _binomial_weights(n_cut: int) -> np.ndarray:
    """w[k, j] = sqrt(C(k+j, k)) 2^{-(k+j)/2} for k + j <= n_cut, else 0."""
    k = np.arange(n_cut + 1)
    lg = np.array([math.lgamma(i + 1) for i in k])
    kk, jj = np.meshgrid(k, k, indexing="ij")
    nn = kk + jj
    valid = nn <= n_cut
    lg_n = np.array([math.lgamma(i + 1) for i in range(2 * n_cut + 1)])
    logw = 0.5 * (lg_n[nn] - lg[kk] - lg[jj]) - 0.5 * nn * math.log(2.0)
    return np.where(valid, np.exp(np.where(valid, logw, 0.0)), 0.0)


def beamsplitter_mix_with_vacuum(state: StateVector) -> JointAmplitudeMatrix:
    """Real symmetric 50:50 splitter, a^+ -> (a_1^+ + a_2^+)/sqrt 2, vacuum on port 2.

    A[k, j] = psi_{k+j} sqrt(C(k+j, k)) 2^{-(k+j)/2}.
    """
    fock._require_normalized(state)
    n = state.n_cut
    k = np.arange(n + 1)
    nn = k[:, None] + k[None, :]
    psi = np.where(nn <= n, state.amp[np.minimum(nn, n)], 0.0)
    return JointAmplitudeMatrix(psi * _binomial_weights(n))


def linear_entropy(joint: JointAmplitudeMatrix) -> float:
    """1 - Tr(rho_1^2) of the port-1 reduced state, via the Gram matrix."""
    g = joint.reduced_port1()
    return float(1.0 - np.sum(np.abs(g) ** 2))


def linear_entropy_after_bs(state: StateVector) -> float:
    return linear_entropy(beamsplitter_mix_with_vacuum(state))
