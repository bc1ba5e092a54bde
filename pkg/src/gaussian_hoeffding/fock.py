"""Brute-force s-overlaps in a truncated Fock basis.

Test support only: these routines are an independent oracle for the Gaussian
formulas and carry no stability guarantees.  Quadratures are
``q = a + a^dag`` and ``p = -i (a - a^dag)`` so the vacuum has unit variance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional
from functools import cached_property

import numpy as np
from scipy import sparse
from scipy.linalg import expm
from scipy.special import gammaln

from .errors import DimensionMismatch, DomainError, NonHermitian, TruncationTooSmall

DEFAULT_DIM_ONE_MODE = 60
DEFAULT_DIM_TWO_MODE = 30
TRACE_TOL = 1e-8
EIG_CLAMP = 1e-14


@dataclass(frozen=True, eq=False)
class FockOperator:
    """Density matrix on ``modes`` modes, each truncated to ``dim`` levels.

    When the constructor knows the spectral factorisation ``matrix = U diag(w) U^dag``
    (``U`` with orthonormal columns) it passes ``weights`` and ``basis``; fractional
    powers then use ``w**s`` directly.  Otherwise they come from ``eigh`` with
    eigenvalues below ``EIG_CLAMP`` set to zero, which is noticeably less accurate
    for small exponents because tiny eigenvalues raised to ``s ~ 0.1`` are not small.
    """

    dim: int
    modes: int
    matrix: np.ndarray
    weights: Optional[np.ndarray] = None
    basis: Optional[np.ndarray] = None

    def __post_init__(self):
        m = np.asarray(self.matrix)
        size = self.dim ** self.modes
        if m.shape != (size, size):
            raise DimensionMismatch(f"expected a {size} x {size} matrix, got {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > 1e-12:
            raise NonHermitian("Fock operator is not Hermitian")
        m = 0.5 * (m + m.conj().T)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        if (self.weights is None) != (self.basis is None):
            raise DimensionMismatch("weights and basis must be given together")

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.matrix)))

    @cached_property
    def eigh(self) -> tuple[np.ndarray, np.ndarray]:
        if self.weights is not None:
            return np.asarray(self.weights), np.asarray(self.basis)
        w, U = np.linalg.eigh(self.matrix)
        return np.where(w < EIG_CLAMP, 0.0, w), U

    def power(self, s: float) -> np.ndarray:
        w, U = self.eigh
        ws = np.zeros_like(w)
        pos = w > 0.0
        ws[pos] = w[pos] ** s
        return (U * ws) @ U.conj().T


def _check_dim(D: int) -> int:
    if int(D) != D or D < 2:
        raise DomainError(f"truncation dimension must be an integer >= 2, got {D!r}")
    return int(D)


def annihilation(D: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1.0, D)), 1)


def thermal_populations(nu: float, D: int) -> np.ndarray:
    """Gibbs weights ``(1 - lam) lam^n`` with ``lam = (nu - 1) / (nu + 1)``."""
    if nu < 1.0:
        raise DomainError(f"nu must be >= 1, got {nu!r}")
    D = _check_dim(D)
    lam = (nu - 1.0) / (nu + 1.0)
    if lam == 0.0:
        p = np.zeros(D)
        p[0] = 1.0
        return p
    if lam ** D > TRACE_TOL:
        raise TruncationTooSmall(f"thermal tail {lam ** D:.3g} exceeds {TRACE_TOL} at D={D}")
    return (1.0 - lam) * lam ** np.arange(D)


def fock_thermal(nu: float, D: int = DEFAULT_DIM_ONE_MODE) -> FockOperator:
    p = thermal_populations(nu, D)
    return FockOperator(dim=D, modes=1, matrix=np.diag(p), weights=p, basis=np.eye(D))


def fock_coherent(alpha: complex, D: int = DEFAULT_DIM_ONE_MODE) -> FockOperator:
    D = _check_dim(D)
    alpha = complex(alpha)
    n = np.arange(D)
    amp = np.zeros(D, dtype=complex)
    if alpha == 0:
        amp[0] = 1.0
    else:
        log_mod = -0.5 * abs(alpha) ** 2 + n * math.log(abs(alpha)) - 0.5 * gammaln(n + 1.0)
        amp = np.exp(log_mod) * np.exp(1j * n * np.angle(alpha))
    tail = 1.0 - float(np.sum(np.abs(amp) ** 2))
    if tail > 1e-10:
        raise TruncationTooSmall(f"coherent tail {tail:.3g} exceeds 1e-10 at D={D}")
    return FockOperator(
        dim=D, modes=1, matrix=np.outer(amp, amp.conj()),
        weights=np.array([1.0]), basis=(amp / np.linalg.norm(amp))[:, None],
    )


def fock_st(mu: float, c: float, D: int = DEFAULT_DIM_TWO_MODE) -> FockOperator:
    """Two-mode squeezed thermal state with covariance ``[[mu I, c Z], [c Z, mu I]]``.

    A thermal pair with ``nu = sqrt(mu^2 - c^2)`` is squeezed by
    ``exp(xi (a^dag b^dag - a b))`` with ``xi = artanh(c / mu) / 2``.
    """
    D = _check_dim(D)
    c = abs(float(c))
    nu2 = mu * mu - c * c
    if mu < 1.0 or nu2 < 1.0 - 1e-12:
        raise DomainError(f"(mu, c) = ({mu!r}, {c!r}) is not a physical squeezed thermal state")
    nu = math.sqrt(max(nu2, 0.0))
    if nu < 1.0 + 1e-12:  # rounding in mu^2 - c^2 must not create spurious weights
        nu = 1.0
    p1 = thermal_populations(nu, D)
    p = np.kron(p1, p1)
    U = two_mode_squeezer(0.5 * math.atanh(c / mu), D) if c > 0.0 else np.eye(D * D)
    keep = p > 0.0
    U, p = U[:, keep], p[keep]
    Us = sparse.csr_matrix(U)  # block structure: one block per photon-number difference
    rho = (Us @ sparse.diags(p) @ Us.T).toarray()
    op = FockOperator(dim=D, modes=2, matrix=rho, weights=p, basis=U)
    deficit = 1.0 - op.trace
    if deficit > TRACE_TOL:
        raise TruncationTooSmall(f"trace deficit {deficit:.3g} exceeds {TRACE_TOL} at D={D}")
    return op


def two_mode_squeezer(xi: float, D: int) -> np.ndarray:
    """``expm`` of the truncated generator ``xi (a^dag b^dag - a b)``.

    The result is exactly orthogonal on the truncated space, so a squeezed
    thermal state keeps its Gibbs weights as eigenvalues.  The distortion of
    the generator near the cutoff only touches states with about ``D`` photons.
    The generator conserves ``N_a - N_b``, so each sector is exponentiated
    separately.
    """
    D = _check_dim(D)
    U = np.zeros((D * D, D * D))
    for k in range(-(D - 1), D):
        n = np.arange(max(k, 0), min(D, D + k))
        idx = n * D + (n - k)
        # <n+1, m+1| a^dag b^dag |n, m> = sqrt((n+1)(m+1))
        up = np.sqrt((n[:-1] + 1.0) * (n[:-1] - k + 1.0))
        G = np.diag(xi * up, -1)
        U[np.ix_(idx, idx)] = expm(G - G.T)
    return U


def overlap_trace(rho0: FockOperator, rho1: FockOperator, s: float) -> float:
    """``Tr(rho0^s rho1^(1-s))`` from the spectral decompositions of both operators.

    With known factors this is ``sum_ij w0_i^s w1_j^(1-s) |<u_i|v_j>|^2``.
    """
    if (rho0.dim, rho0.modes) != (rho1.dim, rho1.modes):
        raise DimensionMismatch("Fock operators live on different truncated spaces")
    if not 0.0 < s < 1.0:
        raise DomainError(f"s must lie strictly inside (0, 1), got {s!r}")
    if rho0.weights is not None and rho1.weights is not None:
        w0, U0 = rho0.eigh
        w1, U1 = rho1.eigh
        overlap = np.abs((sparse.csr_matrix(U0.conj().T) @ sparse.csr_matrix(U1)).toarray()) ** 2
        val = complex((w0**s) @ overlap @ (w1 ** (1.0 - s)))
    else:
        # Tr(A B) for Hermitian A, B is sum(A * B^T) elementwise
        val = np.sum(rho0.power(s) * rho1.power(1.0 - s).T)
    if abs(val.imag) > 1e-10:
        raise NonHermitian(f"overlap has imaginary part {val.imag:.3g}")
    return float(val.real)


def moments(op: FockOperator) -> tuple[np.ndarray, np.ndarray]:
    """Mean vector and covariance matrix of a one- or two-mode Fock density matrix.

    Same-mode second moments use ``q^2 = a^2 + a^dag^2 + 2 a^dag a + 1`` (and the
    analogues for ``p``) so that no truncated product ``a a^dag`` appears.
    """
    D, m = op.dim, op.modes
    if m not in (1, 2):
        raise DimensionMismatch("moments are implemented for one or two modes")
    rho = op.matrix
    a1 = annihilation(D)
    eye = np.eye(D)
    lowers = [a1] if m == 1 else [np.kron(a1, eye), np.kron(eye, a1)]

    def ev(X):
        return complex(np.sum(rho * X.T))

    quads, mean = [], []
    for a in lowers:
        q = a + a.T
        p = -1j * (a - a.T)
        quads += [q, p]
        mean += [ev(q).real, ev(p).real]
    mean = np.array(mean)
    cov = np.zeros((2 * m, 2 * m))
    for k, a in enumerate(lowers):
        a2 = ev(a @ a)
        num = ev(a.T @ a).real
        i = 2 * k
        cov[i, i] = 2.0 * a2.real + 2.0 * num + 1.0
        cov[i + 1, i + 1] = -2.0 * a2.real + 2.0 * num + 1.0
        cov[i, i + 1] = cov[i + 1, i] = 2.0 * a2.imag
    for i in range(2 * m):
        for j in range(2 * m):
            if i // 2 != j // 2:
                cov[i, j] = ev(quads[i] @ quads[j]).real
    cov -= np.outer(mean, mean)
    return mean, cov
