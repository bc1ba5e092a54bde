"""Gaussian-state data model and symplectic linear algebra.

Conventions used throughout the package:

* quadratures are ordered ``(q1, p1, ..., qn, pn)``;
* the vacuum covariance matrix is the identity, so a thermal state with
  mean photon number ``nbar`` has covariance ``(2*nbar + 1) * I`` and every
  symplectic eigenvalue of a physical state satisfies ``nu >= 1``.

Conventions with the vacuum at ``I/2`` differ by a factor of two.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np
from scipy.linalg import schur

from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    DomainError,
    NonPhysical,
    NonPositiveDefinite,
    NonSymmetric,
)

TOL_SYM = 1e-12
TOL_PHYS = 1e-9
TOL_PURE = 1e-9
TOL_PAIR = 1e-9
TOL_RESIDUAL = 1e-8


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@lru_cache(maxsize=None)
def symplectic_form(n: int) -> np.ndarray:
    """Return the 2n x 2n block-diagonal symplectic form (read-only)."""
    if n < 1:
        raise DimensionMismatch(f"mode count must be positive, got {n}")
    return _frozen(np.kron(np.eye(n), np.array([[0.0, 1.0], [-1.0, 0.0]])))


@dataclass(frozen=True, eq=False)
class GaussianState:
    """First and second moments of an n-mode Gaussian state.

    ``mean`` has length 2n and ``cov`` is a symmetric 2n x 2n matrix.  Both are
    stored as read-only float64 copies.  Physicality is *not* enforced here so
    that unphysical matrices can still be inspected with :func:`validate_state`.
    """

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        cov = np.array(self.cov, dtype=np.float64)
        mean = np.array(self.mean, dtype=np.float64).reshape(-1)
        if cov.ndim != 2 or cov.shape[0] != cov.shape[1] or cov.shape[0] % 2:
            raise DimensionMismatch(f"cov must be a square 2n x 2n matrix, got shape {cov.shape}")
        if cov.shape[0] == 0:
            raise DimensionMismatch("cov must describe at least one mode")
        if mean.shape[0] != cov.shape[0]:
            raise DimensionMismatch(
                f"mean has length {mean.shape[0]} but cov is {cov.shape[0]} x {cov.shape[0]}"
            )
        if not (np.all(np.isfinite(cov)) and np.all(np.isfinite(mean))):
            raise DomainError("mean and cov must have finite entries")
        scale = max(np.max(np.abs(cov)), np.finfo(float).tiny)
        if np.max(np.abs(cov - cov.T)) > TOL_SYM * scale:
            raise NonSymmetric("cov is not symmetric")
        cov = 0.5 * (cov + cov.T)
        object.__setattr__(self, "cov", _frozen(cov))
        object.__setattr__(self, "mean", _frozen(mean))

    @property
    def n(self) -> int:
        return self.cov.shape[0] // 2

    @property
    def is_zero_mean(self) -> bool:
        return not np.any(self.mean)

    @cached_property
    def williamson(self) -> "WilliamsonDecomposition":
        return williamson(self.cov)

    @cached_property
    def spectrum(self) -> np.ndarray:
        return symplectic_spectrum(self.cov)

    @property
    def is_pure(self) -> bool:
        return bool(np.max(np.abs(self.spectrum - 1.0)) <= TOL_PURE)

    @classmethod
    def vacuum(cls, n: int = 1) -> "GaussianState":
        return cls(np.zeros(2 * n), np.eye(2 * n))


@dataclass(frozen=True, eq=False)
class WilliamsonDecomposition:
    """``cov = S @ W @ S.T`` with ``W = diag(nu_1, nu_1, ..., nu_n, nu_n)``.

    ``spectrum`` is sorted in descending order.
    """

    spectrum: np.ndarray
    S: np.ndarray

    @property
    def W(self) -> np.ndarray:
        return np.diag(np.repeat(self.spectrum, 2))


@dataclass(frozen=True)
class ValidityReport:
    symmetric: bool
    physical: bool
    pure: bool
    spectrum: np.ndarray | None
    message: str = ""


def _sqrtm_pd(cov: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(cov**1/2, cov**-1/2)`` from a symmetric eigendecomposition."""
    w, U = np.linalg.eigh(cov)
    if not np.all(np.isfinite(w)) or w[0] <= 1e-14 * max(w[-1], 0.0) or w[0] <= 0.0:
        raise NonPositiveDefinite("covariance matrix is not positive definite")
    r = np.sqrt(w)
    return (U * r) @ U.T, (U / r) @ U.T


def _check_square(cov: np.ndarray) -> np.ndarray:
    cov = np.asarray(cov, dtype=np.float64)
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1] or cov.shape[0] % 2 or cov.shape[0] == 0:
        raise DimensionMismatch(f"expected a 2n x 2n matrix, got shape {cov.shape}")
    return cov


def symplectic_spectrum(cov: np.ndarray) -> np.ndarray:
    """Symplectic eigenvalues of ``cov`` in descending order.

    They are the moduli of the eigenvalues of ``i Omega cov``.  We obtain them
    from the Hermitian matrix ``i cov^1/2 Omega cov^1/2``, which is similar to
    ``i Omega cov`` and whose eigenvalues come in exact ``+-nu`` pairs.
    """
    cov = _check_square(cov)
    n = cov.shape[0] // 2
    sq, _ = _sqrtm_pd(cov)
    herm = 1j * (sq @ symplectic_form(n) @ sq)
    ev = np.linalg.eigvalsh(herm)
    pos = ev[n:][::-1]
    neg = -ev[:n]
    if np.any(np.abs(pos - neg) > TOL_PAIR * np.maximum(1.0, pos)):
        raise ConvergenceFailure("eigenvalues of i*Omega*V do not pair up as +-nu")
    return _frozen(0.5 * (pos + neg))


def williamson(cov: np.ndarray) -> WilliamsonDecomposition:
    """Williamson decomposition ``cov = S W S^T`` of a positive definite matrix.

    Algorithm: with ``A = cov^-1/2 Omega cov^-1/2`` (antisymmetric), the real
    Schur form ``O^T A O`` is block diagonal with blocks ``[[0, b], [-b, 0]]``,
    ``|b| = 1/nu``.  Column pairs of ``O`` are swapped where needed so that every
    ``b > 0``, blocks are ordered by descending ``nu``, and then
    ``S = cov^1/2 O W^-1/2``.  Both defining identities are checked before
    returning.
    """
    cov = _check_square(cov)
    n = cov.shape[0] // 2
    omega = symplectic_form(n)
    sq, isq = _sqrtm_pd(cov)
    A = isq @ omega @ isq
    A = 0.5 * (A - A.T)
    try:
        T, O = schur(A, output="real")
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise ConvergenceFailure(f"real Schur decomposition failed: {exc}") from exc

    inv_nu = np.empty(n)
    for k in range(n):
        i, j = 2 * k, 2 * k + 1
        b, c = T[i, j], T[j, i]
        if b * c >= 0.0:
            raise ConvergenceFailure("Schur form is not made of rotation blocks")
        if b < 0.0:
            O[:, [i, j]] = O[:, [j, i]]
        inv_nu[k] = np.sqrt(-b * c)
    off = T.copy()
    for k in range(n):
        off[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = 0.0
    if np.linalg.norm(off) > TOL_RESIDUAL * np.linalg.norm(T):
        raise ConvergenceFailure("Schur form of the antisymmetric matrix is not block diagonal")

    nu = 1.0 / inv_nu
    order = np.argsort(-nu, kind="stable")
    cols = np.ravel([[2 * k, 2 * k + 1] for k in order])
    O = O[:, cols]
    nu = nu[order]
    S = sq @ O @ np.diag(np.repeat(nu ** -0.5, 2))

    W = np.diag(np.repeat(nu, 2))
    res_omega = np.linalg.norm(S @ omega @ S.T - omega) / np.linalg.norm(omega)
    res_cov = np.linalg.norm(S @ W @ S.T - cov) / np.linalg.norm(cov)
    if res_omega > TOL_RESIDUAL or res_cov > TOL_RESIDUAL:
        raise ConvergenceFailure(
            f"Williamson residuals too large (symplectic {res_omega:.2e}, cov {res_cov:.2e})"
        )
    return WilliamsonDecomposition(spectrum=_frozen(nu), S=_frozen(S))


def validate_state(state: GaussianState, *, strict: bool = True) -> ValidityReport:
    """Check the uncertainty principle ``V + i Omega >= 0`` and purity.

    With ``strict=True`` an unphysical state raises :class:`NonPhysical`;
    otherwise the failure is reported in the returned flags.
    """
    try:
        spectrum = state.spectrum
    except NonPositiveDefinite as exc:
        if strict:
            raise NonPhysical(f"covariance matrix is not positive definite: {exc}") from exc
        return ValidityReport(True, False, False, None, "covariance matrix is not positive definite")
    physical = bool(spectrum[-1] >= 1.0 - TOL_PHYS)
    if not physical:
        msg = f"symplectic eigenvalue < 1 (min nu = {spectrum[-1]:.12g})"
        if strict:
            raise NonPhysical(msg)
        return ValidityReport(True, False, False, spectrum, msg)
    pure = bool(np.max(np.abs(spectrum - 1.0)) <= TOL_PURE)
    return ValidityReport(True, True, pure, spectrum, "pure" if pure else "mixed")
