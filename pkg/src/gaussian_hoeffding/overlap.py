"""Gaussian s-overlap ``C_s = Tr(rho0^s rho1^(1-s))`` and its spectral upper bounds.

All quantities are computed in the log domain.  The power differences
``(x+1)^s - (x-1)^s`` are evaluated through ``expm1``/``log1p`` so that they
stay accurate as ``s -> 0`` and as ``x -> 1``.  A symplectic eigenvalue equal
to one (a pure mode) uses ``(x-1)^s = 0`` for every ``s >= 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DimensionMismatch, DomainError, FactorizationFailure, NotPure
from .symplectic import TOL_PHYS, TOL_PURE, GaussianState, validate_state

LN2 = float(np.log(2.0))


def _snap(spectrum) -> np.ndarray:
    nu = np.asarray(spectrum, dtype=np.float64)
    if np.any(nu < 1.0 - TOL_PHYS):
        raise DomainError(f"symplectic eigenvalues must be >= 1, got {nu.min()!r}")
    return np.where(np.abs(nu - 1.0) <= TOL_PURE, 1.0, np.maximum(nu, 1.0))


def _log_pow_diff(x, s):
    """``log((x+1)^s - (x-1)^s)`` broadcast over ``x`` and ``s`` (may be -inf at s=0)."""
    x, s = np.broadcast_arrays(np.atleast_1d(np.asarray(x, float)), np.atleast_1d(np.asarray(s, float)))
    out = s * np.log1p(x)
    mixed = x > 1.0
    with np.errstate(divide="ignore"):
        lr = np.log1p(-2.0 / (x[mixed] + 1.0))
        out[mixed] += np.log(-np.expm1(s[mixed] * lr))
    return out


def _log_pow_sum(x, s):
    """``log((x+1)^s + (x-1)^s)``."""
    x, s = np.broadcast_arrays(np.atleast_1d(np.asarray(x, float)), np.atleast_1d(np.asarray(s, float)))
    out = s * np.log1p(x)
    mixed = x > 1.0
    lr = np.log1p(-2.0 / (x[mixed] + 1.0))
    out[mixed] += np.log1p(np.exp(s[mixed] * lr))
    return out


def _log_g(s, x):
    return s * LN2 - _log_pow_diff(x, s)


def _lam(s, x):
    x, s = np.broadcast_arrays(np.atleast_1d(np.asarray(x, float)), np.atleast_1d(np.asarray(s, float)))
    out = np.ones(x.shape)
    mixed = x > 1.0
    with np.errstate(divide="ignore"):
        e = s[mixed] * np.log1p(-2.0 / (x[mixed] + 1.0))
        out[mixed] = -(1.0 + np.exp(e)) / np.expm1(e)
    return out


def _check_args(s, x, *, name="s"):
    s = float(s)
    x = float(x)
    if not 0.0 < s <= 1.0:
        raise DomainError(f"{name} must lie in (0, 1], got {s!r}")
    if not x >= 1.0:
        raise DomainError(f"x must be >= 1, got {x!r}")
    return s, x


def g_func(s: float, x: float) -> float:
    """``G_s(x) = 2^s / ((x+1)^s - (x-1)^s)``; equals 1 at ``x = 1``."""
    s, x = _check_args(s, x)
    return float(np.exp(_log_g(s, x))[0])


def lambda_func(s: float, x: float) -> float:
    """``Lambda_s(x) = ((x+1)^s + (x-1)^s) / ((x+1)^s - (x-1)^s)``."""
    s, x = _check_args(s, x)
    return float(_lam(s, x)[0])


def _check_spectra(spectrum0, spectrum1):
    nu0 = _snap(np.atleast_1d(spectrum0))
    nu1 = _snap(np.atleast_1d(spectrum1))
    if nu0.shape != nu1.shape or nu0.ndim != 1:
        raise DimensionMismatch(f"spectra have different lengths: {nu0.shape} vs {nu1.shape}")
    return nu0, nu1


def _log_minkowski(nu0, nu1, s):
    """Vectorised ``ln M_s`` for an array of ``s`` (shape (m,)); spectra snapped."""
    n = nu0.shape[0]
    s = np.asarray(s, float)[:, None]
    log_psi_s = (_log_pow_sum(nu0, s) + _log_pow_diff(nu1, 1.0 - s)) / n
    log_psi_t = (_log_pow_sum(nu1, 1.0 - s) + _log_pow_diff(nu0, s)) / n
    return n * np.log(4.0) - n * np.logaddexp(log_psi_s.sum(axis=1), log_psi_t.sum(axis=1))


def _log_young(nu0, nu1, s):
    n = nu0.shape[0]
    s = np.asarray(s, float)[:, None]
    log_gamma0 = -0.5 * _log_pow_diff(nu0, 2.0 * s)
    log_gamma1 = -0.5 * _log_pow_diff(nu1, 2.0 * (1.0 - s))
    return n * LN2 + (log_gamma0 + log_gamma1).sum(axis=1)


def _check_open_s(s):
    s = float(s)
    if not 0.0 < s < 1.0:
        raise DomainError(f"s must lie strictly inside (0, 1), got {s!r}")
    return s


def log_minkowski_bound(spectrum0, spectrum1, s: float) -> float:
    """``ln M_s``, the Minkowski-determinant upper bound on ``ln C_s``."""
    s = _check_open_s(s)
    nu0, nu1 = _check_spectra(spectrum0, spectrum1)
    return float(_log_minkowski(nu0, nu1, [s])[0])


def log_young_bound(spectrum0, spectrum1, s: float) -> float:
    """``ln Y_s``, the Young-inequality upper bound (weaker than Minkowski)."""
    s = _check_open_s(s)
    nu0, nu1 = _check_spectra(spectrum0, spectrum1)
    return float(_log_young(nu0, nu1, [s])[0])


@dataclass(frozen=True)
class OverlapReport:
    s: float
    log_C_s: float
    log_M_s: float
    log_Y_s: float
    Pi_s: float
    Sigma_s: np.ndarray

    @property
    def C_s(self) -> float:
        return float(np.exp(self.log_C_s))

    @property
    def M_s(self) -> float:
        return float(np.exp(self.log_M_s))

    @property
    def Y_s(self) -> float:
        return float(np.exp(self.log_Y_s))


def _check_pair(rho0: GaussianState, rho1: GaussianState):
    if rho0.n != rho1.n:
        raise DimensionMismatch(f"states have {rho0.n} and {rho1.n} modes")
    validate_state(rho0)
    validate_state(rho1)


def _mode_projectors(S: np.ndarray) -> np.ndarray:
    n = S.shape[0] // 2
    blocks = S.reshape(2 * n, n, 2).transpose(1, 0, 2)
    return np.einsum("kia,kja->kij", blocks, blocks)


def _log_vacuum_overlap(cov: np.ndarray, mean: np.ndarray) -> float:
    """``ln <0|sigma|0>`` for a Gaussian state with the given moments."""
    m = cov.shape[0] // 2
    L = np.eye(2 * m) + cov
    try:
        chol = np.linalg.cholesky(L)
    except np.linalg.LinAlgError as exc:
        raise FactorizationFailure("I + V is not positive definite") from exc
    z = np.linalg.solve(chol, mean)
    return m * LN2 - np.sum(np.log(np.diag(chol))) - 0.5 * float(z @ z)


class OverlapKernel:
    """Precomputed pair data for repeated evaluation of ``ln C_s``.

    ``Sigma_s`` is assembled as ``sum_k Lambda_s(nu0_k) P0_k + sum_k
    Lambda_{1-s}(nu1_k) P1_k`` where ``P_k = S[:, 2k:2k+2] S[:, 2k:2k+2]^T``, so
    batches of ``s`` values are handled with a single stacked Cholesky call.
    """

    def __init__(self, rho0: GaussianState, rho1: GaussianState):
        _check_pair(rho0, rho1)
        self.rho0 = rho0
        self.rho1 = rho1
        self.n = rho0.n
        w0, w1 = rho0.williamson, rho1.williamson
        self.nu0 = _snap(w0.spectrum)
        self.nu1 = _snap(w1.spectrum)
        self.S0, self.S1 = w0.S, w1.S
        self.P0 = _mode_projectors(w0.S)
        self.P1 = _mode_projectors(w1.S)
        self.d = np.asarray(rho0.mean - rho1.mean)
        self.zero_mean = not np.any(self.d)

    def sigma(self, s) -> np.ndarray:
        s = np.atleast_1d(np.asarray(s, float))[:, None]
        lam0 = _lam(s, self.nu0)
        lam1 = _lam(1.0 - s, self.nu1)
        return np.einsum("mk,kij->mij", lam0, self.P0) + np.einsum("mk,kij->mij", lam1, self.P1)

    def log_pi(self, s) -> np.ndarray:
        s = np.atleast_1d(np.asarray(s, float))[:, None]
        return self.n * LN2 + (_log_g(s, self.nu0) + _log_g(1.0 - s, self.nu1)).sum(axis=1)

    def log_c(self, s) -> np.ndarray:
        """Vectorised ``ln C_s`` for ``0 < s < 1``."""
        sig = self.sigma(s)
        try:
            chol = np.linalg.cholesky(sig)
        except np.linalg.LinAlgError as exc:
            raise FactorizationFailure("Sigma_s is not positive definite") from exc
        logdet = 2.0 * np.log(np.diagonal(chol, axis1=1, axis2=2)).sum(axis=1)
        out = self.log_pi(s) - 0.5 * logdet
        if not self.zero_mean:
            d = np.broadcast_to(self.d, (sig.shape[0], 2 * self.n))[..., None]
            z = np.linalg.solve(chol, d)[..., 0]
            out -= 0.5 * np.einsum("mi,mi->m", z, z)
        return out

    def log_m(self, s) -> np.ndarray:
        return _log_minkowski(self.nu0, self.nu1, np.atleast_1d(s))

    def log_y(self, s) -> np.ndarray:
        return _log_young(self.nu0, self.nu1, np.atleast_1d(s))

    @cached_property
    def log_c_at_zero(self) -> float:
        """``lim_{s->0+} ln C_s = ln Tr(P0 rho1)`` with ``P0`` the support projector of ``rho0``.

        Undoing the Gaussian unitary that puts ``rho0`` in Williamson form, the
        projector is the vacuum on the pure modes times the identity on the
        rest, so the trace is a vacuum overlap of a reduced Gaussian state.
        """
        return self._support_overlap(self.S0, self.nu0, self.rho1.cov, self.rho1.mean - self.rho0.mean)

    @cached_property
    def log_c_at_one(self) -> float:
        """``lim_{s->1-} ln C_s = ln Tr(rho0 P1)``."""
        return self._support_overlap(self.S1, self.nu1, self.rho0.cov, self.rho0.mean - self.rho1.mean)

    @staticmethod
    def _support_overlap(S, nu, cov, shift) -> float:
        pure = np.flatnonzero(nu == 1.0)
        if pure.size == 0:
            return 0.0
        Sinv = np.linalg.inv(S)
        idx = np.ravel([[2 * k, 2 * k + 1] for k in pure])
        cov_t = (Sinv @ cov @ Sinv.T)[np.ix_(idx, idx)]
        mean_t = (Sinv @ shift)[idx]
        return _log_vacuum_overlap(cov_t, mean_t)

    def log_m_at_zero(self) -> float:
        return float(_log_minkowski(self.nu0, self.nu1, [0.0])[0])

    def log_y_at_zero(self) -> float:
        with np.errstate(divide="ignore"):
            return float(_log_young(self.nu0, self.nu1, [0.0])[0])

    def report(self, s: float) -> OverlapReport:
        s = _check_open_s(s)
        return OverlapReport(
            s=s,
            log_C_s=float(self.log_c([s])[0]),
            log_M_s=float(self.log_m([s])[0]),
            log_Y_s=float(self.log_y([s])[0]),
            Pi_s=float(np.exp(self.log_pi([s])[0])),
            Sigma_s=self.sigma([s])[0],
        )


def log_overlap(rho0: GaussianState, rho1: GaussianState, s: float) -> OverlapReport:
    """Compute ``ln C_s`` together with ``Pi_s``, ``Sigma_s`` and the bounds.

    Parameters
    ----------
    rho0, rho1 : GaussianState
        Null and alternative states; both must be physical with equal mode count.
    s : float
        Overlap parameter, strictly inside (0, 1).
    """
    s = _check_open_s(s)
    return OverlapKernel(rho0, rho1).report(s)


def log_fidelity_pure(rho0: GaussianState, rho1: GaussianState) -> float:
    """``ln F`` between a pure Gaussian ``rho0`` and an arbitrary ``rho1``."""
    if rho0.n != rho1.n:
        raise DimensionMismatch(f"states have {rho0.n} and {rho1.n} modes")
    if not validate_state(rho0).pure:
        raise NotPure("the first state must be pure")
    validate_state(rho1)
    if np.array_equal(rho0.cov, rho1.cov) and np.array_equal(rho0.mean, rho1.mean):
        return 0.0
    n = rho0.n
    L = rho0.cov + rho1.cov
    try:
        chol = np.linalg.cholesky(L)
    except np.linalg.LinAlgError as exc:
        raise FactorizationFailure("V0 + V1 is not positive definite") from exc
    z = np.linalg.solve(chol, rho0.mean - rho1.mean)
    return float(n * LN2 - np.sum(np.log(np.diag(chol))) - 0.5 * z @ z)


def gaussian_fidelity_pure(rho0: GaussianState, rho1: GaussianState) -> float:
    """Fidelity ``2^n / sqrt(det L) * exp(-d^T L^-1 d / 2)`` with ``L = V0 + V1``."""
    return float(min(1.0, np.exp(log_fidelity_pure(rho0, rho1))))
