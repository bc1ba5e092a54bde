"""Named state families and their closed-form results.

Coherent amplitudes map to quadrature means ``(2 Re alpha, 2 Im alpha)``,
which pairs with the vacuum covariance being the identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import InvalidSpec, NonPhysical, UnsupportedPair
from .hoeffding import INF, HoeffdingResult, Method, _check_r
from .overlap import _lam, _log_g
from .symplectic import TOL_PURE, GaussianState

_Z = np.diag([1.0, -1.0])
_I2 = np.eye(2)


class UnphysicalSpec(InvalidSpec, NonPhysical):
    """Family parameters inside the nominal range but violating ``nu >= 1``."""


@dataclass(frozen=True)
class Coherent:
    re: float = 0.0
    im: float = 0.0

    @property
    def alpha(self) -> complex:
        return complex(self.re, self.im)


@dataclass(frozen=True)
class Thermal:
    nu: float


@dataclass(frozen=True)
class EPR:
    mu: float


@dataclass(frozen=True)
class SqueezedThermal:
    mu: float
    c: float


@dataclass(frozen=True, eq=False)
class Raw:
    mean: np.ndarray
    cov: np.ndarray


StateSpec = Union[Coherent, Thermal, EPR, SqueezedThermal, Raw]


def _finite(name, *values):
    for v in values:
        if not math.isfinite(float(v)):
            raise InvalidSpec(f"{name} must be finite, got {v!r}")


def two_mode_cov(mu: float, c: float) -> np.ndarray:
    """Covariance ``[[mu I, c Z], [c Z, mu I]]`` of a symmetric two-mode state."""
    return np.block([[mu * _I2, c * _Z], [c * _Z, mu * _I2]])


def _st_params(mu: float, c: float) -> tuple[float, float, float]:
    mu, c = float(mu), abs(float(c))
    _finite("mu/c", mu, c)
    if mu < 1.0:
        raise InvalidSpec(f"mu must be >= 1, got {mu!r}")
    if c > mu:
        raise InvalidSpec(f"c must satisfy |c| <= mu, got c={c!r}, mu={mu!r}")
    nu2 = mu * mu - c * c
    if nu2 < (1.0 - TOL_PURE) ** 2:
        raise UnphysicalSpec(
            f"symplectic eigenvalue < 1: nu = sqrt(mu^2 - c^2) = {math.sqrt(nu2):.6g} "
            f"(need c <= sqrt(mu^2 - 1) = {math.sqrt(mu * mu - 1.0):.6g})"
        )
    return mu, c, max(math.sqrt(nu2), 1.0)


def build(spec: StateSpec) -> GaussianState:
    """Construct the Gaussian state described by ``spec``."""
    if isinstance(spec, Coherent):
        _finite("coherent amplitude", spec.re, spec.im)
        return GaussianState(np.array([2.0 * spec.re, 2.0 * spec.im]), np.eye(2))
    if isinstance(spec, Thermal):
        _finite("nu", spec.nu)
        if spec.nu < 1.0:
            raise InvalidSpec(f"thermal nu must be >= 1, got {spec.nu!r}")
        return GaussianState(np.zeros(2), float(spec.nu) * np.eye(2))
    if isinstance(spec, EPR):
        _finite("mu", spec.mu)
        if spec.mu < 1.0:
            raise InvalidSpec(f"EPR mu must be >= 1, got {spec.mu!r}")
        mu = float(spec.mu)
        return GaussianState(np.zeros(4), two_mode_cov(mu, math.sqrt(mu * mu - 1.0)))
    if isinstance(spec, SqueezedThermal):
        mu, c, _ = _st_params(spec.mu, spec.c)
        return GaussianState(np.zeros(4), two_mode_cov(mu, c))
    if isinstance(spec, Raw):
        return GaussianState(spec.mean, spec.cov)
    raise InvalidSpec(f"unknown state spec {spec!r}")


@dataclass(frozen=True)
class STSymplecticData:
    nu: float
    S: np.ndarray


def st_symplectic_data(mu: float, c: float) -> STSymplecticData:
    """Degenerate symplectic eigenvalue and diagonalising matrix of ``V_ST(mu, c)``.

    ``S = [[w+ I, w- Z], [w- Z, w+ I]]`` with ``w+- = sqrt((mu +- nu) / (2 nu))``.
    """
    mu, c, nu = _st_params(mu, c)
    w_plus = math.sqrt((mu + nu) / (2.0 * nu))
    w_minus = math.sqrt(max(mu - nu, 0.0) / (2.0 * nu))
    S = np.block([[w_plus * _I2, w_minus * _Z], [w_minus * _Z, w_plus * _I2]])
    S.setflags(write=False)
    return STSymplecticData(nu=nu, S=S)


def _as_st(spec) -> tuple[float, float]:
    if isinstance(spec, SqueezedThermal):
        return float(spec.mu), abs(float(spec.c))
    if isinstance(spec, EPR):
        return float(spec.mu), math.sqrt(max(float(spec.mu) ** 2 - 1.0, 0.0))
    raise InvalidSpec(f"expected a squeezed-thermal or EPR spec, got {spec!r}")


def st_overlap_ingredients(spec0, spec1, s: float) -> tuple[float, np.ndarray]:
    """``(Pi_s, Sigma_s)`` for two symmetric two-mode states from their analytic Williamson data."""
    s = float(s)
    if not 0.0 < s < 1.0:
        raise InvalidSpec(f"s must lie strictly inside (0, 1), got {s!r}")
    d0 = st_symplectic_data(*_as_st(spec0))
    d1 = st_symplectic_data(*_as_st(spec1))
    nu0 = 1.0 if abs(d0.nu - 1.0) <= TOL_PURE else d0.nu
    nu1 = 1.0 if abs(d1.nu - 1.0) <= TOL_PURE else d1.nu
    log_pi = 2.0 * math.log(2.0) + 2.0 * (_log_g(s, nu0)[0] + _log_g(1.0 - s, nu1)[0])
    sigma = _lam(s, nu0)[0] * (d0.S @ d0.S.T) + _lam(1.0 - s, nu1)[0] * (d1.S @ d1.S.T)
    return math.exp(log_pi), sigma


def epr_fidelity(mu0: float, mu1: float) -> float:
    """``F = 2 / (1 + mu0 mu1 - sqrt((mu0^2 - 1)(mu1^2 - 1)))``."""
    return 2.0 / (1.0 + mu0 * mu1 - math.sqrt((mu0 * mu0 - 1.0) * (mu1 * mu1 - 1.0)))


def epr_divergence_threshold(r: float) -> float:
    """Thermal-pair null vs EPR alternative: the bound is infinite for ``mu`` above this value."""
    return math.sqrt((4.0 * math.exp(r) - 1.0) / 3.0)


def _normalise(spec):
    """Map specs onto the canonical family they belong to (vacuum -> coherent(0), maximal ST -> EPR)."""
    if isinstance(spec, Thermal) and spec.nu == 1.0:
        return Coherent(0.0, 0.0)
    if isinstance(spec, SqueezedThermal):
        mu, c, nu = _st_params(spec.mu, spec.c)
        if nu == 1.0:
            return EPR(mu)
        return SqueezedThermal(mu, c)
    return spec


def _result(r, value, s_star) -> HoeffdingResult:
    return HoeffdingResult(r=r, value=value, s_star=s_star, method=Method.ANALYTIC_CATALOG, boundary=True)


def analytic_qhb(spec0: StateSpec, spec1: StateSpec, r: float) -> HoeffdingResult:
    """Closed-form bound for the supported family pairs.

    Supported: coherent vs coherent, vacuum null vs thermal, thermal null vs
    vacuum, and EPR vs EPR.  Anything else raises :class:`UnsupportedPair`.
    """
    r = _check_r(r)
    a, b = _normalise(spec0), _normalise(spec1)

    if isinstance(a, Coherent) and isinstance(b, Coherent):
        sigma = abs(a.alpha - b.alpha) ** 2
        return _result(r, sigma, 0.0) if r >= sigma else _result(r, INF, None)

    if isinstance(a, Coherent) and a.alpha == 0 and isinstance(b, Thermal):
        return _result(r, math.log((1.0 + b.nu) / 2.0), 0.0)

    if isinstance(a, Thermal) and isinstance(b, Coherent) and b.alpha == 0:
        threshold = math.log((1.0 + a.nu) / 2.0)
        return _result(r, 0.0, 0.0) if r >= threshold else _result(r, INF, None)

    if isinstance(a, EPR) and isinstance(b, EPR):
        sigma = -math.log(epr_fidelity(float(a.mu), float(b.mu)))
        return _result(r, sigma, 0.0) if r >= sigma else _result(r, INF, None)

    raise UnsupportedPair(f"no closed form for the pair {type(a).__name__} vs {type(b).__name__}")
