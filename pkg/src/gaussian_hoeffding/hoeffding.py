"""Quantum Hoeffding bound ``H(r) = sup_{0<=s<1} (-r s - ln C_s) / (1 - s)``."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DimensionMismatch, DomainError
from .overlap import OverlapKernel, gaussian_fidelity_pure
from .symplectic import GaussianState, validate_state

INF = math.inf
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


class Method(str, enum.Enum):
    GAUSSIAN_NUMERIC = "gaussian-numeric"
    PURE_FIDELITY = "pure-fidelity"
    ANALYTIC_CATALOG = "analytic-catalog"


@dataclass(frozen=True)
class OptimizerOptions:
    """Settings of the grid-then-golden-section maximisation over ``s``.

    ``divergence_deltas`` are the distances from ``s = 1`` probed to detect a
    ``1/(s-1)`` pole; the bound is declared infinite when the probed objective
    increases strictly along them and its last value exceeds ``p_cap``.
    """

    grid_size: int = 201
    eps_s: float = 1e-6
    p_cap: float = 1e4
    s_tol: float = 1e-10
    divergence_deltas: tuple = (1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8)

    def __post_init__(self):
        if self.grid_size < 3:
            raise DomainError("grid_size must be at least 3")
        if not 0.0 < self.eps_s < 0.5:
            raise DomainError("eps_s must lie in (0, 0.5)")
        if not self.p_cap > 0.0:
            raise DomainError("p_cap must be positive")
        if not self.s_tol > 0.0:
            raise DomainError("s_tol must be positive")
        deltas = tuple(float(d) for d in self.divergence_deltas)
        if not deltas or any(not 0.0 < d < 1.0 for d in deltas) or list(deltas) != sorted(deltas, reverse=True):
            raise DomainError("divergence_deltas must be decreasing values in (0, 1)")
        object.__setattr__(self, "divergence_deltas", deltas)


DEFAULT_OPTIONS = OptimizerOptions()


@dataclass(frozen=True)
class CompanionBounds:
    H_M: float
    H_Y: float
    H_F: Optional[float] = None


@dataclass(frozen=True)
class HoeffdingResult:
    r: float
    value: float
    s_star: Optional[float]
    method: Method
    boundary: bool = False
    companion: Optional[CompanionBounds] = field(default=None, compare=False)

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.value)


def objective(r: float, s: float, log_C_s: float) -> float:
    """``P(r, s) = (-r s - ln C_s) / (1 - s)``."""
    if not 0.0 < s < 1.0:
        raise DomainError(f"s must lie strictly inside (0, 1), got {s!r}")
    return (-r * s - log_C_s) / (1.0 - s)


def _check_r(r: float) -> float:
    r = float(r)
    if not (r > 0.0 and math.isfinite(r)):
        raise DomainError(f"r must be a positive finite number, got {r!r}")
    return r


def golden_section_max(f: Callable[[float], float], a: float, b: float, tol: float, max_iter: int = 200):
    """Maximise a unimodal ``f`` on ``[a, b]``; returns ``(x, f(x))``."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


@dataclass(frozen=True)
class _Sup:
    value: float
    s_star: Optional[float]
    boundary: bool


def _maximise(log_fn, log_at_zero: float, r: float, opts: OptimizerOptions) -> _Sup:
    """Supremum over ``0 <= s < 1`` of the objective built on ``log_fn``.

    ``log_fn`` maps an array of ``s`` in (0, 1) to log-overlap values and
    ``log_at_zero`` is the exact ``s -> 0`` limit.
    """

    def p_of(s):
        s = np.asarray(s, float)
        return (-r * s - log_fn(s)) / (1.0 - s)

    s_div = 1.0 - np.asarray(opts.divergence_deltas)
    p_div = p_of(s_div)
    if np.all(np.diff(p_div) > 0.0) and p_div[-1] > opts.p_cap:
        return _Sup(INF, None, True)

    s_grid = np.linspace(opts.eps_s, 1.0 - opts.eps_s, opts.grid_size)
    p_grid = p_of(s_grid)
    if np.any(np.isnan(p_grid)) or np.any(np.isnan(p_div)):
        raise ArithmeticError("objective evaluated to NaN")
    i = int(np.argmax(p_grid))
    lo, hi = s_grid[max(i - 1, 0)], s_grid[min(i + 1, len(s_grid) - 1)]
    s_ref, p_ref = golden_section_max(lambda x: float(p_of([x])[0]), lo, hi, opts.s_tol)

    p_zero = -log_at_zero
    candidates = [(p_zero, 0.0), (float(p_grid[i]), float(s_grid[i])), (p_ref, s_ref)]
    candidates += [(float(p), float(s)) for p, s in zip(p_div, s_div)]
    # ties go to the smaller s
    value, s_star = max(candidates, key=lambda c: (c[0], -c[1]))
    boundary = s_star <= opts.eps_s or s_star >= 1.0 - opts.eps_s
    return _Sup(float(value), float(s_star), boundary)


def _floor0(x: float) -> float:
    return x if x > 0.0 else 0.0


def fidelity_hoeffding(F: float, r: float) -> HoeffdingResult:
    """Closed-form bound from the fidelity: ``ln(1/F)`` if ``r >= ln(1/F)``, else infinite.

    In the finite branch the objective ``ln(1/F) + (ln(1/F) - r) s / (1 - s)``
    is maximised at ``s = 0``, which is reported as ``s_star``.
    """
    F = float(F)
    if not 0.0 < F <= 1.0:
        raise DomainError(f"fidelity must lie in (0, 1], got {F!r}")
    r = _check_r(r)
    sigma = -math.log(F) if F < 1.0 else 0.0
    if r >= sigma:
        return HoeffdingResult(r=r, value=sigma, s_star=0.0, method=Method.PURE_FIDELITY, boundary=True)
    return HoeffdingResult(r=r, value=INF, s_star=None, method=Method.PURE_FIDELITY, boundary=True)


def _check_states(rho0: GaussianState, rho1: GaussianState):
    if rho0.n != rho1.n:
        raise DimensionMismatch(f"states have {rho0.n} and {rho1.n} modes")
    return validate_state(rho0), validate_state(rho1)


def companion_bounds(
    rho0: GaussianState,
    rho1: GaussianState,
    r: float,
    opts: OptimizerOptions = DEFAULT_OPTIONS,
    *,
    kernel: Optional[OverlapKernel] = None,
) -> CompanionBounds:
    """Lower bounds ``H_M``, ``H_Y`` and, for a pure null state, the upper bound ``H_F``.

    ``H_M`` and ``H_Y`` are floored at zero, the trivial lower bound on ``H``.
    """
    r = _check_r(r)
    rep0, _ = _check_states(rho0, rho1)
    k = kernel if kernel is not None else OverlapKernel(rho0, rho1)
    h_m = _maximise(k.log_m, k.log_m_at_zero(), r, opts).value
    h_y = _maximise(k.log_y, k.log_y_at_zero(), r, opts).value
    h_f = None
    if rep0.pure:
        h_f = fidelity_hoeffding(gaussian_fidelity_pure(rho0, rho1), r).value
    return CompanionBounds(H_M=_floor0(h_m), H_Y=_floor0(h_y), H_F=h_f)


def hoeffding_bound(
    rho0: GaussianState,
    rho1: GaussianState,
    r: float,
    opts: OptimizerOptions = DEFAULT_OPTIONS,
    *,
    with_bounds: bool = False,
) -> HoeffdingResult:
    """Quantum Hoeffding bound for the null state ``rho0`` against ``rho1``.

    Two pure states are handled exactly through their fidelity.  Otherwise
    the objective is maximised numerically; an infinite bound is reported as
    ``value = math.inf``.
    """
    r = _check_r(r)
    rep0, rep1 = _check_states(rho0, rho1)
    if rep0.pure and rep1.pure:
        res = fidelity_hoeffding(gaussian_fidelity_pure(rho0, rho1), r)
        if with_bounds:
            res = HoeffdingResult(
                r=res.r, value=res.value, s_star=res.s_star, method=res.method,
                boundary=res.boundary, companion=companion_bounds(rho0, rho1, r, opts),
            )
        return res

    kernel = OverlapKernel(rho0, rho1)
    sup = _maximise(kernel.log_c, kernel.log_c_at_zero, r, opts)
    companion = companion_bounds(rho0, rho1, r, opts, kernel=kernel) if with_bounds else None
    return HoeffdingResult(
        r=r,
        value=_floor0(sup.value),
        s_star=sup.s_star,
        method=Method.GAUSSIAN_NUMERIC,
        boundary=sup.boundary,
        companion=companion,
    )


@dataclass(frozen=True)
class AsymptoticRates:
    beta_M: float
    alpha_bound: Optional[float]


def asymptotic_rates(H: float, M: int, r: Optional[float] = None) -> AsymptoticRates:
    """Error probabilities ``~ exp(-rate * M) / 2`` after ``M`` copies.

    ``beta_M`` is the false-negative probability for exponent ``H`` (zero when
    ``H`` is infinite); ``alpha_bound`` is the false-positive envelope for
    exponent ``r`` when one is given.
    """
    if int(M) != M or M < 1:
        raise DomainError(f"M must be a positive integer, got {M!r}")
    beta = 0.0 if math.isinf(H) else 0.5 * math.exp(-H * M)
    alpha = None if r is None else 0.5 * math.exp(-r * M)
    return AsymptoticRates(beta_M=beta, alpha_bound=alpha)
