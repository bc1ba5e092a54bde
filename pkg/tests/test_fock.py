import math

import numpy as np
import pytest

from gaussian_hoeffding import DimensionMismatch, DomainError, NonHermitian, TruncationTooSmall, build, log_overlap
from gaussian_hoeffding.catalog import SqueezedThermal, Thermal, two_mode_cov
from gaussian_hoeffding.fock import (
    FockOperator,
    annihilation,
    fock_coherent,
    fock_st,
    fock_thermal,
    moments,
    overlap_trace,
)


def test_thermal_examples():
    vac = fock_thermal(1.0, 7)
    assert vac.matrix[0, 0] == 1.0 and vac.trace == 1.0
    th = fock_thermal(3.0, 60)
    assert np.allclose(np.diag(th.matrix), 0.5 ** (np.arange(60) + 1))
    assert 1.0 - th.trace == pytest.approx(2.0**-60, abs=1e-16)
    with pytest.raises(TruncationTooSmall):
        fock_thermal(3.0, 5)
    with pytest.raises(DomainError):
        fock_thermal(0.5, 10)


def test_coherent_examples():
    vac = fock_coherent(0.0, 10)
    assert vac.matrix[0, 0] == 1.0
    one = fock_coherent(1.0, 40)
    n = np.arange(40)
    assert float(np.real(np.sum(n * np.diag(one.matrix)))) == pytest.approx(1.0, abs=1e-10)
    assert float(np.real(np.sum(fock_coherent(0.0, 40).matrix * one.matrix.T))) == pytest.approx(math.exp(-1), abs=1e-12)
    with pytest.raises(TruncationTooSmall):
        fock_coherent(3.0, 10)


def test_coherent_moments_match_convention():
    alpha = 0.4 - 0.7j
    mean, cov = moments(fock_coherent(alpha, 40))
    assert np.allclose(mean, [2 * alpha.real, 2 * alpha.imag], atol=1e-10)
    assert np.allclose(cov, np.eye(2), atol=1e-9)


def test_st_thermal_pair_when_uncorrelated():
    op = fock_st(2.0, 0.0, 30)
    p = fock_thermal(2.0, 30).matrix
    assert np.allclose(op.matrix, np.kron(p, p), atol=1e-15)


def test_st_moments():
    mean, cov = moments(fock_st(3.0, 2.0, 30))
    assert np.allclose(mean, 0.0, atol=1e-12)
    assert np.max(np.abs(cov - two_mode_cov(3.0, 2.0))) <= 1e-6


def test_epr_is_pure_and_matches_schmidt_form():
    D = 30
    op = fock_st(3.0, math.sqrt(8), D)
    purity = float(np.real(np.sum(op.matrix * op.matrix.T)))
    assert purity == pytest.approx(1.0, abs=1e-6)
    # two-mode squeezed vacuum: sqrt(1 - t^2) sum_n t^n |n, n>
    t = math.tanh(0.5 * math.atanh(math.sqrt(8) / 3))
    psi = np.zeros(D * D)
    for k in range(D):
        psi[k * D + k] = math.sqrt(1 - t * t) * t**k
    assert float(psi @ op.matrix @ psi) == pytest.approx(1.0, abs=1e-6)


def test_st_truncation_guard():
    with pytest.raises(TruncationTooSmall):
        fock_st(3.0, 2.0, 10)


def test_overlap_trace_examples():
    th = fock_thermal(2.0, 60)
    assert overlap_trace(th, th, 0.3) == pytest.approx(1.0, abs=1e-10)
    vac = fock_thermal(1.0, 60)
    assert overlap_trace(vac, fock_thermal(3.0, 60), 0.5) == pytest.approx(2**-0.5, abs=1e-12)
    got = math.log(overlap_trace(fock_st(3.0, 1.0), fock_st(3.0, 2.0), 0.3))
    ref = log_overlap(build(SqueezedThermal(3.0, 1.0)), build(SqueezedThermal(3.0, 2.0)), 0.3).log_C_s
    assert got == pytest.approx(ref, abs=1e-6)


def test_overlap_trace_errors():
    with pytest.raises(DimensionMismatch):
        overlap_trace(fock_thermal(2.0, 60), fock_thermal(2.0, 61), 0.5)
    with pytest.raises(DomainError):
        overlap_trace(fock_thermal(2.0, 60), fock_thermal(2.0, 60), 1.0)
    with pytest.raises(NonHermitian):
        FockOperator(dim=2, modes=1, matrix=np.array([[1.0, 1.0], [0.0, 0.0]]))


def test_generic_operator_uses_eigendecomposition():
    a = annihilation(40)
    # thermal state without its spectral factors: same numbers through eigh
    p = fock_thermal(2.0, 40).matrix
    op = FockOperator(dim=40, modes=1, matrix=p.copy())
    ref = overlap_trace(fock_thermal(2.0, 40), fock_thermal(1.0, 40), 0.5)
    assert overlap_trace(op, fock_thermal(1.0, 40), 0.5) == pytest.approx(ref, abs=1e-12)
    assert a.shape == (40, 40)


@pytest.mark.parametrize("s", [0.1, 0.5, 0.9])
def test_swap_identity(s):
    a, b = fock_st(2.0, 1.0), fock_st(2.5, 0.5)
    assert overlap_trace(a, b, s) == pytest.approx(overlap_trace(b, a, 1 - s), abs=1e-10)


def test_pure_inputs_s_independent():
    a, b = fock_coherent(0.2 + 0.1j, 40), fock_coherent(-0.5 + 0.3j, 40)
    vals = [overlap_trace(a, b, s) for s in (0.1, 0.3, 0.5, 0.7, 0.9)]
    assert max(vals) - min(vals) <= 1e-9
    a, b = fock_st(2.0, math.sqrt(3)), fock_st(1.5, math.sqrt(1.25))
    vals = [overlap_trace(a, b, s) for s in (0.1, 0.5, 0.9)]
    assert max(vals) - min(vals) <= 1e-9


@pytest.mark.parametrize(
    "build_pair",
    [
        lambda D: (fock_thermal(1.5, D), fock_thermal(3.0, D)),
        lambda D: (fock_coherent(0.3, D), fock_coherent(1j, D)),
    ],
)
def test_one_mode_d_convergence(build_pair):
    a, b = build_pair(60)
    c, d = build_pair(120)
    for s in (0.1, 0.5, 0.9):
        assert abs(overlap_trace(a, b, s) - overlap_trace(c, d, s)) < 1e-8


@pytest.mark.parametrize("pair", [((3.0, 1.0), (3.0, 2.0)), ((2.5, 0.0), (3.0, math.sqrt(8)))])
def test_two_mode_d_convergence(pair):
    (m0, c0), (m1, c1) = pair
    a, b = fock_st(m0, c0, 30), fock_st(m1, c1, 30)
    c, d = fock_st(m0, c0, 60), fock_st(m1, c1, 60)
    for s in (0.1, 0.5, 0.9):
        assert abs(overlap_trace(a, b, s) - overlap_trace(c, d, s)) < 1e-8


def test_thermal_closed_form_against_gaussian():
    for nu0, nu1 in [(1.2, 3.0), (2.0, 2.5)]:
        for s in (0.1, 0.5, 0.9):
            got = math.log(overlap_trace(fock_thermal(nu0), fock_thermal(nu1), s))
            ref = log_overlap(build(Thermal(nu0)), build(Thermal(nu1)), s).log_C_s
            assert got == pytest.approx(ref, abs=1e-10)
