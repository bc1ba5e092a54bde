import math

import numpy as np
import pytest

from gaussian_hoeffding import (
    EPR,
    Coherent,
    InvalidSpec,
    Raw,
    SqueezedThermal,
    Thermal,
    UnphysicalSpec,
    UnsupportedPair,
    analytic_qhb,
    build,
    hoeffding_bound,
    log_overlap,
    st_overlap_ingredients,
    st_symplectic_data,
    symplectic_form,
)
from gaussian_hoeffding.catalog import two_mode_cov
from gaussian_hoeffding.hoeffding import Method
from gaussian_hoeffding.overlap import lambda_func

Z = np.diag([1.0, -1.0])


def test_build_examples():
    assert np.array_equal(build(Thermal(1.0)).cov, np.eye(2))
    epr = build(EPR(3.0))
    assert np.allclose(epr.cov[:2, 2:], math.sqrt(8) * Z, atol=1e-15)
    assert np.allclose(build(SqueezedThermal(3.0, math.sqrt(8))).cov, epr.cov, atol=1e-15)
    coh = build(Coherent(0.5, -1.0))
    assert np.array_equal(coh.mean, [1.0, -2.0]) and np.array_equal(coh.cov, np.eye(2))


def test_build_st_c0_is_thermal_product():
    V = build(SqueezedThermal(2.5, 0.0)).cov
    assert np.array_equal(V, np.kron(np.eye(2), build(Thermal(2.5)).cov))


def test_negative_c_maps_to_abs():
    assert np.array_equal(build(SqueezedThermal(3.0, -2.0)).cov, build(SqueezedThermal(3.0, 2.0)).cov)


@pytest.mark.parametrize(
    "spec", [Thermal(0.9), EPR(0.5), SqueezedThermal(0.5, 0.0), SqueezedThermal(2.0, 2.5), Thermal(math.nan)]
)
def test_invalid_specs(spec):
    with pytest.raises(InvalidSpec):
        build(spec)


def test_gap_region_is_unphysical_with_distinct_message():
    with pytest.raises(UnphysicalSpec, match="symplectic eigenvalue < 1"):
        build(SqueezedThermal(3.0, 2.9))


def test_raw_passthrough():
    st_ = build(Raw(np.zeros(2), 2 * np.eye(2)))
    assert np.array_equal(st_.cov, 2 * np.eye(2))


@pytest.mark.parametrize("mu", [1.0, 1.5, 2.0, 3.0, 7.0])
def test_maximal_separable_line_is_physical(mu):
    st_ = build(SqueezedThermal(mu, mu - 1.0))
    assert st_.spectrum[0] == pytest.approx(math.sqrt(2 * mu - 1), rel=1e-12)


def test_st_symplectic_data_examples():
    d = st_symplectic_data(3.0, 0.0)
    assert d.nu == 3.0 and np.array_equal(d.S, np.eye(4))
    d = st_symplectic_data(3.0, 2.0)
    assert d.nu == pytest.approx(math.sqrt(5))
    assert d.S[0, 0] == pytest.approx(1.08204, abs=1e-5)
    assert d.S[0, 2] == pytest.approx(0.41330, abs=1e-5)
    assert st_symplectic_data(3.0, math.sqrt(8)).nu == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("mu,c", [(3.0, 0.0), (3.0, 1.0), (3.0, 2.0), (3.0, math.sqrt(8)), (1.7, 0.9), (10.0, 9.9)])
def test_st_symplectic_data_invariants(mu, c):
    d = st_symplectic_data(mu, c)
    om = symplectic_form(2)
    assert np.max(np.abs(d.S @ om @ d.S.T - om)) <= 1e-10
    assert np.max(np.abs(d.S @ (d.nu * np.eye(4)) @ d.S.T - two_mode_cov(mu, c))) <= 1e-10
    wp, wm = d.S[0, 0], d.S[0, 2]
    assert abs(wp**2 - wm**2 - 1.0) <= 1e-12


def test_st_ingredients_examples():
    mu = 2.0
    _, sig = st_overlap_ingredients(SqueezedThermal(mu, 0.0), SqueezedThermal(mu, 0.0), 0.5)
    assert np.allclose(sig, 2 * lambda_func(0.5, mu) * np.eye(4), atol=1e-13)
    pi, sig = st_overlap_ingredients(SqueezedThermal(3.0, 0.0), EPR(3.0), 0.5)
    assert np.allclose(sig, (3 + 2 * math.sqrt(2)) * np.eye(4) + two_mode_cov(3.0, math.sqrt(8)), atol=1e-12)
    # the thermal-vs-EPR shortcut: Pi_s = 4 G_s(mu)^2
    assert pi == pytest.approx(4 * (1 + math.sqrt(2)) ** 2, rel=1e-13)


@pytest.mark.parametrize(
    "a,b",
    [
        (SqueezedThermal(3.0, 1.0), SqueezedThermal(3.0, 2.0)),
        (SqueezedThermal(3.0, 0.0), EPR(3.0)),
        (SqueezedThermal(2.0, 1.0), SqueezedThermal(2.5, 0.3)),
        (EPR(1.5), SqueezedThermal(2.0, 0.5)),
    ],
)
@pytest.mark.parametrize("s", [0.1, 0.3, 0.5, 0.9])
def test_st_ingredients_match_generic(a, b, s):
    pi, sig = st_overlap_ingredients(a, b, s)
    rep = log_overlap(build(a), build(b), s)
    assert pi == pytest.approx(rep.Pi_s, rel=1e-10)
    assert np.max(np.abs(sig - rep.Sigma_s)) <= 1e-10 * max(1.0, np.max(np.abs(sig)))
    ln_c = math.log(pi) - 0.5 * np.linalg.slogdet(sig)[1]
    assert ln_c == pytest.approx(rep.log_C_s, abs=1e-10)


def test_analytic_examples():
    assert analytic_qhb(Coherent(0.0), Coherent(1.0), 2.0).value == pytest.approx(1.0, abs=1e-15)
    res = analytic_qhb(Thermal(1.0), Thermal(3.0), 0.7)
    assert res.value == pytest.approx(math.log(2)) and res.method is Method.ANALYTIC_CATALOG
    assert analytic_qhb(EPR(1.0), EPR(3.0), 2.0).value == pytest.approx(math.log(2), abs=1e-14)
    assert analytic_qhb(EPR(1.0), EPR(3.0), 0.5).is_infinite
    assert analytic_qhb(Thermal(3.0), Thermal(1.0), 1.0).value == 0.0
    assert analytic_qhb(Thermal(3.0), Thermal(1.0), 0.5).is_infinite


@pytest.mark.parametrize(
    "a,b", [(Thermal(2.0), Thermal(3.0)), (SqueezedThermal(3.0, 1.0), SqueezedThermal(3.0, 2.0)), (Coherent(0.5), Thermal(2.0))]
)
def test_unsupported_pairs(a, b):
    with pytest.raises(UnsupportedPair):
        analytic_qhb(a, b, 0.1)


SCAN_R = [0.1, 0.5, 1.0, 2.0]


def _agree(a, b, r):
    exact = analytic_qhb(a, b, r)
    num = hoeffding_bound(build(a), build(b), r)
    if exact.is_infinite:
        return num.is_infinite
    return abs(num.value - exact.value) <= 1e-6


@pytest.mark.parametrize("nu", [1.5, 2.0, 3.0])
def test_numeric_matches_analytic_thermal(nu):
    for r in SCAN_R:
        assert _agree(Thermal(1.0), Thermal(nu), r)
        assert _agree(Thermal(nu), Thermal(1.0), r)


def test_numeric_matches_analytic_coherent_and_epr():
    for r in SCAN_R:
        assert _agree(Coherent(0.0), Coherent(0.5, 0.6), r)
        assert _agree(Coherent(0.3, 0.1), Coherent(-0.4, 0.9), r)
        assert _agree(EPR(1.0), EPR(2.0), r)
        assert _agree(EPR(2.5), EPR(1.2), r)
