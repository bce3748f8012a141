from fractions import Fraction

import numpy as np
import pytest
from numpy.testing import assert_allclose

from ptlz.heun_integrals import (
    RnRecursionAux,
    airy_exact_triple,
    airy_q_closed_form,
    airy_r_closed_form,
    airy_r_exact,
    airy_triples,
    antiderivative_dy1dy2,
    antiderivative_y1y2,
    bessel_closed_p,
    bessel_closed_q,
    bessel_recursion_step,
    bessel_triples,
    explicit_r3_r6,
    integral_y1_dy2,
    integral_y1y2,
    lmn,
    rn_airy,
    rn_bessel,
    rn_general_recursive,
    rn_series,
    rn_series_coeffs,
    series_triples,
    table_r3_r6,
    third_order_operator,
)
from ptlz.model import QuarticCoeffs
from ptlz.oracle import quadrature
from ptlz.series import TruncatedSeries
from ptlz.specfun import airy_fundamental_pair, quartic_pair, series_pair

GENERIC = QuarticCoeffs(1, -2j, 2, 0, 1)


def fd(f, x, h=1e-3):
    # fourth-order central difference
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h)


def _airy_residual(R, n):
    """Exact ``R''' - 4 z R' - 2 R - 2 z^n`` as a coefficient list."""
    R = list(R) + [Fraction(0)] * 4
    out = [Fraction(0)] * len(R)
    for k in range(len(R)):
        d3 = (k + 1) * (k + 2) * (k + 3) * R[k + 3] if k + 3 < len(R) else 0
        d1 = k * R[k] if k >= 1 else 0
        out[k] = d3 - 4 * d1 - 2 * R[k] - (2 if k == n else 0)
    return out


# Airy -----------------------------------------------------------------------

def test_airy_low_orders():
    P, Q, R = airy_exact_triple(0)
    assert (R, Q, P) == ([-1], [0], [0, 1])
    P, Q, R = airy_exact_triple(3)
    assert R == [Fraction(-3, 7), 0, 0, Fraction(-1, 7)]
    assert Q == [0, 0, Fraction(3, 7)]
    assert P == [0, 0, 0, 0, Fraction(1, 7)]
    assert airy_r_exact(5) == [0, 0, Fraction(-6, 11), 0, 0, Fraction(-1, 11)]


@pytest.mark.parametrize("n", range(15))
def test_airy_exact_solves_third_order_equation(n):
    assert all(c == 0 for c in _airy_residual(airy_r_exact(n), n))


@pytest.mark.parametrize("n", range(15))
def test_airy_closed_form_sums(n):
    assert airy_r_closed_form(n) == airy_r_exact(n)
    Q = airy_exact_triple(n)[1]
    closed = airy_q_closed_form(n)
    assert closed + [0] * (len(Q) - len(closed)) == Q + [0] * (len(closed) - len(Q))


def test_rn_airy_series_consistency():
    tr = rn_airy(4, 20)
    assert tr.var == "z" and tr.regime == "airy"
    assert tr.Q.is_close(-tr.R.differentiate())
    z = TruncatedSeries.monomial(1, 20, "z")
    assert tr.P.is_close(tr.R.differentiate().differentiate().scale(0.5) - z * tr.R)


# series path ----------------------------------------------------------------

def test_rn_series_pure_quartic_goldens():
    beta = 0.9
    q = QuarticCoeffs.pure_quartic(beta)
    r0 = rn_series(q, 0, 30).R
    assert_allclose([r0[3], r0[9]], [1 / 3, -5 / 378 * beta**2], rtol=1e-14)
    r2 = rn_series(q, 2, 30).R
    assert_allclose([r2[5], r2[11]], [1 / 30, -7 / 7425 * beta**2], rtol=1e-14)


@pytest.mark.parametrize("q", [GENERIC, QuarticCoeffs(0.3, 1j, -2, 0.5, 2), QuarticCoeffs.pure_quartic(1.2)])
@pytest.mark.parametrize("n", [0, 3, 7])
def test_rn_series_residual_and_invariants(q, n):
    tr = rn_series(q, n, 50)
    res = tr.third_order_residual()
    assert np.max(np.abs(res.coeffs[:45])) < 1e-12
    assert tr.Q.is_close(-tr.R.differentiate())
    assert tr.R[0] == tr.R[1] == tr.R[2] == 0


def test_rn_series_capacity():
    with pytest.raises(ValueError, match="order"):
        rn_series(GENERIC, 10, 15)
    with pytest.raises(ValueError):
        rn_series(GENERIC, -1)


# Bessel ---------------------------------------------------------------------

def test_bessel_seeds():
    beta = 0.8
    t3 = rn_bessel(beta, 3, 20)
    assert_allclose(t3.R.coeffs[:3], [1 / (4 * beta**2), 0, 0])
    assert np.max(np.abs(t3.Q.coeffs)) == 0
    assert_allclose(t3.P[4], 0.25)
    t5 = rn_bessel(beta, 5, 20)
    assert_allclose(t5.P.coeffs[:7], [1 / (8 * beta**2), 0, 0, 0, 0, 0, 1 / 8], atol=1e-15)


def test_bessel_r9():
    beta = 0.7
    r9 = rn_bessel(beta, 9, 30).R
    expect = np.zeros(31)
    expect[6] = 1 / (16 * beta**2)
    expect[0] = -15 / (16 * beta**4)
    assert_allclose(r9.coeffs.real, expect, atol=1e-14)


def test_bessel_closed_form_matches_series():
    beta = 1.1
    q = QuarticCoeffs.pure_quartic(beta)
    for n in (0, 1, 2, 6, 7, 8):
        a = rn_bessel(beta, n, 40).R
        b = rn_series(q, n, 40).R
        assert_allclose(a.coeffs[:22], b.coeffs[:22], rtol=1e-12, atol=1e-14)


def test_bessel_displayed_p_and_q():
    beta = 0.9
    for n in (0, 1, 2):
        tr = rn_bessel(beta, n, 40)
        assert tr.Q.truncate(36).is_close(bessel_closed_q(beta, n, 36), rtol=1e-12, atol=1e-16)
        assert tr.P.truncate(36).is_close(bessel_closed_p(beta, n, 36), rtol=1e-12, atol=1e-16)


@pytest.mark.parametrize("n", range(9))
def test_bessel_recursion_maps_series_to_series(n):
    beta = 1.0
    q = QuarticCoeffs.pure_quartic(beta)
    stepped = bessel_recursion_step(rn_series(q, n, 60).R, n, beta)
    direct = rn_series(q, n + 6, 60).R
    assert_allclose(stepped.coeffs, direct.coeffs, atol=1e-10)


def test_bessel_residual_all_branches():
    beta = 1.3
    q = QuarticCoeffs.pure_quartic(beta)
    for n in range(13):
        tr = rn_bessel(beta, n, 50)
        r = third_order_operator(tr.R, q) - TruncatedSeries.monomial(n, tr.R.order, coeff=2.0)
        assert np.max(np.abs(r.coeffs[:45])) < 1e-10


def test_bessel_rejects_zero_beta():
    with pytest.raises(ValueError):
        rn_bessel(0.0, 1)


# revised recursion ----------------------------------------------------------

def _seeds(q, order=62):
    return [TruncatedSeries(rn_series_coeffs(q, k, order)) for k in range(3)]


def test_revised_recursion_r3_display():
    q = QuarticCoeffs(0.4, 1j, -0.7, 0.3, 1.5)
    seeds = _seeds(q)
    rec = rn_general_recursive(q, seeds, 6)
    A0, A1, A2, A3, A4 = q.coeffs
    one = TruncatedSeries.constant(1.0, 62)
    r3 = (one - seeds[2].scale(3 * A3) - seeds[1].scale(2 * A2) - seeds[0].scale(A1)).scale(1 / (4 * A4))
    assert rec[3].R.is_close(r3, rtol=1e-13, atol=1e-15)


def test_explicit_and_table_forms_match_recursion():
    q = QuarticCoeffs(0.4, 1j, -0.7, 0.3, 1.5)
    seeds = _seeds(q)
    rec = rn_general_recursive(q, seeds, 6)
    ex, tb = explicit_r3_r6(q, seeds), table_r3_r6(q, seeds)
    for n in range(3, 7):
        assert ex[n].is_close(rec[n].R, rtol=1e-12, atol=1e-14)
        assert tb[n].is_close(rec[n].R, rtol=1e-12, atol=1e-14)


def test_r6_constant_term_has_no_a0():
    # the -3/(10 A4) R0 term follows from the recursion itself
    q = QuarticCoeffs(0.0, 0.0, 0.0, 0.0, 2.0)
    aux = RnRecursionAux(q)
    assert aux.g(3, 1) == 0
    seeds = [TruncatedSeries.constant(1.0, 10), TruncatedSeries.zeros(10), TruncatedSeries.zeros(10)]
    r6 = rn_general_recursive(q, seeds, 6)[6].R
    assert r6[0] == pytest.approx(-3 / (10 * 2.0))


def test_recursion_needs_a4():
    with pytest.raises(ValueError):
        RnRecursionAux(QuarticCoeffs(1, 1, 1, 1, 0))


def test_revised_recursion_offset_is_homogeneous():
    pair = series_pair(GENERIC, 160)
    seeds = _seeds(GENERIC)
    rec = rn_general_recursive(GENERIC, seeds, 6, regime="generic-series")
    x = np.linspace(-0.8, 0.8, 41)
    for n in range(3, 7):
        ser = rn_series(GENERIC, n, 60, regime="generic-series")
        diff = fd(lambda s: antiderivative_y1y2(rec[n], pair, s) - antiderivative_y1y2(ser, pair, s), x)
        assert np.max(np.abs(diff)) < 1e-8
        # third-order residual of the offset vanishes
        off = rec[n].R.truncate(55) - ser.R.truncate(55)
        assert np.max(np.abs(third_order_operator(off, GENERIC).coeffs[:50])) < 1e-10


def test_sum_rule_residual_is_homogeneous():
    # sum_k k A_k R_(k-1) - 1 solves the homogeneous third-order equation
    tr = series_triples(GENERIC, 60)
    A = GENERIC.coeffs
    s = sum((tr[k - 1].R.scale(k * A[k]) for k in range(1, 5)), TruncatedSeries.zeros(60)) - 1.0
    assert np.max(np.abs(third_order_operator(s, GENERIC).coeffs[:50])) < 1e-10


# antiderivatives --------------------------------------------------------------

def test_antiderivative_quartic_vs_quadrature():
    pair, tr = quartic_pair(1.0), bessel_triples(1.0, 60)
    val = integral_y1y2(tr[0], pair, 0.0, 1.0)
    ref = quadrature(lambda t: pair.values(t)[0] * pair.values(t)[2], 0.0, 1.0, 1e-12)
    assert abs(val - ref) < 1e-8


def test_antiderivative_at_zero_is_finite():
    pair, tr = quartic_pair(1.0), bessel_triples(1.0, 60)
    assert np.isfinite(antiderivative_y1y2(tr[0], pair, 0.0))


def test_antiderivative_derivative_n0():
    pair, tr = quartic_pair(1.0), bessel_triples(1.0, 60)
    x = 0.7
    y1, _, y2, _ = pair.values(x)
    assert abs(fd(lambda s: antiderivative_y1y2(tr[0], pair, s), x) - y1 * y2) < 1e-6


def test_regime_mismatch():
    with pytest.raises(ValueError, match="regime"):
        antiderivative_y1y2(rn_airy(1), quartic_pair(1.0), 0.3)


def test_integral_y1_dy2_n0_identity():
    pair = quartic_pair(1.0)
    got = integral_y1_dy2(0, pair, 0.2, 0.9)
    f = lambda t: 0.5 * (pair.values(t)[0] * pair.values(t)[2] + pair.wronskian * t)  # noqa: E731
    assert got == pytest.approx(f(0.9) - f(0.2))


@pytest.mark.parametrize("n", [0, 1, 3])
def test_integral_y1_dy2_vs_quadrature(n):
    pair, tr = quartic_pair(1.0), bessel_triples(1.0, 60)
    got = integral_y1_dy2(n, pair, 0.0, 1.0, tr[n - 1] if n else None)
    ref = quadrature(lambda t: t**n * pair.values(t)[0] * pair.values(t)[3], 0.0, 1.0, 1e-12)
    assert abs(got - ref) < 1e-8


def test_integral_y1_dy2_needs_previous_triple():
    with pytest.raises(ValueError):
        integral_y1_dy2(2, quartic_pair(1.0), 0, 1)


def test_integral_swap_telescopes():
    # int t^n (y1 y2' + y2 y1') = t^n y1 y2 - n int t^(n-1) y1 y2
    pair, tr = quartic_pair(1.0), bessel_triples(1.0, 60)
    swapped = type(pair)(pair.y2, pair.y1, -pair.wronskian, pair.regime, pair.quartic, pair.var)
    n, a, b = 2, 0.1, 1.1
    lhs = integral_y1_dy2(n, pair, a, b, tr[n - 1]) + integral_y1_dy2(n, swapped, a, b, tr[n - 1])
    g = lambda t: t**n * pair.values(t)[0] * pair.values(t)[2]  # noqa: E731
    rhs = g(b) - g(a) - n * integral_y1y2(tr[n - 1], pair, a, b)
    assert lhs == pytest.approx(rhs, abs=1e-12)


# L, M, N ------------------------------------------------------------------

@pytest.mark.parametrize("n", [0, 1, 2, 5])
def test_lmn_derivative_identity(n):
    pair, tr = quartic_pair(1.0), series_triples(QuarticCoeffs.pure_quartic(1.0), 80)
    L = lmn(QuarticCoeffs.pure_quartic(1.0), n, tr)
    x = np.linspace(0.1, 1.3, 25)
    _, d1, _, d2 = pair.values(x)
    got = fd(lambda s: antiderivative_dy1dy2(L, pair, s), x)
    assert np.max(np.abs(got - x**n * d1 * d2)) < 1e-8


def test_lmn_pure_quartic_n0():
    beta = 0.9
    q = QuarticCoeffs.pure_quartic(beta)
    tr = bessel_triples(beta, 40)
    L = lmn(q, 0, tr)
    assert L.N.is_close(tr[4].R.scale(beta**2))


def test_lmn_inhomogeneous_term():
    q = QuarticCoeffs.pure_quartic(1.0)
    tr = series_triples(q, 40)
    L = lmn(q, 1, tr)
    assert L.M[1] == pytest.approx(1.0)  # Q_(n+4) starts at t^(n+6)


def test_lmn_missing_dependency():
    with pytest.raises(KeyError):
        lmn(QuarticCoeffs.pure_quartic(1.0), 1, {1: rn_series(QuarticCoeffs.pure_quartic(1.0), 1)})


def test_airy_lmn_derivative_identity():
    pair, tr = airy_fundamental_pair(), airy_triples(30)
    x = np.linspace(-1, 1, 11) + 0.2j
    for n in (0, 2, 4):
        L = lmn(QuarticCoeffs.airy(), n, tr)
        _, d1, _, d2 = pair.values(x)
        got = fd(lambda s: antiderivative_dy1dy2(L, pair, s), x)
        assert np.max(np.abs(got - x**n * d1 * d2)) < 1e-7
