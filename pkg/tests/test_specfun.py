import math

import mpmath
import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.integrate import solve_ivp

from ptlz.model import QuarticCoeffs
from ptlz.specfun import (
    airy_fundamental_pair,
    airy_pair,
    hyp0f1,
    hyp1f2,
    hyp2f3,
    hyp_pfq,
    pfq_power_series,
    quartic_pair,
    series_pair,
)


def test_hyp1f2_zero_argument():
    r = hyp1f2(1, 1, 7 / 6, 0)
    assert r.value == 1 and r.converged


def test_hyp1f2_reduces_to_0f1():
    a = hyp1f2(1, 1, 5 / 6, -0.25).value
    b = hyp0f1(5 / 6, -0.25).value
    assert a == pytest.approx(b, rel=1e-15)
    assert a == pytest.approx(complex(mpmath.hyp0f1(5 / 6, -0.25)), rel=1e-14)


@pytest.mark.parametrize("z", [-0.3, 2.5, -9.0 + 1j, -27.0])
def test_hyp2f3_vs_mpmath(z):
    r = hyp2f3(1, 5 / 6, 7 / 6, 8 / 6, 9 / 6, z)
    assert r.converged and r.ratio < 1e-14
    ref = complex(mpmath.hyp2f3(1, 5 / 6, 7 / 6, 8 / 6, 9 / 6, z))
    assert abs(r.value - ref) <= 1e-12 * max(1, abs(ref))


def test_hyp2f3_zero_argument():
    assert hyp2f3(0.3, 2.0, 1.5, 2.5, 3.5, 0).value == 1


def test_pole_in_denominator():
    with pytest.raises(ValueError):
        hyp1f2(1, -2, 1.5, 0.1)


def test_nonconvergence_flag():
    r = hyp_pfq([1, 1, 1], [1], 0.5, nmax=20)  # 3F1 diverges
    assert not r.converged


def test_r0_and_q0_series_open_as_displayed():
    beta = 0.8
    x = -(beta**2) / 9
    R0 = pfq_power_series((1, 5 / 6), (7 / 6, 8 / 6, 9 / 6), x, 6, 3, 1 / 3, 20)
    assert_allclose([R0[3], R0[9], R0[15]], [1 / 3, -5 / 378 * beta**2, 11 / 51597 * beta**4], rtol=1e-13)
    Q0 = pfq_power_series((1, 5 / 6), (3 / 6, 7 / 6, 8 / 6), x, 6, 2, -1, 20)
    assert_allclose([Q0[2], Q0[8], Q0[14]], [-1, 5 / 42 * beta**2, -55 / 17199 * beta**4], rtol=1e-13)


def test_y2_matches_ode():
    beta, t_end = 1.0, 0.5
    sol = solve_ivp(lambda t, y: [y[1], -(beta**2) * t**4 * y[0]], (0, t_end), [1, 0],
                    method="DOP853", rtol=1e-13, atol=1e-15)
    y2 = hyp1f2(1, 1, 5 / 6, -(beta**2) * t_end**6 / 36).value
    assert abs(y2 - sol.y[0, -1]) < 1e-10


# Airy ---------------------------------------------------------------------

@pytest.mark.parametrize("z", [0, 1, 2 + 1j])
def test_airy_wronskian(z):
    v = airy_pair(z)
    assert abs(v.ai * v.bip - v.bi * v.aip - 1 / math.pi) < 1e-10


@pytest.mark.parametrize("z", [-3.5, 4 - 5j, 7j, 8.0, -9.0])
def test_airy_wronskian_relative(z):
    # far out the products are large; judge against their size
    v = airy_pair(z)
    size = abs(v.ai * v.bip) + abs(v.bi * v.aip)
    assert abs(v.ai * v.bip - v.bi * v.aip - 1 / math.pi) < 1e-12 * max(size, 1)


def test_airy_initial_ratio():
    v = airy_pair(0)
    assert (v.ai / v.bi).real == pytest.approx(1 / math.sqrt(3), rel=1e-14)


@pytest.mark.parametrize("z", [0.3, -2.0 + 0.5j, 3 + 3j, -5.5, 6.5 - 1j, 12j, -15.0])
def test_airy_vs_mpmath(z):
    v = airy_pair(z)
    ai = complex(mpmath.airyai(z))
    bi = complex(mpmath.airybi(z))
    assert abs(v.ai - ai) <= 1e-10 * max(abs(ai), 1e-3)
    assert abs(v.bi - bi) <= 1e-10 * max(abs(bi), 1.0)


def test_airy_accuracy_flag_on_cancellation():
    # series loses digits for Ai on the positive axis close to the switch radius
    assert not airy_pair(5.9).accurate
    assert airy_pair(1.0).accurate


def test_airy_ode_residual():
    h = 1e-4
    for z in np.linspace(-3, 3, 13) + 0.5j:
        f = lambda x: airy_pair(x).ai  # noqa: E731
        d2 = (f(z + h) - 2 * f(z) + f(z - h)) / h**2
        assert abs(d2 - z * f(z)) < 1e-6


# fundamental pairs --------------------------------------------------------

def test_quartic_pair_initial_conditions():
    y1, d1, y2, d2 = quartic_pair(0.9).values(0.0)
    assert (y1, d1, y2, d2) == (0, 1, 1, 0)
    assert quartic_pair(0.9).wronskian == -1


def test_quartic_pair_rejects_zero_beta():
    with pytest.raises(ValueError):
        quartic_pair(0.0)


def test_y1_small_t_expansion():
    beta, t = 1.3, 0.1
    y1 = quartic_pair(beta).values(t)[0]
    assert y1 == pytest.approx(t - beta**2 * t**7 / 42, rel=1e-12)


def test_wronskian_constancy_quartic():
    pair = quartic_pair(1.0)
    x = np.linspace(-2, 2, 401)
    w = pair.wronskian_at(x)
    assert np.max(np.abs(w + 1)) < 1e-10


def test_wronskian_constancy_airy():
    pair = airy_fundamental_pair()
    x = np.linspace(-2, 2, 41) + 0.3j
    assert np.max(np.abs(pair.wronskian_at(x) * math.pi - 1)) < 1e-10


def test_quartic_pair_ode_residual():
    beta, h = 1.0, 1e-4
    pair = quartic_pair(beta)
    for t in np.linspace(-1.5, 1.5, 7):
        for k in (0, 2):
            f = lambda x: pair.values(x)[k]  # noqa: E731
            d2 = (f(t + h) - 2 * f(t) + f(t - h)) / h**2
            assert abs(d2 + beta**2 * t**4 * f(t)) < 1e-6


def test_series_pair_matches_quartic_pair():
    a = series_pair(QuarticCoeffs.pure_quartic(1.0), 160)
    b = quartic_pair(1.0)
    x = np.linspace(-1.5, 1.5, 11)
    assert_allclose(np.array(a.values(x)), np.array(b.values(x)), atol=1e-12)
