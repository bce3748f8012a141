"""Special functions for the two asymptotic regimes.

* ``hyp1f2`` / ``hyp2f3`` -- generalized hypergeometric series by direct
  Maclaurin summation (all arguments in scope are entire-function arguments
  of moderate size, so no large-argument asymptotics).
* ``airy_pair`` -- Ai, Bi and derivatives on the complex plane.
* Fundamental pairs of ``y'' + Q y = 0``: the quartic (Bessel-type) pair for
  ``Q = beta**2 t**4``, the Airy pair for ``Q = -z`` and a power-series pair
  for a generic quartic ``Q``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from .model import QuarticCoeffs
from .series import TruncatedSeries

HYP_TOL = 1e-16
HYP_NMAX = 500


class HypResult(NamedTuple):
    value: complex
    converged: bool
    ratio: float  # |last term| / |sum|


def _check_denominators(bs):
    for b in bs:
        b = complex(b)
        if b.imag == 0 and b.real <= 0 and b.real == round(b.real):
            raise ValueError(f"denominator parameter {b.real:g} is a non-positive integer")


def hyp_pfq(a, b, z, tol: float = HYP_TOL, nmax: int = HYP_NMAX) -> HypResult:
    """``pFq(a; b; z)`` by term-ratio summation.

    Stops once a term falls below ``tol`` times the partial sum (checked on
    two consecutive terms so that a single small term does not end the sum).
    """
    _check_denominators(b)
    z = complex(z)
    term = 1.0 + 0j
    total = 1.0 + 0j
    if z == 0:
        return HypResult(total, True, 0.0)
    quiet = 0
    for n in range(nmax):
        num = 1.0 + 0j
        for ai in a:
            num *= ai + n
        den = float(n + 1)
        for bi in b:
            den *= bi + n
        term *= num / den * z
        total += term
        if term == 0:
            return HypResult(total, True, 0.0)
        if abs(term) <= tol * abs(total):
            quiet += 1
            if quiet == 2:
                return HypResult(total, True, abs(term) / abs(total))
        else:
            quiet = 0
    return HypResult(total, False, abs(term) / max(abs(total), 1e-300))


def hyp1f2(a, b1, b2, z, **kw) -> HypResult:
    return hyp_pfq((a,), (b1, b2), z, **kw)


def hyp2f3(a1, a2, b1, b2, b3, z, **kw) -> HypResult:
    return hyp_pfq((a1, a2), (b1, b2, b3), z, **kw)


def hyp0f1(b, z, **kw) -> HypResult:
    return hyp_pfq((), (b,), z, **kw)


def pfq_coefficients(a, b, count: int) -> np.ndarray:
    """Maclaurin coefficients of ``pFq(a; b; x)`` in ``x``: ``[1, ...]`` of length ``count``."""
    _check_denominators(b)
    c = np.empty(count, dtype=complex)
    c[0] = 1.0
    for n in range(count - 1):
        num = np.prod([ai + n for ai in a]) if a else 1.0
        den = (n + 1) * (np.prod([bi + n for bi in b]) if b else 1.0)
        c[n + 1] = c[n] * num / den
    return c


def pfq_power_series(a, b, scale: complex, stride: int, offset: int, prefactor: complex,
                     order: int, var: str = "t") -> TruncatedSeries:
    """``prefactor * t**offset * pFq(a; b; scale * t**stride)`` as a TruncatedSeries."""
    out = np.zeros(order + 1, dtype=complex)
    if offset <= order:
        count = (order - offset) // stride + 1
        c = pfq_coefficients(a, b, count) * prefactor * scale ** np.arange(count)
        out[offset::stride][:count] = c
    return TruncatedSeries(out, var)


# Airy functions ----------------------------------------------------------

AIRY_SWITCH_RADIUS = 6.0
AIRY_SERIES_TERMS = 120
_AI0 = 1.0 / (3.0 ** (2.0 / 3.0) * math.gamma(2.0 / 3.0))
_AIP0 = -1.0 / (3.0 ** (1.0 / 3.0) * math.gamma(1.0 / 3.0))
_OMEGA = cmath.exp(2j * math.pi / 3)


class AiryValues(NamedTuple):
    ai: complex
    bi: complex
    aip: complex
    bip: complex
    accurate: bool = True


def _airy_maclaurin(z: complex, nterms: int = AIRY_SERIES_TERMS):
    # f = sum F_k z^{3k}, g = sum G_k z^{3k+1} with F_k = 3^k (1/3)_k/(3k)!, G_k = 3^k (2/3)_k/(3k+1)!
    z3 = z * z * z
    tf = 1.0 + 0j          # F_k z^{3k}
    pf = z * z / 6.0       # F_k z^{3k-1}, starting at k = 1
    qg = 1.0 + 0j          # G_k z^{3k}
    f, fp, g0, gp = tf, 3 * pf, qg, qg
    absf, absg = 1.0, 1.0
    for k in range(1, nterms):
        tf = tf * z3 / ((3 * k - 1) * (3 * k))
        qg = qg * z3 / ((3 * k) * (3 * k + 1))
        f += tf
        g0 += qg
        absf += abs(tf)
        absg += abs(qg)
        gp += (3 * k + 1) * qg
        if k > 1:
            pf = pf * z3 / ((3 * k - 1) * (3 * k))
            fp += 3 * k * pf
        if abs(tf) + abs(qg) < 1e-18 * (abs(f) + abs(g0)):
            break
    g = z * g0
    c1, c2 = _AI0, -_AIP0
    ai = c1 * f - c2 * g
    bi = math.sqrt(3.0) * (c1 * f + c2 * g)
    aip = c1 * fp - c2 * gp
    bip = math.sqrt(3.0) * (c1 * fp + c2 * gp)
    # rounding relative to |Ai|: the series is summed from terms of size ~absf, absg
    scale = c1 * absf + c2 * abs(z) * absg
    accurate = 2.2e-16 * scale <= 1e-10 * max(abs(ai), 1e-300)
    return ai, bi, aip, bip, accurate


def _ai_asymptotic(z: complex):
    """Ai, Ai' from the large-|z| expansion, valid for ``|arg z| < pi``."""
    zeta = (2.0 / 3.0) * z * cmath.sqrt(z)
    z14 = cmath.sqrt(cmath.sqrt(z))
    su = sv = 0j
    u = 1.0
    best = math.inf
    for k in range(0, 60):
        if k > 0:
            u = u * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216 * k)
        v = -u * (6 * k + 1) / (6 * k - 1) if k > 0 else 1.0
        tu = (-1) ** k * u / zeta**k
        tv = (-1) ** k * v / zeta**k
        if abs(tu) > best:  # optimal truncation
            break
        best = abs(tu)
        su += tu
        sv += tv
        if abs(tu) < 1e-17 * abs(su):
            break
    e = cmath.exp(-zeta) / (2.0 * math.sqrt(math.pi))
    return e * su / z14, -e * z14 * sv


def _ai_large(z: complex):
    if abs(cmath.phase(z)) <= 2 * math.pi / 3 + 1e-12:
        return _ai_asymptotic(z)
    # Ai(z) = -w Ai(wz) - w^2 Ai(w^2 z)
    a1, d1 = _ai_asymptotic(_OMEGA * z)
    a2, d2 = _ai_asymptotic(_OMEGA**2 * z)
    return -_OMEGA * a1 - _OMEGA**2 * a2, -_OMEGA**2 * d1 - _OMEGA * d2


def airy_pair(z: complex) -> AiryValues:
    """``(Ai, Bi, Ai', Bi')`` at complex ``z``.

    Maclaurin series inside ``AIRY_SWITCH_RADIUS``, asymptotic expansions
    (with the rotation identities) outside.  ``accurate`` is False close to
    the directions ``arg z = +/- pi/3`` at large ``|z|`` where Bi is formed by
    cancellation, and inside the series disk wherever Ai is small enough for
    the Maclaurin sum to lose more than six digits.
    """
    z = complex(z)
    if abs(z) <= AIRY_SWITCH_RADIUS:
        return AiryValues(*_airy_maclaurin(z))
    ai, aip = _ai_large(z)
    ep, em = cmath.exp(1j * math.pi / 6), cmath.exp(-1j * math.pi / 6)
    a1, d1 = _ai_large(_OMEGA * z)
    a2, d2 = _ai_large(_OMEGA.conjugate() * z)
    bi = ep * a1 + em * a2
    bip = ep * _OMEGA * d1 + em * _OMEGA.conjugate() * d2
    ph = abs(abs(cmath.phase(z)) - math.pi / 3)
    return AiryValues(ai, bi, aip, bip, ph > 0.15)


# Fundamental pairs -------------------------------------------------------

REGIMES = ("airy", "quartic-bessel", "generic-series")


@dataclass(frozen=True)
class FundamentalPair:
    """Two solutions of ``y'' + Q y = 0``.

    ``y1(x)`` / ``y2(x)`` return ``(value, derivative)``; ``wronskian`` is
    ``y1 y2' - y2 y1'``.  ``quartic`` is the potential in the pair's own
    variable.
    """

    y1: Callable
    y2: Callable
    wronskian: complex
    regime: str
    quartic: QuarticCoeffs
    var: str = "t"
    meta: dict = field(default_factory=dict, compare=False)

    def values(self, x):
        """``(y1, y1', y2, y2')`` at ``x``."""
        a, ad = self.y1(x)
        b, bd = self.y2(x)
        return a, ad, b, bd

    def wronskian_at(self, x):
        a, ad, b, bd = self.values(x)
        return a * bd - b * ad


def _vectorize_pair(fn):
    def wrapped(x):
        x = np.asarray(x, dtype=complex)
        if x.ndim == 0:
            return fn(complex(x))
        vals = [fn(complex(v)) for v in x.ravel()]
        v = np.array([p[0] for p in vals]).reshape(x.shape)
        d = np.array([p[1] for p in vals]).reshape(x.shape)
        return v, d
    return wrapped


def quartic_pair(beta: float) -> FundamentalPair:
    """Solutions of ``y'' + beta**2 t**4 y = 0`` with ``y1(0)=0, y1'(0)=1, y2(0)=1, y2'(0)=0``."""
    if beta == 0:
        raise ValueError("beta must be non-zero")
    b2 = beta * beta

    def y1(t):
        x = -b2 * t**6 / 36.0
        return t * hyp1f2(1, 1, 7 / 6, x).value, hyp1f2(1, 1, 1 / 6, x).value

    def y2(t):
        x = -b2 * t**6 / 36.0
        return hyp1f2(1, 1, 5 / 6, x).value, -b2 * t**5 / 5.0 * hyp1f2(1, 1, 11 / 6, x).value

    return FundamentalPair(_vectorize_pair(y1), _vectorize_pair(y2), -1.0, "quartic-bessel",
                           QuarticCoeffs.pure_quartic(beta), "t", {"beta": beta})


def airy_fundamental_pair() -> FundamentalPair:
    """``(Ai, Bi)`` as solutions of ``y'' - z y = 0``; Wronskian ``1/pi``."""

    def y1(z):
        v = airy_pair(z)
        return v.ai, v.aip

    def y2(z):
        v = airy_pair(z)
        return v.bi, v.bip

    return FundamentalPair(_vectorize_pair(y1), _vectorize_pair(y2), 1.0 / math.pi, "airy",
                           QuarticCoeffs.airy(), "z")


def series_solutions(quartic: QuarticCoeffs, order: int = 120, var: str = "t"):
    """Power-series solutions ``T1`` (0, 1) and ``T2`` (1, 0) of ``y'' + Q y = 0``."""
    A = quartic.coeffs
    out = []
    for y0, yp0 in ((0.0, 1.0), (1.0, 0.0)):
        a = np.zeros(order + 1, dtype=complex)
        a[0], a[1] = y0, yp0
        for k in range(order - 1):
            s = sum(A[j] * a[k - j] for j in range(min(4, k) + 1))
            a[k + 2] = -s / ((k + 2) * (k + 1))
        out.append(TruncatedSeries(a, var))
    return out


def series_pair(quartic: QuarticCoeffs, order: int = 120, var: str = "t") -> FundamentalPair:
    """Generic-``Q`` fundamental pair from Maclaurin series (accurate for moderate ``|t|``)."""
    s1, s2 = series_solutions(quartic, order, var)
    d1, d2 = s1.differentiate(), s2.differentiate()

    def y1(t):
        return s1(t), d1(t)

    def y2(t):
        return s2(t), d2(t)

    return FundamentalPair(y1, y2, -1.0, "generic-series", quartic, var, {"order": order})
