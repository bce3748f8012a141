"""Indefinite integrals of products of solutions of ``y'' + Q y = 0``.

For any two solutions ``y1, y2`` and a weight ``t**n``::

    int t^n y1 y2   dt = P_n y1 y2 + (Q_n/2)(y1 y2' + y2 y1') + R_n y1' y2'
    int t^n y1' y2' dt = L_n y1 y2 + (M_n/2)(y1 y2' + y2 y1') + N_n y1' y2'

with ``Q_n = -R_n'``, ``P_n = R_n''/2 + Q R_n`` and
``R_n''' + 4 Q R_n' + 2 Q' R_n = 2 t**n``.  ``R_n`` is fixed only up to a
solution of the homogeneous third-order equation (products ``y_i y_j``);
such an admixture changes the antiderivative by a constant.

Construction paths:

* ``rn_series`` -- power series for any quartic ``Q``, normalized by
  ``R(0) = R'(0) = R''(0) = 0``;
* ``rn_airy`` -- exact rational polynomials for ``Q = -z``;
* ``rn_bessel`` -- ``Q = beta**2 t**4``: 2F3 closed forms for
  ``n % 6 in (0, 1, 2)``, polynomial seeds plus the six-step recursion for
  ``n % 6 in (3, 4, 5)``;
* ``rn_general_recursive`` -- all ``R_n`` from ``R_0, R_1, R_2`` for any
  quartic with ``A_4 != 0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import numpy as np

from .model import QuarticCoeffs
from .series import DEFAULT_ORDER, TruncatedSeries
from .specfun import FundamentalPair, pfq_power_series


@dataclass(frozen=True)
class IntegralCoeffTriple:
    """``(P_n, Q_n, R_n)`` for ``int t^n y1 y2 dt``."""

    n: int
    P: TruncatedSeries
    Q: TruncatedSeries
    R: TruncatedSeries
    regime: str
    quartic: QuarticCoeffs
    exact: tuple | None = field(default=None, compare=False)  # rational (P, Q, R) if known

    @property
    def var(self) -> str:
        return self.R.var

    def third_order_residual(self) -> TruncatedSeries:
        """``R''' + 4 Q R' + 2 Q' R - 2 t^n`` (zero up to truncation)."""
        return third_order_operator(self.R, self.quartic) - monomial_like(self.R, self.n, 2.0)


@dataclass(frozen=True)
class LMNTriple:
    """``(L_n, M_n, N_n)`` for ``int t^n y1' y2' dt``."""

    n: int
    L: TruncatedSeries
    M: TruncatedSeries
    N: TruncatedSeries
    regime: str
    quartic: QuarticCoeffs


def regime_of(quartic: QuarticCoeffs) -> str:
    a = quartic.coeffs
    if np.array_equal(a, QuarticCoeffs.airy().coeffs):
        return "airy"
    if np.all(a[:4] == 0) and a[4] != 0:
        return "quartic-bessel"
    return "generic-series"


def monomial_like(s: TruncatedSeries, power: int, coeff: complex = 1.0) -> TruncatedSeries:
    return TruncatedSeries.monomial(power, s.order, s.var, coeff)


def potential_series(quartic: QuarticCoeffs, order: int, var: str = "t") -> TruncatedSeries:
    return TruncatedSeries.from_poly(quartic.coeffs, order, var)


def third_order_operator(R: TruncatedSeries, quartic: QuarticCoeffs) -> TruncatedSeries:
    """``R''' + 4 Q R' + 2 Q' R`` truncated consistently."""
    Qs = potential_series(quartic, R.order, R.var)
    d1 = R.differentiate()
    d3 = d1.differentiate().differentiate()
    return d3 + (Qs * d1).scale(4) + (Qs.differentiate() * R).scale(2)


def triple_from_r(R: TruncatedSeries, n: int, quartic: QuarticCoeffs, regime: str | None = None,
                  order: int | None = None) -> IntegralCoeffTriple:
    """Complete ``R_n`` to a triple using ``Q_n = -R'`` and ``P_n = R''/2 + Q R``.

    ``R`` should carry two more coefficients than the requested ``order``.
    """
    order = R.order - 2 if order is None else order
    Qs = potential_series(quartic, R.order, R.var)
    Qn = -R.differentiate()
    Pn = R.differentiate().differentiate().scale(0.5) + Qs * R
    return IntegralCoeffTriple(
        n, Pn.truncate(order), Qn.truncate(order), R.truncate(order),
        regime or regime_of(quartic), quartic,
    )


# generic quartic: power series --------------------------------------------

def rn_series_coeffs(quartic: QuarticCoeffs, n: int, order: int) -> np.ndarray:
    """Coefficients of the particular solution with vanishing data at 0."""
    A = quartic.coeffs
    r = np.zeros(order + 1, dtype=complex)
    for m in range(order - 2):
        s = 2.0 if m == n else 0.0
        for j in range(5):
            i = m + 1 - j
            if 0 <= i:
                s -= A[j] * (4 * m + 4 - 2 * j) * r[i]
        r[m + 3] = s / ((m + 1) * (m + 2) * (m + 3))
    return r


def rn_series(quartic: QuarticCoeffs, n: int, order: int = DEFAULT_ORDER, var: str = "t",
              regime: str | None = None) -> IntegralCoeffTriple:
    """Series triple with ``R(0) = R'(0) = R''(0) = 0``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n + 6 > order:
        raise ValueError(f"order {order} too small for n = {n} (need at least n + 6)")
    R = TruncatedSeries(rn_series_coeffs(quartic, n, order + 2), var)
    return triple_from_r(R, n, quartic, regime, order)


class TripleCache(Mapping):
    """Lazily built ``n -> IntegralCoeffTriple`` for one potential and one path.

    Indices beyond the series capacity (``n + 3 > order``) map to the zero
    triple, which is exact for the normalized series path.
    """

    def __init__(self, build: Callable[[int], IntegralCoeffTriple], order: int, var: str,
                 quartic: QuarticCoeffs, regime: str, vanish_above: int | None = None):
        self._build = build
        self._cache: dict[int, IntegralCoeffTriple] = {}
        self.order = order
        self.var = var
        self.quartic = quartic
        self.regime = regime
        self.vanish_above = vanish_above

    def __getitem__(self, n: int) -> IntegralCoeffTriple:
        if n < 0:
            z = TruncatedSeries.zeros(self.order, self.var)
            return IntegralCoeffTriple(n, z, z, z, self.regime, self.quartic)
        if n not in self._cache:
            if self.vanish_above is not None and n > self.vanish_above:
                z = TruncatedSeries.zeros(self.order, self.var)
                self._cache[n] = IntegralCoeffTriple(n, z, z, z, self.regime, self.quartic)
            else:
                self._cache[n] = self._build(n)
        return self._cache[n]

    def __iter__(self):
        return iter(sorted(self._cache))

    def __len__(self):
        return len(self._cache)


def series_triples(quartic: QuarticCoeffs, order: int = DEFAULT_ORDER, var: str = "t",
                   regime: str | None = None) -> TripleCache:
    regime = regime or regime_of(quartic)

    def build(n):
        R = TruncatedSeries(rn_series_coeffs(quartic, n, order + 2), var)
        return triple_from_r(R, n, quartic, regime, order)

    return TripleCache(build, order, var, quartic, regime, vanish_above=order - 3)


# Airy regime: exact polynomials -------------------------------------------

def _poly_deriv(c: list[Fraction]) -> list[Fraction]:
    return [k * c[k] for k in range(1, len(c))] or [Fraction(0)]


def _poly_add(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _poly_trim(c):
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


_AIRY_R: dict[int, list[Fraction]] = {}


def airy_r_exact(n: int) -> list[Fraction]:
    """``R_n`` for ``R''' - 4 z R' - 2 R = 2 z^n`` from the three-step recursion."""
    if n < 0:
        return [Fraction(0)]
    if n not in _AIRY_R:
        r = [Fraction(0)] * (n + 1)
        r[n] = Fraction(-1, 2 * n + 1)
        if n >= 3:
            prev = airy_r_exact(n - 3)
            f = Fraction(n * (n - 1) * (n - 2), 2 * (2 * n + 1))
            for k, c in enumerate(prev):
                r[k] += f * c
        _AIRY_R[n] = r
    return list(_AIRY_R[n])


def airy_r_closed_form(n: int) -> list[Fraction]:
    """Same polynomial from the terminating sum over ``j`` (``n - 3j >= 0``).

    Coefficient of ``z^(n-3j)``:
    ``-n! / ((2n+1) (n-3j)!) * prod_{i=1..j} 1/(12 (a - i))``, ``a = (2n+1)/6``.
    """
    a = Fraction(2 * n + 1, 6)
    r = [Fraction(0)] * (n + 1)
    fact = [1]
    for i in range(1, n + 1):
        fact.append(fact[-1] * i)
    prod = Fraction(1)
    for j in range(n // 3 + 1):
        if j > 0:
            prod /= 12 * (a - j)
        r[n - 3 * j] = -Fraction(fact[n], (2 * n + 1) * fact[n - 3 * j]) * prod
    return r


def airy_q_closed_form(n: int) -> list[Fraction]:
    """``Q_n = -R_n'`` from the matching terminating sum."""
    if n == 0:
        return [Fraction(0)]
    a = Fraction(2 * n + 1, 6)
    q = [Fraction(0)] * n
    fact = [1]
    for i in range(1, n + 1):
        fact.append(fact[-1] * i)
    prod = Fraction(1)
    for j in range((n - 1) // 3 + 1):
        if j > 0:
            prod /= 12 * (a - j)
        q[n - 1 - 3 * j] = Fraction(n * fact[n - 1], (2 * n + 1) * fact[n - 1 - 3 * j]) * prod
    return q


def airy_exact_triple(n: int):
    """Rational ``(P_n, Q_n, R_n)`` coefficient lists (low to high) in ``z``."""
    R = airy_r_exact(n)
    Q = [-c for c in _poly_deriv(R)]
    d2 = _poly_deriv(_poly_deriv(R))
    zR = [Fraction(0)] + [-c for c in R]  # Q(z) R with Q = -z
    P = _poly_add([c / 2 for c in d2], zR)
    return _poly_trim(P), _poly_trim(Q), _poly_trim(R)


def rn_airy(n: int, order: int = DEFAULT_ORDER) -> IntegralCoeffTriple:
    """Exact polynomial triple in ``z`` for the Airy regime."""
    if n < 0:
        raise ValueError("n must be non-negative")
    P, Q, R = airy_exact_triple(n)
    order = max(order, n + 2)

    def s(c):
        return TruncatedSeries.from_poly([complex(x) for x in c], order, "z")

    return IntegralCoeffTriple(n, s(P), s(Q), s(R), "airy", QuarticCoeffs.airy(), (P, Q, R))


def airy_triples(order: int = DEFAULT_ORDER) -> TripleCache:
    return TripleCache(lambda n: rn_airy(n, order), order, "z", QuarticCoeffs.airy(), "airy")


# quartic (Bessel) regime ----------------------------------------------------

def _bessel_x(beta):
    return -(beta**2) / 9.0


def bessel_closed_r(beta: float, n: int, order: int) -> TruncatedSeries:
    """``R_n = 2 t^(n+3) 2F3(1, (n+5)/6; (n+7)/6, (n+8)/6, (n+9)/6; -beta^2 t^6/9) / ((n+1)(n+2)(n+3))``."""
    return pfq_power_series(
        (1.0, (n + 5) / 6), ((n + 7) / 6, (n + 8) / 6, (n + 9) / 6), _bessel_x(beta), 6, n + 3,
        2.0 / ((n + 1) * (n + 2) * (n + 3)), order,
    )


def bessel_closed_q(beta: float, n: int, order: int) -> TruncatedSeries:
    return pfq_power_series(
        (1.0, (n + 5) / 6), ((n + 3) / 6, (n + 7) / 6, (n + 8) / 6), _bessel_x(beta), 6, n + 2,
        -2.0 / ((n + 1) * (n + 2)), order,
    )


def bessel_closed_p(beta: float, n: int, order: int) -> TruncatedSeries:
    first = pfq_power_series(
        (1.0, (n + 5) / 6), ((n + 2) / 6, (n + 3) / 6, (n + 7) / 6), _bessel_x(beta), 6, n + 1,
        1.0 / (n + 1), order,
    )
    second = bessel_closed_r(beta, n, order).shift(4).scale(beta**2)
    return first + second


BESSEL_SEEDS = {3: (0, 0), 4: (1, 6), 5: (2, 8)}  # n: (power of t, denominator of beta^2)


def bessel_seed_r(beta: float, n: int, order: int) -> TruncatedSeries:
    """``R_3 = 1/(4 beta^2)``, ``R_4 = t/(6 beta^2)``, ``R_5 = t^2/(8 beta^2)``."""
    power = n - 3
    return TruncatedSeries.monomial(power, order, "t", 1.0 / ((2 * n - 2) * beta**2))


def bessel_recursion_step(R: TruncatedSeries, n: int, beta: float) -> TruncatedSeries:
    """``R_(n+6) = t^(n+3) / (2 beta^2 (n+5)) - (n+3)(n+2)(n+1) / (4 beta^2 (n+5)) R_n``."""
    b2 = beta**2
    lead = TruncatedSeries.monomial(n + 3, R.order, R.var, 1.0 / (2 * b2 * (n + 5)))
    return lead - R.scale((n + 3) * (n + 2) * (n + 1) / (4 * b2 * (n + 5)))


def rn_bessel(beta: float, n: int, order: int = DEFAULT_ORDER) -> IntegralCoeffTriple:
    """Triple for ``Q = beta^2 t^4``.

    ``n % 6 in (0, 1, 2)``: the 2F3 closed form, which vanishes to second
    order at ``t = 0`` and so equals the normalized series.  Otherwise the
    polynomial seeds ``R_3, R_4, R_5`` advanced by the six-step recursion;
    these are polynomials of degree ``n - 3`` (a different particular
    solution from ``rn_series``).
    """
    if beta == 0:
        raise ValueError("beta must be non-zero")
    if n < 0:
        raise ValueError("n must be non-negative")
    quartic = QuarticCoeffs.pure_quartic(beta)
    work = max(order, n) + 2
    m = n % 6
    if m <= 2:
        R = bessel_closed_r(beta, n, work)
    else:
        base = m
        R = bessel_seed_r(beta, base, work)
        while base < n:
            R = bessel_recursion_step(R, base, beta)
            base += 6
    return triple_from_r(R, n, quartic, "quartic-bessel", max(order, n))


def bessel_triples(beta: float, order: int = DEFAULT_ORDER) -> TripleCache:
    return TripleCache(lambda n: rn_bessel(beta, n, order), order, "t",
                       QuarticCoeffs.pure_quartic(beta), "quartic-bessel")


# general revised recursion -------------------------------------------------

@dataclass
class RnRecursionAux:
    """Coefficient tables of ``R_(n+3) + sum_j g_n^j R_(n+j-2) = J_n``.

    ``g_n^j = (2n + j - 1) A_(j-1) / ((2n + 4) A_4)`` for ``j = 1..4``;
    ``g_n^0 = 0`` and ``g`` vanishes outside ``0..4``.
    """

    quartic: QuarticCoeffs

    def __post_init__(self):
        if self.quartic.a4 == 0:
            raise ValueError("the revised recursion needs A_4 != 0")
        self.A = self.quartic.coeffs

    def g(self, n: int, j: int) -> complex:
        if j <= 0 or j > 4 or n < 0:
            return 0.0
        return (2 * n + j - 1) * self.A[j - 1] / ((2 * n + 4) * self.A[4])

    def h(self, n: int, k: int) -> complex:
        return self.g(n, k) - self.g(n, 4) * self.g(n - 1, k + 1)

    def w(self, n: int, k: int) -> complex:
        return self.h(n, k) - self.h(n, 3) * self.g(n - 2, k + 2)

    def u(self, n: int, k: int) -> complex:
        return self.w(n, k) - self.w(n, 2) * self.g(n - 3, k + 3)

    def J(self, n: int, R: Mapping[int, TruncatedSeries], order: int, var: str = "t") -> TruncatedSeries:
        """``(2 t^n - n(n-1)(n-2) R_(n-3)) / (2 (2n+4) A_4)``."""
        out = TruncatedSeries.monomial(n, order, var, 2.0)
        if n >= 3:
            out = out - R[n - 3].scale(n * (n - 1) * (n - 2))
        return out.scale(1.0 / (2 * (2 * n + 4) * self.A[4]))


def rn_general_recursive(quartic: QuarticCoeffs, seeds: Sequence[TruncatedSeries], n_max: int,
                         regime: str | None = None) -> dict[int, IntegralCoeffTriple]:
    """``R_3 .. R_(n_max)`` from ``R_0, R_1, R_2`` by the revised recursion.

    The recursion at step 0, 1, 2 is an identity only modulo homogeneous
    solutions, so starting from normalized seeds the outputs differ from
    ``rn_series`` by such a solution; the antiderivatives differ by a
    constant only.  Seeds should carry two spare coefficients.
    """
    aux = RnRecursionAux(quartic)
    R: dict[int, TruncatedSeries] = {k: s for k, s in enumerate(seeds[:3])}
    order = min(s.order for s in R.values())
    var = R[0].var
    zero = TruncatedSeries.zeros(order, var)
    for n in range(0, n_max - 2):
        acc = aux.J(n, R, order, var)
        for j in range(1, 5):
            idx = n + j - 2
            acc = acc - (R.get(idx, zero) if idx >= 0 else zero).scale(aux.g(n, j))
        R[n + 3] = acc
    regime = regime or regime_of(quartic)
    return {n: triple_from_r(R[n], n, quartic, regime) for n in range(3, n_max + 1)}


def table_r3_r6(quartic: QuarticCoeffs, seeds: Sequence[TruncatedSeries]) -> dict[int, TruncatedSeries]:
    """``R_3 .. R_6`` written through the ``g, h, w, u`` tables."""
    aux = RnRecursionAux(quartic)
    R = {k: s for k, s in enumerate(seeds[:3])}
    order, var = R[0].order, R[0].var
    J = lambda n: aux.J(n, R, order, var)  # noqa: E731  (J_3 only needs R_0)
    g, h, w, u = aux.g, aux.h, aux.w, aux.u
    out = {}
    out[3] = J(0) - sum((R[k].scale(g(0, k + 2)) for k in range(3)), TruncatedSeries.zeros(order, var))
    out[4] = (J(1) - J(0).scale(g(1, 4))
              - sum((R[k].scale(h(1, k + 1)) for k in range(3)), TruncatedSeries.zeros(order, var)))
    out[5] = (J(2) - J(1).scale(g(2, 4)) - J(0).scale(h(2, 3))
              - sum((R[k].scale(w(2, k)) for k in range(3)), TruncatedSeries.zeros(order, var)))
    out[6] = (J(3) - J(2).scale(g(3, 4)) - J(1).scale(h(3, 3)) - J(0).scale(w(3, 2))
              - R[1].scale(u(3, 0)) - R[2].scale(u(3, 1))
              + R[0].scale(g(1, 1) * h(3, 3) + g(0, 2) * w(3, 2)))
    return out


def explicit_r3_r6(quartic: QuarticCoeffs, seeds: Sequence[TruncatedSeries]) -> dict[int, TruncatedSeries]:
    """Fully expanded ``R_3 .. R_6`` in terms of ``A_k`` and the seeds.

    Three ``R_6`` coefficients involving ``A_3`` are the values that follow
    from the recursion: 161/480 in the constant term, -161/240 on
    ``A_2^2 A_3 R_1`` and +21/64 on ``A_2 A_3^3 R_1``.
    """
    A0, A1, A2, A3, A4 = quartic.coeffs
    R0, R1, R2 = seeds[:3]
    order, var = R0.order, R0.var
    t = TruncatedSeries.monomial(1, order, var)
    t2 = TruncatedSeries.monomial(2, order, var)
    t3 = TruncatedSeries.monomial(3, order, var)
    one = TruncatedSeries.constant(1.0, order, var)
    out = {}
    out[3] = (one - R2.scale(3 * A3) - R1.scale(2 * A2) - R0.scale(A1)).scale(1 / (4 * A4))
    out[4] = (t.scale(1 / (6 * A4)) - 5 * A3 / (24 * A4**2)
              - R2.scale(2 * A2 / (3 * A4) - 5 * A3**2 / (8 * A4**2))
              - R1.scale(A1 / (2 * A4) - 5 * A2 * A3 / (12 * A4**2))
              - R0.scale(A0 / (3 * A4) - 5 * A1 * A3 / (24 * A4**2)))
    out[5] = (t2.scale(1 / (8 * A4)) - t.scale(7 * A3 / (48 * A4**2))
              - 3 * A2 / (16 * A4**2) + 35 * A3**2 / (192 * A4**3)
              - R2.scale(5 * A1 / (8 * A4) - 55 * A2 * A3 / (48 * A4**2) + 105 * A3**3 / (192 * A4**3))
              - R1.scale(A0 / (2 * A4) - 21 * A1 * A3 / (48 * A4**2) - 3 * A2**2 / (8 * A4**2)
                         + 35 * A2 * A3**2 / (96 * A4**3))
              + R0.scale(7 * A0 * A3 / (24 * A4**2) + 3 * A1 * A2 / (16 * A4**2)
                         - 35 * A1 * A3**2 / (192 * A4**3)))
    out[6] = (t3.scale(1 / (10 * A4)) - t2.scale(9 * A3 / (80 * A4**2))
              - t.scale(2 * A2 / (15 * A4**2) - 63 * A3**2 / (480 * A4**3))
              - 7 * A1 / (40 * A4**2) + 161 * A2 * A3 / (480 * A4**3) - 21 * A3**3 / (128 * A4**4)
              - R2.scale(3 * A0 / (5 * A4) - 87 * A1 * A3 / (80 * A4**2) - 8 * A2**2 / (15 * A4**2)
                         + 49 * A2 * A3**2 / (32 * A4**3) - 189 * A3**4 / (384 * A4**4))
              + R1.scale(9 * A0 * A3 / (20 * A4**2) + 3 * A1 * A2 / (4 * A4**2)
                         - 63 * A1 * A3**2 / (160 * A4**3) - 161 * A2**2 * A3 / (240 * A4**3)
                         + 21 * A2 * A3**3 / (64 * A4**4))
              - R0.scale(3 / (10 * A4) - 4 * A0 * A2 / (15 * A4**2) - 7 * A1**2 / (40 * A4**2)
                         + 21 * A0 * A3**2 / (80 * A4**3) + 161 * A1 * A2 * A3 / (480 * A4**3)
                         - 315 * A1 * A3**3 / (1920 * A4**4)))
    return out


# L, M, N ------------------------------------------------------------------

def lmn(quartic: QuarticCoeffs, n: int, triples: Mapping[int, IntegralCoeffTriple]) -> LMNTriple:
    """Coefficients of ``int t^n y1' y2' dt`` from triples ``n-2 .. n+4``."""
    A = quartic.coeffs
    try:
        base = triples[n]
    except KeyError as exc:
        raise KeyError(f"triple {n} missing") from exc
    order, var = base.R.order, base.R.var
    L = TruncatedSeries.zeros(order, var)
    M = TruncatedSeries.zeros(order, var)
    N = TruncatedSeries.zeros(order, var)
    for k in range(5):
        if A[k] == 0:
            continue
        try:
            tr = triples[n + k]
        except KeyError as exc:
            raise KeyError(f"triple {n + k} missing") from exc
        L = L + tr.P.scale(A[k])
        M = M + tr.Q.scale(A[k])
        N = N + tr.R.scale(A[k])
    if n >= 2:
        c = n * (n - 1) / 2
        tr = triples[n - 2]
        L, M, N = L + tr.P.scale(c), M + tr.Q.scale(c), N + tr.R.scale(c)
    if n >= 1:
        L = L - TruncatedSeries.monomial(n - 1, order, var, n / 2)
    M = M + TruncatedSeries.monomial(n, order, var)
    return LMNTriple(n, L, M, N, base.regime, quartic)


# evaluation ---------------------------------------------------------------

def _check_regime(regime: str, quartic: QuarticCoeffs, pair: FundamentalPair):
    if pair.regime != regime and not (regime == "quartic-bessel" and pair.regime == "generic-series"):
        raise ValueError(f"regime mismatch: triple {regime!r}, pair {pair.regime!r}")
    if pair.quartic != quartic:
        raise ValueError("triple and pair belong to different potentials")


def _combine(a, b, c, pair: FundamentalPair, x):
    y1, d1, y2, d2 = pair.values(x)
    return a(x) * y1 * y2 + 0.5 * b(x) * (y1 * d2 + y2 * d1) + c(x) * d1 * d2


def antiderivative_y1y2(triple: IntegralCoeffTriple, pair: FundamentalPair, x):
    """``P y1 y2 + (Q/2)(y1 y2' + y2 y1') + R y1' y2'`` at ``x``."""
    _check_regime(triple.regime, triple.quartic, pair)
    return _combine(triple.P, triple.Q, triple.R, pair, x)


def antiderivative_dy1dy2(lmn_triple: LMNTriple, pair: FundamentalPair, x):
    _check_regime(lmn_triple.regime, lmn_triple.quartic, pair)
    return _combine(lmn_triple.L, lmn_triple.M, lmn_triple.N, pair, x)


def integral_y1y2(triple: IntegralCoeffTriple, pair: FundamentalPair, x0, x1) -> complex:
    return antiderivative_y1y2(triple, pair, x1) - antiderivative_y1y2(triple, pair, x0)


def integral_y1_dy2(n: int, pair: FundamentalPair, x0, x1,
                    triple_prev: IntegralCoeffTriple | None = None) -> complex:
    """``int_{x0}^{x1} x^n y1 y2' dx`` via the Wronskian identity."""
    if n < 0:
        raise ValueError("n must be non-negative")

    def boundary(x):
        y1, _, y2, _ = pair.values(x)
        return 0.5 * (x**n * y1 * y2 + pair.wronskian * x ** (n + 1) / (n + 1))

    out = boundary(x1) - boundary(x0)
    if n > 0:
        if triple_prev is None or triple_prev.n != n - 1:
            raise ValueError(f"integral for n = {n} needs the triple for n - 1")
        out -= 0.5 * n * integral_y1y2(triple_prev, pair, x0, x1)
    return out
