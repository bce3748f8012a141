"""Expansion of the PT-symmetric c-system in powers of ``kappa``.

Writing ``c = sum_n kappa**n c^(n)`` in ``c'' + Q c = +/- 2 kappa c'`` gives

    c1^(n)'' + Q c1^(n) =  2 c2^(n-1)',
    c2^(n)'' + Q c2^(n) = -2 c1^(n-1)',

with ``c^(0)`` a combination of a fundamental pair ``T1, T2``.  Every order
is represented over ``{c1^(0), c2^(0), c1^(0)', c2^(0)'}`` with polynomial
(or power-series) coefficients::

    c1^(n) = alpha c1 + beta c2 + gamma c1' + delta c2'
    c2^(n) = lambda c1 + mu c2 + nu c1' + xi c2'

and the coefficients advance through the operator tables ``E, F, G, H``
obtained from the integral triples.  The particular solution chosen at each
order is the one the integral representation produces; the expansion is
therefore a family of solutions, and comparisons with an exact trajectory
must start both from the same state.

Everything here runs in the variable of the chosen regime:

* ``airy``: ``x = z = g (t + A0/A1)`` with ``g**3 = -A1``, potential ``-z``,
  expansion parameter ``kappa / g`` (``d/dt = g d/dz``);
* ``quartic-bessel``: ``x = t``, potential ``beta**2 t**4``;
* ``generic-series``: ``x = t``, the full quartic.
"""
from __future__ import annotations

import cmath
import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .heun_integrals import (
    IntegralCoeffTriple,
    TripleCache,
    airy_triples,
    lmn,
    series_triples,
)
from .model import QuarticCoeffs
from .series import TruncatedSeries
from .specfun import (
    FundamentalPair,
    airy_fundamental_pair,
    hyp2f3,
    quartic_pair,
    series_pair,
)

DEFAULT_MAX_ORDER = 4
DEFAULT_MAX_POWER = 40
CONVERGENCE_RATIO = 1e-3
FIELDS = ("alpha", "beta", "gamma", "delta", "lam", "mu", "nu", "xi")


@dataclass(frozen=True)
class InitialCombination:
    """``c1^(0) = d1 T1 + d2 T2`` and ``c2^(0) = e1 T1 + e2 T2``."""

    d1: complex = 1.0
    d2: complex = 0.0
    e1: complex = 0.0
    e2: complex = 1.0

    def __post_init__(self):
        if not all(np.isfinite(complex(v)) for v in (self.d1, self.d2, self.e1, self.e2)):
            raise ValueError("combination coefficients must be finite")

    def state(self, pair: FundamentalPair, x):
        """``(c1, c2, c1', c2')`` of the zeroth order at ``x``."""
        t1, t1d, t2, t2d = pair.values(x)
        return (self.d1 * t1 + self.d2 * t2, self.e1 * t1 + self.e2 * t2,
                self.d1 * t1d + self.d2 * t2d, self.e1 * t1d + self.e2 * t2d)

    @classmethod
    def from_state(cls, pair: FundamentalPair, x, c1, c2, c1_dot, c2_dot) -> "InitialCombination":
        """Solve for the combination matching a zeroth-order state at ``x``."""
        t1, t1d, t2, t2d = pair.values(x)
        m = np.array([[t1, t2], [t1d, t2d]], dtype=complex)
        d = np.linalg.solve(m, [c1, c1_dot])
        e = np.linalg.solve(m, [c2, c2_dot])
        return cls(d[0], d[1], e[0], e[1])


# closed forms -------------------------------------------------------------

def first_order(c1_0, c2_0, x):
    """``c1^(1) = x c2^(0)``, ``c2^(1) = -x c1^(0)``."""
    return x * c2_0, -x * c1_0


def second_order(c0, c0_dot, triple0: IntegralCoeffTriple, x, regime: str | None = None):
    """``c^(2) = (Q_0 - x**2)/2 c^(0) + R_0 c^(0)'`` for both components."""
    if triple0.n != 0:
        raise ValueError("second_order needs the n = 0 triple")
    if regime is not None and regime != triple0.regime:
        raise ValueError(f"regime mismatch: triple {triple0.regime!r}, requested {regime!r}")
    a = 0.5 * (triple0.Q(x) - x * x)
    b = triple0.R(x)
    return a * c0[0] + b * c0_dot[0], a * c0[1] + b * c0_dot[1]


def bessel_second_order_prefactors(beta: float, t):
    """The two prefactors of ``c^(2)`` for ``Q = beta**2 t**4`` via 2F3.

    ``-t**2/2 [1 + 2F3(1, 5/6; 3/6, 7/6, 8/6; x)]`` and
    ``t**3/3 2F3(1, 5/6; 7/6, 8/6, 9/6; x)`` with ``x = -beta**2 t**6 / 9``.
    """
    t = complex(t)
    x = -beta**2 * t**6 / 9
    f_q = hyp2f3(1, 5 / 6, 3 / 6, 7 / 6, 8 / 6, x).value
    f_r = hyp2f3(1, 5 / 6, 7 / 6, 8 / 6, 9 / 6, x).value
    return -0.5 * t * t * (1 + f_q), t**3 / 3 * f_r


# regimes ------------------------------------------------------------------

@dataclass(frozen=True)
class Regime:
    """A potential, its fundamental pair and integral triples in variable ``x``.

    ``x = scale * (t + shift)``; ``potential`` is the physical-time quartic
    the regime stands for (the oracle integrates that one).
    """

    name: str
    pair: FundamentalPair
    triples: TripleCache
    potential: QuarticCoeffs
    scale: complex = 1.0
    shift: complex = 0.0

    @property
    def quartic(self) -> QuarticCoeffs:
        return self.pair.quartic

    def to_x(self, t):
        return self.scale * (np.asarray(t) + self.shift)

    def kappa_eff(self, kappa: float) -> complex:
        return kappa / self.scale


def airy_regime(quartic: QuarticCoeffs, max_power: int = DEFAULT_MAX_POWER) -> Regime:
    """Linearize ``Q`` about ``t = 0`` and map ``A1 t + A0`` onto ``-z``."""
    a0, a1 = complex(quartic.a0), complex(quartic.a1)
    if a1 == 0:
        raise ValueError("the Airy regime needs A1 != 0")
    g = cmath.exp(1j * cmath.pi / 3) * a1 ** (1 / 3)
    return Regime("airy", airy_fundamental_pair(), airy_triples(max_power + 4),
                  QuarticCoeffs(a0=a0, a1=a1), g, a0 / a1)


def quartic_regime(beta: float, max_power: int = DEFAULT_MAX_POWER) -> Regime:
    """Keep only ``beta**2 t**4``.

    Uses the normalized series triples: their operator tables are lower
    triangular, so truncating the power at ``L`` is exact up to ``t**L``.
    """
    q = QuarticCoeffs.pure_quartic(beta)
    return Regime("quartic-bessel", quartic_pair(beta),
                  series_triples(q, max_power + 4, regime="quartic-bessel"), q)


def generic_regime(quartic: QuarticCoeffs, max_power: int = DEFAULT_MAX_POWER,
                   pair_order: int = 160) -> Regime:
    return Regime("generic-series", series_pair(quartic, pair_order),
                  series_triples(quartic, max_power + 4, regime="generic-series"), quartic)


# operator tables ----------------------------------------------------------

@dataclass(frozen=True)
class OperatorTables:
    """``E, F, G, H``: row ``j`` holds the power coefficients of the ``j``-th operator.

    Shape ``(L + 1, L + 1 + pad)``; the extra columns detect content pushed
    past power ``L``.
    """

    E: np.ndarray
    F: np.ndarray
    G: np.ndarray
    H: np.ndarray
    max_power: int
    regime: str

    @property
    def rows(self) -> int:
        return self.E.shape[0]


def operator_tables(triples: TripleCache, quartic: QuarticCoeffs | None = None,
                    max_power: int = DEFAULT_MAX_POWER, pad: int = 2) -> OperatorTables:
    """Expand ``E_j = x^(j+1)/(j+1) - (j/2) Q_(j-1)``, ``F_j = -j R_(j-1)``,
    ``G_j = M_j`` and ``H_j = 2 N_j`` for ``j = 0..max_power``."""
    quartic = quartic or triples.quartic
    cols = max_power + 1 + pad
    if triples.order < cols - 1:
        raise ValueError(f"triples carry order {triples.order}, need {cols - 1}")
    rows = max_power + 1
    E = np.zeros((rows, cols), dtype=complex)
    F = np.zeros_like(E)
    G = np.zeros_like(E)
    H = np.zeros_like(E)
    var = triples.var
    for j in range(rows):
        e = TruncatedSeries.monomial(j + 1, cols - 1, var, 1.0 / (j + 1))
        if j >= 1:
            prev = triples[j - 1]
            e = e - prev.Q.scale(j / 2)
            F[j] = (-prev.R.scale(j)).truncate(cols - 1).coeffs
        E[j] = e.truncate(cols - 1).coeffs
        m = lmn(quartic, j, triples)
        G[j] = m.M.truncate(cols - 1).coeffs
        H[j] = m.N.scale(2).truncate(cols - 1).coeffs
    return OperatorTables(E, F, G, H, max_power, triples.regime)


# coefficient tables -------------------------------------------------------

@dataclass(frozen=True)
class CoefficientTable:
    """Order-``n`` coefficients over ``{c1, c2, c1', c2'}`` of the zeroth order.

    Each field is a length-``L + 1`` array of power coefficients; ``lam``
    stands for lambda.  ``truncated`` marks content dropped beyond ``x**L``.
    """

    order: int
    alpha: np.ndarray
    beta: np.ndarray
    gamma: np.ndarray
    delta: np.ndarray
    lam: np.ndarray
    mu: np.ndarray
    nu: np.ndarray
    xi: np.ndarray
    truncated: bool = False
    var: str = "t"

    def __post_init__(self):
        n = None
        for f in FIELDS:
            a = np.array(getattr(self, f), dtype=complex).ravel()
            if n is not None and a.size != n:
                raise ValueError("all coefficient sequences must share one length")
            n = a.size
            a.setflags(write=False)
            object.__setattr__(self, f, a)

    @property
    def max_power(self) -> int:
        return self.alpha.size - 1

    @classmethod
    def zero(cls, order: int, max_power: int = DEFAULT_MAX_POWER, var: str = "t"):
        z = np.zeros(max_power + 1, dtype=complex)
        return cls(order, *([z] * 8), var=var)

    @classmethod
    def identity(cls, max_power: int = DEFAULT_MAX_POWER, var: str = "t"):
        """Order 0: ``alpha_0 = mu_0 = 1``."""
        z = np.zeros(max_power + 1, dtype=complex)
        one = z.copy()
        one[0] = 1.0
        return cls(0, one, z, z, z, z, one, z, z, var=var)

    def series(self, name: str) -> TruncatedSeries:
        return TruncatedSeries(getattr(self, name), self.var)

    def swapped(self) -> "CoefficientTable":
        """Image under ``(c1, c2) -> (c2, -c1)`` applied to both the order
        and the zeroth order."""
        return CoefficientTable(self.order, self.mu, -self.lam, self.xi, -self.nu,
                                -self.beta, self.alpha, -self.delta, self.gamma,
                                self.truncated, self.var)

    def evaluate(self, x, c0):
        """``(c1^(n), c2^(n))`` at ``x`` given ``c0 = (c1, c2, c1', c2')`` there."""
        c1, c2, d1, d2 = c0
        s = {f: self.series(f)(x) for f in FIELDS}
        return (s["alpha"] * c1 + s["beta"] * c2 + s["gamma"] * d1 + s["delta"] * d2,
                s["lam"] * c1 + s["mu"] * c2 + s["nu"] * d1 + s["xi"] * d2)

    def derivative(self, quartic: QuarticCoeffs) -> "CoefficientTable":
        """Table of ``d/dx c^(n)`` using ``c^(0)'' = -Q c^(0)``.

        One power is lost to differentiation; the result is padded with a
        zero top coefficient and marked truncated.
        """
        L = self.max_power
        Qs = TruncatedSeries.from_poly(quartic.coeffs, L, self.var)

        def d(name):
            return self.series(name).differentiate().truncate(L)

        def mulq(name):
            return (Qs * self.series(name)).truncate(L)

        out = {
            "alpha": d("alpha") - mulq("gamma"), "beta": d("beta") - mulq("delta"),
            "gamma": d("gamma") + self.series("alpha"), "delta": d("delta") + self.series("beta"),
            "lam": d("lam") - mulq("nu"), "mu": d("mu") - mulq("xi"),
            "nu": d("nu") + self.series("lam"), "xi": d("xi") + self.series("mu"),
        }
        return CoefficientTable(self.order, *(out[f].coeffs for f in FIELDS),
                                truncated=True, var=self.var)

    def max_abs(self) -> float:
        return float(max(np.max(np.abs(getattr(self, f))) for f in FIELDS))

    # JSON ---------------------------------------------------------------
    def to_dict(self) -> dict:
        d = {"order": self.order, "var": self.var, "truncated": self.truncated}
        for f in FIELDS:
            a = getattr(self, f)
            d[f] = {"re": a.real.tolist(), "im": a.imag.tolist()}
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "CoefficientTable":
        arrs = [np.array(d[f]["re"]) + 1j * np.array(d[f]["im"]) for f in FIELDS]
        return cls(int(d["order"]), *arrs, truncated=bool(d["truncated"]), var=d["var"])

    @classmethod
    def from_json(cls, text: str) -> "CoefficientTable":
        return cls.from_dict(json.loads(text))


def advance_order(table: CoefficientTable, ops: OperatorTables) -> CoefficientTable:
    """Order ``n`` to ``n + 1``.

    ``alpha' = lam E + nu G``, ``beta' = mu E + xi G``,
    ``gamma' = lam F + nu H``, ``delta' = mu F + xi H``, and
    ``lam' = -(alpha E + gamma G)``, ``mu' = -(beta E + delta G)``,
    ``nu' = -(alpha F + gamma H)``, ``xi' = -(beta F + delta H)``.
    """
    if table.alpha.size > ops.rows:
        raise ValueError(f"truncation overflow: table has {table.alpha.size} powers, "
                         f"operators cover {ops.rows}")
    n = table.alpha.size
    E, F, G, H = (M[:n] for M in (ops.E, ops.F, ops.G, ops.H))
    t = table
    full = {
        "alpha": t.lam @ E + t.nu @ G, "beta": t.mu @ E + t.xi @ G,
        "gamma": t.lam @ F + t.nu @ H, "delta": t.mu @ F + t.xi @ H,
        "lam": -(t.alpha @ E + t.gamma @ G), "mu": -(t.beta @ E + t.delta @ G),
        "nu": -(t.alpha @ F + t.gamma @ H), "xi": -(t.beta @ F + t.delta @ H),
    }
    dropped = any(np.any(v[n:] != 0) for v in full.values())
    return CoefficientTable(t.order + 1, *(full[f][:n] for f in FIELDS),
                            truncated=t.truncated or dropped, var=t.var)


def build_tables(ops: OperatorTables, max_order: int = DEFAULT_MAX_ORDER,
                 var: str = "t") -> list[CoefficientTable]:
    """Tables for orders ``0..max_order``."""
    tables = [CoefficientTable.identity(ops.max_power, var)]
    for _ in range(max_order):
        tables.append(advance_order(tables[-1], ops))
    return tables


# assembly -----------------------------------------------------------------

@dataclass
class AssembledSolution:
    c1: np.ndarray
    c2: np.ndarray
    c1_dot: np.ndarray | None
    c2_dot: np.ndarray | None
    order_magnitudes: list[float] = field(default_factory=list)  # max |kappa^n c^(n)|
    converged: bool = True


def assemble(tables: Sequence[CoefficientTable], c0, kappa: complex, x,
             c0_tables_derivative: Sequence[CoefficientTable] | None = None) -> AssembledSolution:
    """Partial sum ``sum_n kappa**n c^(n)(x)``.

    ``c0`` is ``(c1, c2, c1', c2')`` of the zeroth order at ``x``.  Passing
    derivative tables (``CoefficientTable.derivative``) also returns the
    derivative of the partial sum.  ``converged`` is False when the last
    order still exceeds ``1e-3`` of the partial sum.
    """
    x = np.asarray(x, dtype=complex)
    c1 = np.zeros_like(x)
    c2 = np.zeros_like(x)
    mags = []
    for n, tab in enumerate(tables):
        a, b = tab.evaluate(x, c0)
        w = kappa**n
        c1 = c1 + w * a
        c2 = c2 + w * b
        mags.append(float(np.max(np.maximum(np.abs(w * a), np.abs(w * b)))))
    d1 = d2 = None
    if c0_tables_derivative is not None:
        d1 = np.zeros_like(x)
        d2 = np.zeros_like(x)
        for n, tab in enumerate(c0_tables_derivative):
            a, b = tab.evaluate(x, c0)
            d1 = d1 + kappa**n * a
            d2 = d2 + kappa**n * b
    total = float(np.max(np.maximum(np.abs(c1), np.abs(c2))))
    ok = len(mags) < 2 or mags[-1] <= CONVERGENCE_RATIO * total
    return AssembledSolution(c1, c2, d1, d2, mags, ok)


@dataclass
class RegimeExpansion:
    """A regime with its tables up to ``max_order``; evaluates in physical time."""

    regime: Regime
    tables: list[CoefficientTable]
    dtables: list[CoefficientTable]
    combination: InitialCombination

    @classmethod
    def build(cls, regime: Regime, combination: InitialCombination | None = None,
              max_order: int = DEFAULT_MAX_ORDER, max_power: int = DEFAULT_MAX_POWER):
        ops = operator_tables(regime.triples, regime.quartic, max_power)
        tables = build_tables(ops, max_order, regime.triples.var)
        dtables = [t.derivative(regime.quartic) for t in tables]
        return cls(regime, tables, dtables, combination or InitialCombination())

    def evaluate(self, t, kappa: float, order: int | None = None) -> AssembledSolution:
        """``c1, c2`` and their ``t``-derivatives from orders ``0..order``."""
        order = len(self.tables) - 1 if order is None else order
        x = self.regime.to_x(t)
        c0 = self.combination.state(self.regime.pair, x)
        k = self.regime.kappa_eff(kappa)
        out = assemble(self.tables[: order + 1], c0, k, x, self.dtables[: order + 1])
        out.c1_dot = out.c1_dot * self.regime.scale
        out.c2_dot = out.c2_dot * self.regime.scale
        return out


def order_residual(tables: Sequence[CoefficientTable], quartic: QuarticCoeffs, n: int,
                   drop: int = 3) -> float:
    """Max coefficient of ``c^(n)'' + Q c^(n) -/+ 2 c^(n-1)'`` as tables.

    The top ``drop`` powers are ignored (differentiation shortens the tables).
    """
    t = tables[n]
    dd = t.derivative(quartic).derivative(quartic)
    Qs = TruncatedSeries.from_poly(quartic.coeffs, t.max_power, t.var)
    prev = tables[n - 1].derivative(quartic)
    keep = t.max_power + 1 - drop
    worst = 0.0
    # first component: alpha..delta against 2 * (lam..xi) of the previous order
    for f, g_prev in zip(FIELDS[:4], FIELDS[4:]):
        r = dd.series(f) + (Qs * t.series(f)) - prev.series(g_prev).scale(2)
        worst = max(worst, float(np.max(np.abs(r.coeffs[:keep]))))
    for f, g_prev in zip(FIELDS[4:], FIELDS[:4]):
        r = dd.series(f) + (Qs * t.series(f)) + prev.series(g_prev).scale(2)
        worst = max(worst, float(np.max(np.abs(r.coeffs[:keep]))))
    return worst
