# %% [markdown]
# # Integral triples in the two asymptotic regimes
#
# Products of two solutions of ``y'' + Q y = 0`` have closed antiderivatives
# ``int t^n y1 y2 = P_n y1 y2 + Q_n (y1 y2' + y2 y1')/2 + R_n y1' y2'``.
# This walk-through prints the polynomial triples for the Airy potential
# ``Q = -z`` and the series triples for the pure quartic ``Q = beta**2 t**4``,
# then checks the identity numerically.

# %%
import numpy as np

from ptlz.heun_integrals import (
    airy_exact_triple,
    antiderivative_y1y2,
    bessel_triples,
    rn_airy,
    rn_bessel,
)
from ptlz.model import QuarticCoeffs
from ptlz.specfun import airy_fundamental_pair, quartic_pair, series_solutions


def show_poly(coeffs, var="z"):
    terms = [f"({c}){var}^{k}" for k, c in enumerate(coeffs) if c != 0]
    return " + ".join(terms) or "0"


# %% [markdown]
# ## Airy regime: exact rational polynomials

# %%
for n in range(6):
    P, Q, R = airy_exact_triple(n)
    print(f"n={n}  R = {show_poly(R)}")
    print(f"      Q = {show_poly(Q)}")
    print(f"      P = {show_poly(P)}")

# %% [markdown]
# ## Quartic regime: hypergeometric series in ``t**6``

# %%
beta = 0.7
for n in (0, 1, 2, 9):
    R = rn_bessel(beta, n, 24).R
    nz = [(k, R[k].real) for k in range(R.order + 1) if abs(R[k]) > 1e-15][:3]
    print(f"R_{n}: " + "  ".join(f"{c:+.6g} t^{k}" for k, c in nz))

y1, y2 = series_solutions(QuarticCoeffs.pure_quartic(beta), 20)
prod = y1 * y2
print("y1 y2 :", "  ".join(f"{prod[k].real:+.6g} t^{k}" for k in (1, 7, 13)))
print("check :", f"{-2 / 35 * beta**2:+.6g} (t^7)  {6 / 5005 * beta**4:+.6g} (t^13)")

# %% [markdown]
# ## The identity, by finite differences

# %%
h = 1e-4
for label, pair, triples, x in (
    ("airy", airy_fundamental_pair(), None, np.linspace(-2, 2, 9)),
    ("quartic", quartic_pair(1.0), bessel_triples(1.0, 80), np.linspace(-1.5, 1.5, 9)),
):
    for n in (0, 3, 6):
        tr = rn_airy(n) if triples is None else triples[n]
        d = (antiderivative_y1y2(tr, pair, x + h) - antiderivative_y1y2(tr, pair, x - h)) / (2 * h)
        y1v, _, y2v, _ = pair.values(x)
        print(f"{label:8s} n={n}: max |d/dx F - x^n y1 y2| = {np.max(np.abs(d - x**n * y1v * y2v)):.2e}")
