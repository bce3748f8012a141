# %% [markdown]
# # The kappa expansion against the ODE oracle
#
# In the PT-symmetric case the two surviving amplitudes obey
# ``c1'' + Q c1 = 2 kappa c2'`` and ``c2'' + Q c2 = -2 kappa c1'``.
# Expanding in ``kappa`` gives order tables built from the integral triples.
# Truncating at order ``N`` should leave an error of order ``kappa**(N+1)``.

# %%
import numpy as np

from ptlz.model import ModelParams, SweepParams, quartic_coeffs
from ptlz.oracle import integrate_c_system
from ptlz.perturbation import InitialCombination, RegimeExpansion, airy_regime, quartic_regime

sweep = SweepParams(alpha=0.5, beta=1.0)
comb = InitialCombination(1, 0.5, 0.3, 1)
kappas = np.array([0.02, 0.04, 0.08])


def max_error(which, kappa, order):
    params = ModelParams(kappa=kappa, eta=1.0)
    if which == "airy":
        window, L = (-0.3, 0.3), 40
        reg = airy_regime(quartic_coeffs(sweep, params), L)
    else:
        window, L = (1.2, 2.5), 200
        reg = quartic_regime(sweep.beta, L)
    ts = np.linspace(*window, 61)
    sol = RegimeExpansion.build(reg, comb, order, L).evaluate(ts, kappa)
    # start the oracle on the series state, with the potential the regime keeps
    tr = integrate_c_system(params, sweep, (sol.c1[0], sol.c2[0]), (sol.c1_dot[0], sol.c2_dot[0]),
                            window, 1e-12, ts, quartic=reg.potential)
    return max(np.max(np.abs(tr.component("c1") - sol.c1)), np.max(np.abs(tr.component("c2") - sol.c2)))


# %%
for which in ("airy", "quartic-bessel"):
    for order in (0, 1, 2, 3):
        errs = np.array([max_error(which, k, order) for k in kappas])
        slope = np.polyfit(np.log(kappas), np.log(errs), 1)[0]
        shown = " ".join(f"{e:.2e}" for e in errs)
        print(f"{which:15s} N={order}: errors {shown}  slope {slope:.2f}")
