"""Reference trajectories from adaptive high-order integration.

Complex systems are integrated as real systems of twice the size with
scipy's DOP853 (an explicit 8(5,3) Runge-Kutta pair with 7th-order dense
output).  Every trajectory carries named monitors (conserved quantity,
Wronskian) so accuracy is visible without a second run.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad, solve_ivp
from scipy.linalg import expm

from .model import (
    ModelParams,
    QuarticCoeffs,
    StateVector,
    SweepParams,
    b_phase,
    b_to_c_matrix,
    c_basis_hamiltonian,
    c_to_b_matrix,
    conserved_quantity,
    eliminate_c34,
    hamiltonian_at,
    quartic_coeffs,
)
from .specfun import FundamentalPair

TOL_RANGE = (1e-13, 1e-6)
DEFAULT_SPAN = (-3.0, 3.0)
ATOL_FACTOR = 1e-3  # absolute tolerance relative to tol for O(1) states


class IntegrationError(RuntimeError):
    """Integrator failure; ``t`` is where it stopped."""

    def __init__(self, message: str, t: float | None = None):
        super().__init__(message if t is None else f"{message} (at t = {t:.17g})")
        self.t = t


@dataclass
class Trajectory:
    """Samples ``states[i]`` at ``t[i]`` with named complex monitors."""

    t: np.ndarray
    states: np.ndarray
    labels: tuple[str, ...]
    monitors: dict[str, np.ndarray] = field(default_factory=dict)
    monitor_scale: dict[str, float] = field(default_factory=dict)
    stats: dict = field(default_factory=dict)
    dense: Callable | None = field(default=None, repr=False)

    def __post_init__(self):
        self.t = np.asarray(self.t, dtype=float)
        if self.t.size > 1 and not np.all(np.diff(self.t) > 0):
            raise ValueError("trajectory times must be strictly increasing")

    def component(self, label: str) -> np.ndarray:
        return self.states[:, self.labels.index(label)]

    def drift(self, name: str) -> float:
        """Max ``|I(t) - I(t_0)|`` relative to the size of the terms of ``I``."""
        m = self.monitors[name]
        scale = self.monitor_scale.get(name) or max(float(np.max(np.abs(m))), 1e-300)
        return float(np.max(np.abs(m - m[0])) / scale)

    def at(self, t) -> np.ndarray:
        """Dense-output state at ``t`` (any time inside the span)."""
        if self.dense is None:
            raise ValueError("no dense output stored")
        return self.dense(t)

    def to_csv(self, target=None) -> str:
        """``t``, re/im of each component and each monitor; 17 significant digits."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        names = list(self.monitors)
        header = ["t [1]"]
        for lab in list(self.labels) + names:
            header += [f"re_{lab} [1]", f"im_{lab} [1]"]
        w.writerow(header)
        for i, ti in enumerate(self.t):
            row = [f"{ti:.17g}"]
            vals = list(self.states[i]) + [self.monitors[n][i] for n in names]
            for v in vals:
                row += [f"{v.real:.17g}", f"{v.imag:.17g}"]
            w.writerow(row)
        text = buf.getvalue()
        if target is not None:
            with open(target, "w", newline="") as fh:
                fh.write(text)
        return text


def _check_tol(tol: float):
    lo, hi = TOL_RANGE
    if not lo <= tol <= hi:
        raise ValueError(f"tol must lie in [{lo:g}, {hi:g}], got {tol:g}")


def _solve_complex(rhs, y0, t_span, tol, t_eval=None):
    """Integrate ``y' = rhs(t, y)`` for complex ``y``."""
    y0 = np.asarray(y0, dtype=complex)
    m = y0.size

    def f(t, u):
        dy = rhs(t, u[:m] + 1j * u[m:])
        return np.concatenate([dy.real, dy.imag])

    u0 = np.concatenate([y0.real, y0.imag])
    sol = solve_ivp(f, t_span, u0, method="DOP853", rtol=tol, atol=tol * ATOL_FACTOR,
                    t_eval=t_eval, dense_output=True)
    if sol.status != 0:
        where = float(sol.t[-1]) if sol.t.size else float(t_span[0])
        raise IntegrationError(f"integration failed: {sol.message}", where)
    ys = (sol.y[:m] + 1j * sol.y[m:]).T

    def dense(t):
        u = sol.sol(t)
        return (u[:m] + 1j * u[m:]).T

    stats = {"steps": int(sol.t.size - 1) if t_eval is None else None, "nfev": int(sol.nfev),
             "rejected": None, "tol": tol, "method": "DOP853"}
    return sol.t, ys, stats, dense


# four-level system -------------------------------------------------------

def integrate_four_level(params: ModelParams, sweep: SweepParams | None, a0: StateVector,
                         t_span=DEFAULT_SPAN, tol: float = 1e-10, t_eval=None) -> Trajectory:
    """``i a' = H(t) a`` in the bare basis; ``sweep=None`` keeps ``omega1, omega2`` fixed."""
    _check_tol(tol)
    if a0.basis != "A":
        raise ValueError("initial state must be in the A basis")
    if sweep is None:
        H = hamiltonian_at(params, None, 0.0)
        rhs = lambda t, a: -1j * (H @ a)  # noqa: E731
    else:
        rhs = lambda t, a: -1j * (hamiltonian_at(params, sweep, t) @ a)  # noqa: E731
    t, ys, stats, dense = _solve_complex(rhs, a0.amps, t_span, tol, t_eval)
    return Trajectory(t, ys, ("a1", "a2", "a3", "a4"), stats=stats, dense=dense)


def static_evolution(params: ModelParams, a0: StateVector, t: float) -> np.ndarray:
    """``exp(-i H t) a0`` for fixed frequencies (matrix-exponential oracle)."""
    return expm(-1j * hamiltonian_at(params, None, 0.0) * t) @ a0.amps


# c-system -----------------------------------------------------------------

def c_initial_from_a(a0: StateVector, params: ModelParams, sweep: SweepParams, t0: float):
    """``((c1, c2), (c1', c2'))`` at ``t0`` for a bare-basis state."""
    c = b_to_c_matrix() @ (b_phase(params, t0) * a0.amps)
    cdot = -1j * (c_basis_hamiltonian(params, sweep, t0) @ c)
    return (c[0], c[1]), (cdot[0], cdot[1])


def integrate_c_system(params: ModelParams, sweep: SweepParams, c0, c0_dot, t_span=DEFAULT_SPAN,
                       tol: float = 1e-10, t_eval=None, quartic: QuarticCoeffs | None = None) -> Trajectory:
    """``c1'' + Q c1 = 2 kappa c2'``, ``c2'' + Q c2 = -2 kappa c1'``.

    ``quartic`` replaces the model potential (used to integrate the same
    truncated ``Q`` a regime approximation stands for).  Monitors the
    conserved quantity.
    """
    _check_tol(tol)
    q = quartic if quartic is not None else quartic_coeffs(sweep, params)
    if quartic is None and not params.is_pt:
        raise ValueError("the c-system needs gamma0 == gamma")
    k = params.kappa
    a = q.coeffs

    def rhs(t, y):
        Q = (((a[4] * t + a[3]) * t + a[2]) * t + a[1]) * t + a[0]
        return np.array([y[2], y[3], -Q * y[0] + 2 * k * y[3], -Q * y[1] - 2 * k * y[2]])

    y0 = [c0[0], c0[1], c0_dot[0], c0_dot[1]]
    t, ys, stats, dense = _solve_complex(rhs, y0, t_span, tol, t_eval)
    c1, c2, d1, d2 = ys.T
    inv = conserved_quantity(c1, c2, d1, d2, k)
    scale = float(np.max(np.abs(d1 * c2) + np.abs(d2 * c1) + k * (np.abs(c1) ** 2 + np.abs(c2) ** 2)))
    return Trajectory(t, ys, ("c1", "c2", "c1_dot", "c2_dot"), {"conserved": inv},
                      {"conserved": scale}, stats, dense)


def c_trajectory_to_a(traj: Trajectory, params: ModelParams, sweep: SweepParams) -> np.ndarray:
    """Bare-basis amplitudes along a c-system trajectory (needs ``eta > 0``)."""
    c1, c2, d1, d2 = traj.states.T
    c3, c4 = eliminate_c34(c1, c2, d1, d2, params, sweep, traj.t)
    b = c_to_b_matrix() @ np.vstack([c1, c2, c3, c4])
    return (b / b_phase(params, traj.t)).T


# fundamental pair ---------------------------------------------------------

def integrate_fundamental_pair(quartic: QuarticCoeffs, t_span=DEFAULT_SPAN, tol: float = 1e-10,
                               t_eval=None) -> FundamentalPair:
    """``T1`` (0, 1) and ``T2`` (1, 0) at ``t = 0``, integrated both ways from 0.

    ``meta['trajectory']`` holds the samples with the Wronskian monitor.
    """
    _check_tol(tol)
    lo, hi = float(t_span[0]), float(t_span[1])
    if not lo <= 0 <= hi:
        raise ValueError("t_span must contain 0")
    a = quartic.coeffs

    def rhs(t, y):
        Q = (((a[4] * t + a[3]) * t + a[2]) * t + a[1]) * t + a[0]
        return np.array([y[1], -Q * y[0], y[3], -Q * y[2]])

    y0 = [0.0, 1.0, 1.0, 0.0]
    parts = []
    for end in (lo, hi):
        if end == 0:
            parts.append(None)
            continue
        ev = None
        if t_eval is not None:
            te = np.asarray(t_eval, dtype=float)
            ev = np.sort(te[(te <= 0) if end < 0 else (te >= 0)])
            ev = ev[::-1] if end < 0 else ev
        parts.append(_solve_complex(rhs, y0, (0.0, end), tol, ev))

    def state(x):
        x = np.asarray(x)
        if np.any(np.iscomplex(x)):
            raise ValueError("the integrated pair is defined on the real axis only")
        x = x.real.astype(float)
        out = np.empty(x.shape + (4,), dtype=complex)
        for idx, part in ((x < 0, parts[0]), (x >= 0, parts[1])):
            if np.any(idx):
                if part is None:
                    out[idx] = y0
                else:
                    out[idx] = part[3](x[idx]).reshape(-1, 4)
        return out

    def y1(x):
        s = state(x)
        return s[..., 0], s[..., 1]

    def y2(x):
        s = state(x)
        return s[..., 2], s[..., 3]

    ts, ys, nfev = [], [], 0
    for part, flip in ((parts[0], True), (parts[1], False)):
        if part is None:
            continue
        tt, yy = part[0], part[1]
        if flip:
            tt, yy = tt[::-1], yy[::-1]
        if ts and tt.size and ts[-1][-1] == tt[0]:
            tt, yy = tt[1:], yy[1:]
        ts.append(tt)
        ys.append(yy)
        nfev += part[2]["nfev"]
    t_all = np.concatenate(ts)
    y_all = np.concatenate(ys)
    wr = y_all[:, 0] * y_all[:, 3] - y_all[:, 2] * y_all[:, 1]
    scale = float(np.max(np.abs(y_all[:, 0] * y_all[:, 3]) + np.abs(y_all[:, 2] * y_all[:, 1])))
    traj = Trajectory(t_all, y_all, ("T1", "T1_dot", "T2", "T2_dot"), {"wronskian": wr},
                      {"wronskian": scale}, {"nfev": nfev, "rejected": None, "tol": tol, "method": "DOP853"})
    return FundamentalPair(y1, y2, -1.0, "generic-series", quartic, "t", {"trajectory": traj})


# quadrature ---------------------------------------------------------------

def quadrature(f: Callable, t0: float, t1: float, tol: float = 1e-10, limit: int = 200) -> complex:
    """Adaptive Gauss-Kronrod integral of a complex integrand on a real interval."""
    out = []
    for part in (lambda t: complex(f(t)).real, lambda t: complex(f(t)).imag):
        val, err, info = quad(part, t0, t1, epsabs=tol, epsrel=tol, limit=limit, full_output=1)[:3]
        if err > max(tol, tol * abs(val)) and info.get("last", 0) >= limit:
            raise IntegrationError(f"quadrature did not converge after {limit} subdivisions "
                                   f"(error estimate {err:.3g})")
        out.append(val)
    return complex(out[0], out[1])


def compare_trajectories(a: np.ndarray, b: np.ndarray) -> float:
    """Max componentwise deviation relative to the larger state norm."""
    scale = max(float(np.max(np.abs(a))), float(np.max(np.abs(b))), 1e-300)
    return float(np.max(np.abs(a - b)) / scale)


def sample_grid(t_span: Sequence[float], n: int) -> np.ndarray:
    return np.linspace(float(t_span[0]), float(t_span[1]), int(n))
