"""Four-level coupled-cavity model with a parabolic frequency sweep.

Two pairs of cavities, each pair a 2x2 non-Hermitian block with intra-pair
coupling ``kappa`` and losses ``gamma0``/``gamma``; the pairs are joined by
``eta``.  Amplitudes live in three bases:

* ``A`` -- bare cavity amplitudes ``a1..a4``;
* ``B`` -- ``b = exp((gamma_bar + i*omega_bar) t) a``, which strips the mean
  frequency and mean loss (time origin fixed at ``t = 0``);
* ``C`` -- ``c1 = b1 + i b2``, ``c2 = b1 - i b2``, ``c3 = b3 + i b4``,
  ``c4 = b3 - i b4``.

Detuning convention
-------------------
The C-basis equations carry the *half* separations ``(w1 - w2)/2`` and
``(G - G0)/2`` on the diagonal and in the ``i*gamma`` couplings.  The sweep
``delta(t) = alpha + beta t**2`` is that half separation, so the bare
frequencies are ``omega_bar -/+ delta(t)``.  With this convention the
PT-symmetric C-system reduces to ``c'' + Q c = +/- 2 kappa c'`` with

    Q(t) = beta**2 t**4 + 2 alpha beta t**2 - 2i beta t + alpha**2 + eta**2 - kappa**2.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

PT_TOL = 1e-12
BASES = ("A", "B", "C")


@dataclass(frozen=True)
class ModelParams:
    """Physical inputs in dimensionless units."""

    omega1: float = 0.0
    omega2: float = 0.0
    kappa: float = 0.0
    eta: float = 0.0
    gamma0: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        if self.kappa < 0 or self.eta < 0:
            raise ValueError("kappa and eta must be non-negative")

    @property
    def is_pt(self) -> bool:
        return abs(self.gamma - self.gamma0) <= PT_TOL

    @property
    def omega_bar(self) -> float:
        return 0.5 * (self.omega1 + self.omega2)

    @property
    def gamma_bar(self) -> float:
        return 0.5 * (self.gamma0 + self.gamma)


@dataclass(frozen=True)
class SweepParams:
    """Parabolic detuning ``delta(t) = alpha + beta t**2``."""

    alpha: float = 0.0
    beta: float = 1.0

    def __post_init__(self):
        if self.beta == 0:
            raise ValueError("beta must be non-zero")

    def delta(self, t):
        return self.alpha + self.beta * np.asarray(t) ** 2

    def delta_dot(self, t):
        return 2.0 * self.beta * np.asarray(t)


@dataclass(frozen=True)
class DerivedCouplings:
    """C-basis couplings at one instant.

    ``delta_omega`` and ``delta_gamma`` are the half separations, so
    ``Omega = delta_omega + i delta_gamma = ((w1 - w2) + i (G - G0)) / 2``.
    """

    delta_omega: float
    delta_gamma: float
    omega_bar: float
    gamma_bar: float
    kappa: float

    @property
    def Omega(self) -> complex:
        return complex(self.delta_omega, self.delta_gamma)

    @property
    def gamma_plus(self) -> float:
        return self.delta_gamma + self.kappa

    @property
    def gamma_minus(self) -> float:
        return self.delta_gamma - self.kappa


def derived_couplings(params: ModelParams, sweep: SweepParams | None = None, t: float = 0.0) -> DerivedCouplings:
    if sweep is None:
        d_omega = 0.5 * (params.omega1 - params.omega2)
    else:
        d_omega = float(sweep.delta(t))
    return DerivedCouplings(
        delta_omega=d_omega,
        delta_gamma=0.5 * (params.gamma - params.gamma0),
        omega_bar=params.omega_bar,
        gamma_bar=params.gamma_bar,
        kappa=params.kappa,
    )


@dataclass(frozen=True)
class QuarticCoeffs:
    """``Q(t) = a0 + a1 t + a2 t**2 + a3 t**3 + a4 t**4``."""

    a0: complex = 0.0
    a1: complex = 0.0
    a2: complex = 0.0
    a3: complex = 0.0
    a4: complex = 0.0

    @property
    def coeffs(self) -> np.ndarray:
        return np.array([self.a0, self.a1, self.a2, self.a3, self.a4], dtype=complex)

    def __call__(self, t):
        t = np.asarray(t, dtype=complex)
        a = self.coeffs
        return (((a[4] * t + a[3]) * t + a[2]) * t + a[1]) * t + a[0]

    def derivative(self, t):
        t = np.asarray(t, dtype=complex)
        a = self.coeffs
        return ((4 * a[4] * t + 3 * a[3]) * t + 2 * a[2]) * t + a[1]

    @classmethod
    def pure_quartic(cls, beta: float) -> "QuarticCoeffs":
        return cls(a4=beta**2)

    @classmethod
    def airy(cls) -> "QuarticCoeffs":
        """``Q(z) = -z``: the Airy equation ``y'' - z y = 0``."""
        return cls(a1=-1.0)


@dataclass(frozen=True)
class StateVector:
    basis: str
    amps: np.ndarray = field(repr=True)

    def __post_init__(self):
        if self.basis not in BASES:
            raise ValueError(f"unknown basis {self.basis!r}")
        a = np.array(self.amps, dtype=complex).reshape(4)
        a.setflags(write=False)
        object.__setattr__(self, "amps", a)


def _require(state: StateVector, basis: str):
    if state.basis != basis:
        raise ValueError(f"expected a {basis}-basis state, got {state.basis}")


# Hamiltonians -----------------------------------------------------------

def build_hamiltonian(params: ModelParams, omegas: tuple[float, float] | None = None) -> np.ndarray:
    """4x4 bare-basis Hamiltonian; ``omegas=(w1, w2)`` overrides the pair frequencies."""
    w1, w2 = (params.omega1, params.omega2) if omegas is None else omegas
    k, e, g0, g = params.kappa, params.eta, params.gamma0, params.gamma
    return np.array(
        [
            [w2 - 1j * g0, k, 0, e],
            [k, w2 - 1j * g, e, 0],
            [0, e, w1 - 1j * g0, k],
            [e, 0, k, w1 - 1j * g],
        ],
        dtype=complex,
    )


def swept_frequencies(params: ModelParams, sweep: SweepParams, t: float) -> tuple[float, float]:
    d = float(sweep.delta(t))
    return params.omega_bar + d, params.omega_bar - d


def hamiltonian_at(params: ModelParams, sweep: SweepParams | None, t: float) -> np.ndarray:
    if sweep is None:
        return build_hamiltonian(params)
    return build_hamiltonian(params, swept_frequencies(params, sweep, t))


def c_basis_hamiltonian(params: ModelParams, sweep: SweepParams | None, t: float) -> np.ndarray:
    """Generator of ``i c' = H' c`` in the C basis."""
    dc = derived_couplings(params, sweep, t)
    d, g, gp, e = dc.delta_omega, dc.gamma_plus, dc.gamma_minus, params.eta
    return np.array(
        [
            [-d, 1j * g, 0, 1j * e],
            [1j * gp, -d, -1j * e, 0],
            [0, 1j * e, d, 1j * g],
            [-1j * e, 0, 1j * gp, d],
        ],
        dtype=complex,
    )


# basis changes ----------------------------------------------------------

_B_TO_C = np.array(
    [[1, 1j, 0, 0], [1, -1j, 0, 0], [0, 0, 1, 1j], [0, 0, 1, -1j]], dtype=complex
)
_C_TO_B = np.linalg.inv(_B_TO_C)


def b_phase(params: ModelParams, t) -> complex:
    """``exp(int_0^t (gamma_bar + i omega_bar) ds)``."""
    return np.exp((params.gamma_bar + 1j * params.omega_bar) * np.asarray(t))


def to_b_basis(a: StateVector, t: float, params: ModelParams) -> StateVector:
    _require(a, "A")
    return StateVector("B", b_phase(params, t) * a.amps)


def from_b_basis(b: StateVector, t: float, params: ModelParams) -> StateVector:
    _require(b, "B")
    return StateVector("A", b.amps / b_phase(params, t))


def to_c_basis(b: StateVector) -> StateVector:
    _require(b, "B")
    return StateVector("C", _B_TO_C @ b.amps)


def from_c_basis(c: StateVector) -> StateVector:
    _require(c, "C")
    return StateVector("B", _C_TO_B @ c.amps)


def b_to_c_matrix() -> np.ndarray:
    return _B_TO_C.copy()


def c_to_b_matrix() -> np.ndarray:
    return _C_TO_B.copy()


# reduced dynamics -------------------------------------------------------

def quartic_coeffs(sweep: SweepParams, params: ModelParams) -> QuarticCoeffs:
    """Potential of the PT-symmetric C-system ``c'' + Q c = +/- 2 kappa c'``."""
    if not params.is_pt:
        raise ValueError("the quartic reduction requires gamma0 == gamma (PT-symmetric case)")
    a, b = sweep.alpha, sweep.beta
    return QuarticCoeffs(
        a0=a**2 + params.eta**2 - params.kappa**2,
        a1=-2j * b,
        a2=2 * a * b,
        a3=0.0,
        a4=b**2,
    )


def conserved_quantity(c1, c2, c1_dot, c2_dot, kappa: float):
    """``c1' c2 - c2' c1 - kappa (c1**2 + c2**2)``; constant on PT trajectories."""
    return c1_dot * c2 - c2_dot * c1 - kappa * (c1 * c1 + c2 * c2)


def eliminate_c34(c1, c2, c1_dot, c2_dot, params: ModelParams, sweep: SweepParams, t):
    """Recover ``(c3, c4)`` from ``(c1, c2)`` and their derivatives (needs ``eta > 0``)."""
    if params.eta == 0:
        raise ValueError("elimination needs eta > 0")
    dc = derived_couplings(params)  # gammas do not depend on t
    d = sweep.delta(t)
    c3 = -(c2_dot - 1j * d * c2 - dc.gamma_minus * c1) / params.eta
    c4 = (c1_dot - 1j * d * c1 - dc.gamma_plus * c2) / params.eta
    return c3, c4


# spectrum ---------------------------------------------------------------

def sort_key(x, rel: float = 1e-9):
    scale = max(float(np.max(np.abs(x))), 1.0)
    return np.round(np.asarray(x) / (rel * scale))


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    residuals: np.ndarray  # nan where the check was skipped
    near_defective: bool


def spectrum(params: ModelParams, t: float = 0.0, sweep: SweepParams | None = None,
             cond_limit: float = 1e6) -> Spectrum:
    """Instantaneous eigenvalues sorted by real part, then imaginary part.

    Real parts equal to 1e-9 (relative) count as ties so round-off cannot
    reorder degenerate pairs.
    """
    H = hamiltonian_at(params, sweep, t)
    vals, vecs = np.linalg.eig(H)
    order = np.lexsort((vals.imag, sort_key(vals.real)))
    vals, vecs = vals[order], vecs[:, order]
    cond = np.linalg.cond(vecs)
    defective = not np.isfinite(cond) or cond > cond_limit
    if defective:
        res = np.full(4, np.nan)
    else:
        res = np.linalg.norm(H @ vecs - vecs * vals, axis=0)
    return Spectrum(vals, res, defective)
