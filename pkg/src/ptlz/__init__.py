"""Four-level non-Hermitian parabolic Landau-Zener model: exact reductions,
kappa-perturbation series, Heun-product integrals and an ODE oracle."""

__version__ = "0.1.0"

from .model import (  # noqa: E402
    DerivedCouplings,
    ModelParams,
    QuarticCoeffs,
    StateVector,
    SweepParams,
    build_hamiltonian,
    conserved_quantity,
    derived_couplings,
    quartic_coeffs,
    spectrum,
)
from .series import TruncatedSeries  # noqa: E402

__all__ = [
    "DerivedCouplings",
    "ModelParams",
    "QuarticCoeffs",
    "StateVector",
    "SweepParams",
    "TruncatedSeries",
    "build_hamiltonian",
    "conserved_quantity",
    "derived_couplings",
    "quartic_coeffs",
    "spectrum",
]
