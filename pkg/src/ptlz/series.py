"""Truncated complex power series.

Every coefficient object in the package (the R/Q/P integral coefficients,
operator-table rows, hypergeometric expansions) is a ``TruncatedSeries``:
dense complex coefficients ``c[0..N]`` in one variable, with the
understanding that everything from ``x**(N+1)`` on has been dropped.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

DEFAULT_ORDER = 60


class Evaluation(NamedTuple):
    value: complex
    error: float  # magnitude of the last retained term
    in_radius: bool


def _as_coeffs(coeffs) -> np.ndarray:
    arr = np.array(coeffs, dtype=complex).ravel()
    if arr.size == 0:
        arr = np.zeros(1, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Power series ``sum_k c[k] x**k`` known up to and including ``x**order``.

    Binary operations require matching variable tags and truncate the
    result at the smaller of the two orders.
    """

    coeffs: np.ndarray
    var: str = "t"

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _as_coeffs(self.coeffs))

    # construction -------------------------------------------------------
    @classmethod
    def zeros(cls, order: int = DEFAULT_ORDER, var: str = "t") -> "TruncatedSeries":
        return cls(np.zeros(order + 1, dtype=complex), var)

    @classmethod
    def constant(cls, value: complex, order: int = DEFAULT_ORDER, var: str = "t") -> "TruncatedSeries":
        c = np.zeros(order + 1, dtype=complex)
        c[0] = value
        return cls(c, var)

    @classmethod
    def monomial(cls, power: int, order: int = DEFAULT_ORDER, var: str = "t",
                 coeff: complex = 1.0) -> "TruncatedSeries":
        c = np.zeros(order + 1, dtype=complex)
        if power <= order:
            c[power] = coeff
        return cls(c, var)

    @classmethod
    def from_poly(cls, coeffs: Sequence[complex], order: int = DEFAULT_ORDER,
                  var: str = "t") -> "TruncatedSeries":
        """Low-to-high polynomial coefficients, padded or cut to ``order``."""
        c = np.zeros(order + 1, dtype=complex)
        src = np.asarray(coeffs, dtype=complex)[: order + 1]
        c[: src.size] = src
        return cls(c, var)

    # basic properties ---------------------------------------------------
    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __len__(self) -> int:
        return self.coeffs.size

    def __getitem__(self, k):
        return self.coeffs[k]

    def __repr__(self) -> str:
        nz = np.flatnonzero(self.coeffs)
        head = ", ".join(f"{k}:{self.coeffs[k]:.6g}" for k in nz[:6])
        more = ", ..." if nz.size > 6 else ""
        return f"TruncatedSeries({self.var}, N={self.order}, {{{head}{more}}})"

    def truncate(self, order: int) -> "TruncatedSeries":
        if order >= self.order:
            return self.from_poly(self.coeffs, order, self.var)
        return TruncatedSeries(self.coeffs[: order + 1], self.var)

    def is_close(self, other: "TruncatedSeries", rtol: float = 1e-12, atol: float = 0.0) -> bool:
        self._check(other)
        n = min(self.order, other.order) + 1
        return bool(np.allclose(self.coeffs[:n], other.coeffs[:n], rtol=rtol, atol=atol))

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "TruncatedSeries"):
        if self.var != other.var:
            raise ValueError(f"variable mismatch: {self.var!r} vs {other.var!r}")

    def _pair(self, other):
        self._check(other)
        n = min(self.order, other.order) + 1
        return self.coeffs[:n], other.coeffs[:n]

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            a, b = self._pair(other)
            return TruncatedSeries(a + b, self.var)
        c = self.coeffs.copy()
        c[0] += other
        return TruncatedSeries(c, self.var)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-self.coeffs, self.var)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor: complex) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs * factor, self.var)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            a, b = self._pair(other)
            return TruncatedSeries(np.convolve(a, b)[: a.size], self.var)
        return self.scale(other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            raise TypeError("series division is not supported")
        return self.scale(1.0 / other)

    def shift(self, power: int) -> "TruncatedSeries":
        """Multiply by ``x**power`` keeping the same truncation order."""
        c = np.zeros_like(self.coeffs)
        if power < self.coeffs.size:
            c[power:] = self.coeffs[: self.coeffs.size - power]
        return TruncatedSeries(c, self.var)

    # calculus -----------------------------------------------------------
    def differentiate(self) -> "TruncatedSeries":
        if self.order == 0:
            return TruncatedSeries([0.0], self.var)
        k = np.arange(1, self.coeffs.size)
        return TruncatedSeries(self.coeffs[1:] * k, self.var)

    def integrate(self) -> "TruncatedSeries":
        """Antiderivative with zero constant term (one order higher)."""
        c = np.zeros(self.coeffs.size + 1, dtype=complex)
        c[1:] = self.coeffs / np.arange(1, self.coeffs.size + 1)
        return TruncatedSeries(c, self.var)

    # evaluation ---------------------------------------------------------
    def __call__(self, x):
        """Horner evaluation; accepts scalars or arrays."""
        x = np.asarray(x, dtype=complex)
        acc = np.zeros_like(x)
        for c in self.coeffs[::-1]:
            acc = acc * x + c
        return acc if acc.ndim else complex(acc)

    def evaluate(self, x: complex, radius: float | None = None) -> Evaluation:
        """Value at ``x`` with the last-term truncation estimate.

        ``in_radius`` is False when ``|x|`` exceeds the caller's ``radius``.
        """
        value = self(complex(x))
        err = float(abs(self.coeffs[-1]) * abs(x) ** self.order)
        ok = True if radius is None else abs(x) <= radius
        return Evaluation(value, err, ok)

    # serialization ------------------------------------------------------
    def dumps(self) -> str:
        """One coefficient per line: ``k re im``."""
        return "".join(f"{k} {float(c.real)!r} {float(c.imag)!r}\n" for k, c in enumerate(self.coeffs))

    @classmethod
    def loads(cls, text: str, var: str = "t") -> "TruncatedSeries":
        rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        order = max(int(r[0]) for r in rows)
        c = np.zeros(order + 1, dtype=complex)
        for k, re, im in rows:
            c[int(k)] = complex(float(re), float(im))
        return cls(c, var)


def poly_series(coeffs: Iterable[complex], order: int = DEFAULT_ORDER, var: str = "t") -> TruncatedSeries:
    return TruncatedSeries.from_poly(list(coeffs), order, var)
