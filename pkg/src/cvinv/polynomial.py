"""Dense univariate polynomials with complex coefficients, low degree first."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import SingularAtCenter


def _trim(c: np.ndarray) -> np.ndarray:
    # exact zeros only: roundoff must never lower the degree
    nz = np.flatnonzero(c)
    if nz.size == 0:
        return np.zeros(1, dtype=np.complex128)
    return c[: nz[-1] + 1]


class Polynomial:
    """Immutable polynomial ``sum_t coeffs[t] * x**t``.

    The zero polynomial is stored as ``[0]``; otherwise the leading
    coefficient is nonzero.
    """

    __slots__ = ("_c",)

    def __init__(self, coefficients):
        c = np.array(coefficients, dtype=np.complex128, ndmin=1)
        if c.ndim != 1:
            raise ValueError("coefficients must be one-dimensional")
        if c.size == 0:
            c = np.zeros(1, dtype=np.complex128)
        c = _trim(c)
        c.setflags(write=False)
        self._c = c

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def degree(self) -> int:
        return self._c.size - 1

    def is_zero(self) -> bool:
        return self._c.size == 1 and self._c[0] == 0

    def __len__(self):
        return self._c.size

    def __call__(self, x):
        acc = 0j
        for a in self._c[::-1]:
            acc = acc * x + a
        return acc

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return multiply(self, other)
        return Polynomial(self._c * other)

    __rmul__ = __mul__

    def __add__(self, other: Polynomial) -> Polynomial:
        size = max(len(self), len(other))
        out = np.zeros(size, dtype=np.complex128)
        out[: len(self)] += self._c
        out[: len(other)] += other._c
        return Polynomial(out)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return np.array_equal(self._c, other._c)

    __hash__ = None

    def padded(self, length: int) -> np.ndarray:
        """Coefficient vector zero-padded to ``length`` entries."""
        if length < len(self):
            raise ValueError(f"degree {self.degree} does not fit in {length} coefficients")
        out = np.zeros(length, dtype=np.complex128)
        out[: len(self)] = self._c
        return out

    def recentered(self, center: complex) -> np.ndarray:
        """Coefficients of the same polynomial in powers of ``(x - center)``."""
        return _kernels.taylor_shift(np.array(self._c), complex(center))

    def __repr__(self):
        return f"Polynomial({self._c.tolist()})"


ONE = Polynomial([1.0])


@dataclass(frozen=True)
class TaylorSeries:
    center: complex
    coefficients: np.ndarray

    @property
    def order(self) -> int:
        return self.coefficients.size - 1


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    return Polynomial(_kernels.convolve(np.array(p.coeffs), np.array(q.coeffs)))


def shifted_power(center: complex, m: int) -> Polynomial:
    """Monomial-basis expansion of ``(x - center)**m``."""
    if m < 0:
        raise ValueError("power must be nonnegative")
    neg = -complex(center)
    pw = np.empty(m + 1, dtype=np.complex128)
    pw[0] = 1.0
    for e in range(1, m + 1):
        pw[e] = pw[e - 1] * neg
    binom = np.array([float(math.comb(m, s)) for s in range(m + 1)])
    return Polynomial(binom * pw[::-1])


def nodal_polynomial_excluding(config, j: int) -> Polynomial:
    """``prod_{i != j} (x - x_i)**l_i``; ``[1]`` for a single node."""
    if not 0 <= j < config.n:
        raise IndexError(f"node index {j} out of range for n={config.n}")
    out = ONE
    for i, (x, ell) in enumerate(zip(config.nodes, config.multiplicities)):
        if i != j:
            out = multiply(out, shifted_power(x, ell))
    return out


def coeff_l1_norm(p: Polynomial) -> float:
    return float(np.abs(p.coeffs).sum())


def series_reciprocal(p: Polynomial, center: complex, order: int) -> TaylorSeries:
    """Taylor coefficients of ``1/p`` about ``center`` through ``order``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    a = p.recentered(center)
    if a[0] == 0:
        raise SingularAtCenter(f"polynomial vanishes at {center}")
    s = _kernels.reciprocal_series(a, order)
    s.setflags(write=False)
    return TaylorSeries(complex(center), s)


def truncated_product(a: np.ndarray, b: np.ndarray, order: int) -> np.ndarray:
    """First ``order + 1`` coefficients of the product of two series."""
    return _kernels.convolve(np.asarray(a, np.complex128), np.asarray(b, np.complex128))[: order + 1]
