"""Confluent Vandermonde matrices and their inverse rows in closed form.

Column ``(j, s)`` of the matrix holds the ``s``-th derivative of ``x**k``
at node ``x_j`` down rows ``k = 0..N-1``. Row ``(j, k)`` of the inverse is
the coefficient vector of the Hermite basis polynomial

    (1/k!) * sum_t h_j^(t)(x_j)/t! * (x - x_j)**(k+t) * prod_{i!=j} (x - x_i)**l_i

with ``h_j = prod_{i!=j} (x - x_i)**(-l_i)`` and ``t = 0..l_j-1-k``.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from ._kernels import FACTORIALS
from .nodes import NodeConfiguration
from .polynomial import (
    Polynomial,
    coeff_l1_norm,
    multiply,
    nodal_polynomial_excluding,
    shifted_power,
)


@dataclass(frozen=True)
class ConfluentMatrix:
    entries: np.ndarray
    config: NodeConfiguration

    @property
    def N(self) -> int:
        return self.entries.shape[0]

    def column_index(self, j: int, s: int) -> int:
        """Flat column of derivative order ``s`` at node ``j``."""
        if not 0 <= s < self.config.multiplicities[j]:
            raise IndexError(f"derivative order {s} out of range for node {j}")
        return self.config.offsets()[j] + s

    def block_of(self, column: int) -> tuple[int, int]:
        """Inverse of :meth:`column_index`."""
        if not 0 <= column < self.N:
            raise IndexError(column)
        for j, start in reversed(list(enumerate(self.config.offsets()))):
            if column >= start:
                return j, column - start
        raise AssertionError("unreachable")


@dataclass(frozen=True)
class HDerivatives:
    j: int
    values: np.ndarray

    @property
    def t_max(self) -> int:
        return self.values.size - 1


@dataclass
class InverseRows:
    """Rows ``u_{j,k}`` of the inverse keyed by 0-based ``(j, k)``."""

    config: NodeConfiguration
    rows: dict[tuple[int, int], np.ndarray] = field(default_factory=dict)
    row_l1_norms: dict[tuple[int, int], float] = field(default_factory=dict)

    def keys(self):
        """``(j, k)`` pairs in flat row order."""
        return [
            (j, k)
            for j, ell in enumerate(self.config.multiplicities)
            for k in range(ell)
        ]

    def flat_index(self, j: int, k: int) -> int:
        """0-based flat row of ``u_{j,k}`` (the 1-based index minus one)."""
        return self.config.offsets()[j] + k


def build_matrix(config: NodeConfiguration) -> ConfluentMatrix:
    m = _kernels.confluent_matrix(config.node_array, config.multiplicity_array, FACTORIALS)
    m.setflags(write=False)
    return ConfluentMatrix(m, config)


def h_derivatives(config: NodeConfiguration, j: int, t_max: int) -> HDerivatives:
    """Derivatives ``h_j^(t)(x_j)`` for ``t = 0..t_max`` via the Leibniz recursion."""
    if not 0 <= j < config.n:
        raise IndexError(f"node index {j} out of range for n={config.n}")
    if not 0 <= t_max < FACTORIALS.size:
        raise ValueError(f"t_max must lie in [0, {FACTORIALS.size - 1}]")
    vals = _kernels.h_derivatives(
        config.node_array, config.multiplicity_array, j, t_max, FACTORIALS
    )
    vals.setflags(write=False)
    return HDerivatives(j, vals)


def _node_rows(config: NodeConfiguration, j: int):
    N = config.N
    ell = config.multiplicities[j]
    xj = config.nodes[j]
    nodal = nodal_polynomial_excluding(config, j)
    h = h_derivatives(config, j, ell - 1).values
    taylor = h / FACTORIALS[:ell]
    powers = [shifted_power(xj, m) for m in range(ell)]
    out = []
    for k in range(ell):
        acc = np.zeros(ell, dtype=np.complex128)
        for t in range(ell - k):
            acc[: k + t + 1] += taylor[t] * powers[k + t].padded(k + t + 1)
        poly = multiply(Polynomial(acc / FACTORIALS[k]), nodal)
        out.append(((j, k), poly.padded(N), coeff_l1_norm(poly)))
    return out


def inverse_rows(config: NodeConfiguration, workers: int | None = None) -> InverseRows:
    """All rows of the inverse from the closed-form Hermite basis.

    ``workers > 1`` computes the per-node blocks on a thread pool; the result
    is identical to the serial one.
    """
    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            blocks = list(pool.map(lambda j: _node_rows(config, j), range(config.n)))
    else:
        blocks = [_node_rows(config, j) for j in range(config.n)]
    result = InverseRows(config)
    for block in blocks:
        for key, row, norm in block:
            row.setflags(write=False)
            result.rows[key] = row
            result.row_l1_norms[key] = norm
    return result


def assemble_inverse(rows: InverseRows) -> np.ndarray:
    keys = rows.keys()
    missing = [key for key in keys if key not in rows.rows]
    if missing:
        raise KeyError(f"missing inverse rows {missing}")
    return np.vstack([rows.rows[key] for key in keys])
