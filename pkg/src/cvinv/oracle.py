"""Dense LU inversion used as ground truth for the closed-form inverse.

Nothing here touches the polynomial or h-derivative code.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .confluent import InverseRows, assemble_inverse, build_matrix
from .errors import NumericallySingular
from .nodes import NodeConfiguration


def lu_inverse(m) -> np.ndarray:
    """Inverse by LU with partial pivoting and one solve per unit vector."""
    a = np.array(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ValueError(f"expected a nonempty square matrix, got shape {a.shape}")
    inv, bad = _kernels.lu_inverse(a)
    if bad >= 0:
        raise NumericallySingular(
            f"pivot below {_kernels.PIVOT_FLOOR:g} in column {bad}", column=int(bad)
        )
    return inv


def max_entry(a) -> float:
    return float(np.max(np.abs(a))) if np.size(a) else 0.0


@dataclass(frozen=True)
class ComparisonReport:
    max_entry_abs_diff: float
    row_l1_diff: tuple[float, ...]
    residual_VU: float
    residual_UV: float


def compare(structured: InverseRows, config: NodeConfiguration) -> ComparisonReport:
    """Check the closed-form rows against ``lu_inverse`` of the built matrix.

    Residuals are measured for the closed-form inverse ``U``.
    """
    V = build_matrix(config).entries
    dense = lu_inverse(V)
    U = assemble_inverse(structured)
    diff = np.abs(U - dense)
    eye = np.eye(config.N)
    return ComparisonReport(
        max_entry_abs_diff=max_entry(diff),
        row_l1_diff=tuple(float(x) for x in diff.sum(axis=1)),
        residual_VU=max_entry(V @ U - eye),
        residual_UV=max_entry(U @ V - eye),
    )
