"""Node configurations: distinct complex nodes with integer multiplicities."""
from __future__ import annotations

import itertools
import operator
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._kernels import MAX_ORDER
from .errors import (
    DuplicateNode,
    EmptyConfiguration,
    LengthMismatch,
    NonpositiveMultiplicity,
    OrderTooLarge,
    SamplingExhausted,
    SingleNode,
)

DEFAULT_MAX_ATTEMPTS = 100_000
_BATCH = 256


@dataclass(frozen=True)
class NodeConfiguration:
    """Pairwise-distinct complex nodes ``x_j`` with multiplicities ``l_j``.

    Node indices are 0-based throughout the Python API.
    """

    nodes: tuple[complex, ...]
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        _check(self.nodes, self.multiplicities)

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def N(self) -> int:
        return sum(self.multiplicities)

    @property
    def node_array(self) -> np.ndarray:
        return np.array(self.nodes, dtype=np.complex128)

    @property
    def multiplicity_array(self) -> np.ndarray:
        return np.array(self.multiplicities, dtype=np.int64)

    def offsets(self) -> list[int]:
        """Flat index of the first column (or row) belonging to each node."""
        return [0, *itertools.accumulate(self.multiplicities)][:-1]

    def to_json(self) -> dict:
        return {
            "nodes": [[z.real, z.imag] for z in self.nodes],
            "multiplicities": list(self.multiplicities),
        }


@dataclass(frozen=True)
class SeparationInfo:
    delta: float
    in_unit_disk: bool


def _check(nodes, mults):
    if len(nodes) == 0 or len(mults) == 0:
        raise EmptyConfiguration("nodes and multiplicities must be nonempty")
    if len(nodes) != len(mults):
        raise LengthMismatch(
            f"{len(nodes)} nodes but {len(mults)} multiplicities"
        )
    for pos, ell in enumerate(mults):
        if ell < 1:
            raise NonpositiveMultiplicity(
                f"multiplicities[{pos}] = {ell}; must be >= 1"
            )
    if sum(mults) > MAX_ORDER:
        raise OrderTooLarge(f"N = {sum(mults)} exceeds {MAX_ORDER}")
    seen = {}
    for pos, z in enumerate(nodes):
        if z in seen:
            raise DuplicateNode(f"nodes[{pos}] duplicates nodes[{seen[z]}] ({z})")
        seen[z] = pos


def validate(nodes: Sequence, multiplicities: Sequence) -> NodeConfiguration:
    """Build a :class:`NodeConfiguration` from loosely typed input.

    Nodes may be numbers or ``[re, im]`` pairs. Multiplicities must be
    integral.
    """
    zs = tuple(_as_complex(z) for z in nodes)
    mults = []
    for pos, ell in enumerate(multiplicities):
        try:
            mults.append(operator.index(ell))
        except TypeError:
            raise NonpositiveMultiplicity(
                f"multiplicities[{pos}] = {ell!r} is not an integer"
            ) from None
    return NodeConfiguration(zs, tuple(mults))


def _as_complex(z) -> complex:
    if isinstance(z, (list, tuple)):
        if len(z) != 2:
            raise EmptyConfiguration(f"node {z!r} is not a [re, im] pair")
        return complex(float(z[0]), float(z[1]))
    return complex(z)


def separation(config: NodeConfiguration) -> SeparationInfo:
    if config.n < 2:
        raise SingleNode("separation is undefined for a single node")
    delta = min(abs(a - b) for a, b in itertools.combinations(config.nodes, 2))
    in_disk = all(abs(x) <= 1.0 for x in config.nodes)
    return SeparationInfo(float(delta), in_disk)


def random_configuration(
    n: int,
    multiplicity_range: tuple[int, int],
    delta_min: float,
    seed,
    *,
    max_total: int | None = None,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> NodeConfiguration:
    """Sample ``n`` nodes uniformly in the closed unit disk, ``delta_min`` apart.

    Multiplicities are uniform on the inclusive ``multiplicity_range``; when
    ``max_total`` is given they are redrawn until their sum fits. Redraws and
    rejected node candidates both count against ``max_attempts``.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if not delta_min > 0:
        raise ValueError("delta_min must be positive")
    lo, hi = multiplicity_range
    if lo < 1 or hi < lo:
        raise ValueError(f"bad multiplicity range {multiplicity_range}")
    if max_total is not None and n * lo > max_total:
        raise SamplingExhausted(f"{n} nodes of multiplicity >= {lo} exceed {max_total}")

    rng = np.random.default_rng(seed)
    attempts = 0
    while True:
        mults = rng.integers(lo, hi + 1, size=n)
        attempts += 1
        if max_total is None or mults.sum() <= max_total:
            break
        if attempts >= max_attempts:
            raise SamplingExhausted("could not draw multiplicities within max_total")

    accepted: list[complex] = []
    while len(accepted) < n:
        if attempts >= max_attempts:
            raise SamplingExhausted(
                f"placed {len(accepted)} of {n} nodes after {attempts} attempts "
                f"(delta_min={delta_min})"
            )
        batch = min(_BATCH, max_attempts - attempts)
        r = np.sqrt(rng.random(batch))
        theta = rng.random(batch) * (2 * np.pi)
        cand = r * np.exp(1j * theta)
        for z in cand.tolist():
            attempts += 1
            if abs(z) > 1.0:
                continue
            # same distance as separation(), so the postcondition holds exactly
            if all(abs(z - a) >= delta_min for a in accepted):
                accepted.append(z)
                if len(accepted) == n:
                    break
    return NodeConfiguration(tuple(accepted), tuple(int(m) for m in mults))
