"""Norm bounds for inverse rows and the derivative estimates behind them."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .confluent import InverseRows, h_derivatives
from .errors import HypothesisViolated
from .nodes import NodeConfiguration, separation

ROUNDOFF_SLACK = 1e-12
LOG_DOMAIN_THRESHOLD = 700.0
_LOG_MAX = math.log(1.7976931348623157e308)


def _exp_saturating(log_value: float) -> float:
    return math.inf if log_value > _LOG_MAX else math.exp(log_value)


def main_bound(N: int, delta: float, ell_j: int, k: int) -> float:
    """``(2/delta)**N * (2/k!) * (1/2 + N/delta)**(ell_j - 1 - k)``.

    Switches to log-domain evaluation when ``(2/delta)**N`` would overflow and
    returns ``inf`` if the bound itself is not representable.
    """
    if not 0 <= k < ell_j:
        raise ValueError(f"k={k} must satisfy 0 <= k < ell_j={ell_j}")
    if not delta > 0:
        raise ValueError("delta must be positive")
    expo = ell_j - 1 - k
    log_ratio = math.log(2.0 / delta)
    if N * abs(log_ratio) > LOG_DOMAIN_THRESHOLD:
        log_b = (
            N * log_ratio
            + math.log(2.0)
            - math.lgamma(k + 1)
            + expo * math.log(0.5 + N / delta)
        )
        return _exp_saturating(log_b)
    try:
        return (2.0 / delta) ** N * (2.0 / math.factorial(k)) * (0.5 + N / delta) ** expo
    except OverflowError:
        return math.inf


def rising_factorial(N: int, t: int) -> int:
    """``N (N+1) ... (N+t-1)`` exactly; 1 when ``t == 0``."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    return math.prod(range(N, N + t))


def rising_factorial_recursive(N: int, t: int) -> int:
    """Same quantity from ``P_t = N * sum_{k<t} (t-1)!/k! * P_k``, ``P_0 = 1``."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    P = [1]
    for s in range(1, t + 1):
        P.append(N * sum(math.factorial(s - 1) // math.factorial(k) * P[k] for k in range(s)))
    return P[t]


def lemma_bound(N: int, delta: float, t: int) -> float:
    """``N (N+1) ... (N+t-1) * delta**(-N-t)``."""
    if not delta > 0:
        raise ValueError("delta must be positive")
    log_b = math.lgamma(N + t) - math.lgamma(N) - (N + t) * math.log(delta)
    if abs(log_b) > LOG_DOMAIN_THRESHOLD:
        return _exp_saturating(log_b)
    return float(rising_factorial(N, t)) * delta ** (-N - t)


@dataclass(frozen=True)
class CoefficientSumBound:
    value: float
    cap: float


def coefficient_sum_bound(config: NodeConfiguration, j: int, k: int, t: int) -> CoefficientSumBound:
    """``(1+|x_j|)**(k+t) * prod_{i!=j} (1+|x_i|)**l_i`` and its unit-disk cap.

    The cap ``2**(N - (l_j - k - t))`` only dominates ``value`` when every
    node lies in the closed unit disk.
    """
    if k + t < 0:
        raise ValueError("k + t must be nonnegative")
    value = (1 + abs(config.nodes[j])) ** (k + t)
    for i, (x, ell) in enumerate(zip(config.nodes, config.multiplicities)):
        if i != j:
            value *= (1 + abs(x)) ** ell
    cap = 2.0 ** (config.N - (config.multiplicities[j] - k - t))
    return CoefficientSumBound(float(value), cap)


@dataclass(frozen=True)
class BoundRecord:
    j: int
    k: int
    empirical_norm: float
    bound: float
    ratio: float
    satisfied: bool

    @property
    def saturated(self) -> bool:
        return math.isinf(self.bound)


@dataclass(frozen=True)
class BoundReport:
    N: int
    delta: float
    multiplicities: tuple[int, ...]
    records: tuple[BoundRecord, ...]

    @property
    def all_satisfied(self) -> bool:
        return all(r.satisfied for r in self.records)

    def violations(self) -> list[BoundRecord]:
        return [r for r in self.records if not r.satisfied]


def require_unit_disk(config: NodeConfiguration):
    outside = [pos for pos, x in enumerate(config.nodes) if abs(x) > 1.0]
    if outside:
        pos = outside[0]
        raise HypothesisViolated(
            f"|nodes[{pos}]| = {abs(config.nodes[pos]):.17g} > 1; the bound does not apply"
        )


def verify_bounds(config: NodeConfiguration, rows: InverseRows) -> BoundReport:
    require_unit_disk(config)
    delta = separation(config).delta
    N = config.N
    records = []
    for j, k in rows.keys():
        ell = config.multiplicities[j]
        emp = rows.row_l1_norms[(j, k)]
        b = main_bound(N, delta, ell, k)
        records.append(
            BoundRecord(j, k, emp, b, emp / b, emp <= b * (1 + ROUNDOFF_SLACK))
        )
    return BoundReport(N, delta, tuple(config.multiplicities), tuple(records))


@dataclass(frozen=True)
class LemmaRecord:
    j: int
    t: int
    magnitude: float
    bound: float

    @property
    def satisfied(self) -> bool:
        return self.magnitude <= self.bound * (1 + ROUNDOFF_SLACK)


def lemma_records(config: NodeConfiguration) -> list[LemmaRecord]:
    """``|h_j^(t)(x_j)|`` against the rising-factorial bound for ``t < l_j``."""
    delta = separation(config).delta
    N = config.N
    out = []
    for j, ell in enumerate(config.multiplicities):
        h = h_derivatives(config, j, ell - 1).values
        for t in range(ell):
            out.append(LemmaRecord(j, t, float(abs(h[t])), lemma_bound(N, delta, t)))
    return out
