"""Seeded verification sweeps over random node configurations."""
from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bounds import verify_bounds
from .confluent import assemble_inverse, build_matrix, inverse_rows
from .errors import SamplingExhausted
from .nodes import random_configuration, separation
from .oracle import max_entry
from .serialize import dumps, fmt_real

DEFAULT_TOLERANCE = 1e-8


@dataclass(frozen=True)
class SweepSpec:
    n_range: tuple[int, int]
    multiplicity_range: tuple[int, int]
    delta_min: float
    trials: int
    seed: int
    output_format: str = "json"
    max_total: int | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials: must be >= 1")
        if not self.delta_min > 0:
            raise ValueError("delta_min: must be positive")
        lo, hi = self.n_range
        if lo < 2 or hi < lo:
            raise ValueError(f"n_range: need 2 <= lo <= hi, got {list(self.n_range)}")
        lo, hi = self.multiplicity_range
        if lo < 1 or hi < lo:
            raise ValueError(
                f"multiplicity_range: need 1 <= lo <= hi, got {list(self.multiplicity_range)}"
            )
        if self.output_format not in ("json", "csv"):
            raise ValueError(f"output_format: expected json or csv, got {self.output_format!r}")

    @classmethod
    def from_json(cls, data: dict) -> SweepSpec:
        known = {"n_range", "multiplicity_range", "delta_min", "trials", "seed",
                 "output_format", "max_total"}
        extra = set(data) - known
        if extra:
            raise ValueError(f"{sorted(extra)[0]}: unknown field")
        for name in ("n_range", "multiplicity_range", "delta_min", "trials", "seed"):
            if name not in data:
                raise ValueError(f"{name}: missing field")
        try:
            return cls(
                n_range=_int_pair(data["n_range"], "n_range"),
                multiplicity_range=_int_pair(data["multiplicity_range"], "multiplicity_range"),
                delta_min=float(data["delta_min"]),
                trials=_int(data["trials"], "trials"),
                seed=_int(data["seed"], "seed"),
                output_format=data.get("output_format", "json"),
                max_total=None if data.get("max_total") is None
                else _int(data["max_total"], "max_total"),
            )
        except (TypeError, ValueError) as exc:
            raise ValueError(str(exc)) from None


def _int(v, name):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ValueError(f"{name}: expected an integer, got {v!r}")
    return v


def _int_pair(v, name):
    if not isinstance(v, (list, tuple)) or len(v) != 2:
        raise ValueError(f"{name}: expected [lo, hi]")
    return (_int(v[0], name), _int(v[1], name))


@dataclass(frozen=True)
class RowRecord:
    node: int  # 1-based
    k: int
    empirical_norm: float
    bound: float
    ratio: float


@dataclass(frozen=True)
class SweepRecord:
    trial: int
    status: str  # "pass", "fail" or "skipped"
    n: int
    N: int | None = None
    delta: float | None = None
    residual_VU: float | None = None
    rows: tuple[RowRecord, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def trial_plan(spec: SweepSpec) -> list[tuple[int, int]]:
    """``(n, trial_seed)`` for every trial, drawn from the master seed."""
    rng = np.random.default_rng(spec.seed)
    lo, hi = spec.n_range
    return [
        (int(rng.integers(lo, hi + 1)), int(rng.integers(0, 2**63 - 1)))
        for _ in range(spec.trials)
    ]


def run_trial(spec: SweepSpec, trial: int, n: int, seed: int,
              tolerance: float = DEFAULT_TOLERANCE) -> SweepRecord:
    try:
        config = random_configuration(
            n, spec.multiplicity_range, spec.delta_min, seed, max_total=spec.max_total
        )
    except SamplingExhausted:
        return SweepRecord(trial, "skipped", n)
    rows = inverse_rows(config)
    V = build_matrix(config).entries
    residual = max_entry(V @ assemble_inverse(rows) - np.eye(config.N))
    report = verify_bounds(config, rows)
    ok = report.all_satisfied and residual <= tolerance
    return SweepRecord(
        trial,
        "pass" if ok else "fail",
        n,
        config.N,
        separation(config).delta,
        residual,
        tuple(
            RowRecord(r.j + 1, r.k, r.empirical_norm, r.bound, r.ratio)
            for r in report.records
        ),
    )


def run_sweep(spec: SweepSpec, tolerance: float = DEFAULT_TOLERANCE,
              jobs: int = 1) -> list[SweepRecord]:
    """Records in trial order, independent of ``jobs``."""
    plan = trial_plan(spec)
    args = [(spec, i, n, s, tolerance) for i, (n, s) in enumerate(plan)]
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            return list(pool.map(lambda a: run_trial(*a), args))
    return [run_trial(*a) for a in args]


def summarize(records) -> dict:
    counts = {"trials": len(records), "passed": 0, "failed": 0, "skipped": 0}
    for r in records:
        counts[{"pass": "passed", "fail": "failed", "skipped": "skipped"}[r.status]] += 1
    return counts


CSV_FIELDS = ["trial", "status", "n", "N", "delta", "residual_VU",
              "node", "k", "empirical_norm", "bound", "ratio"]


def _opt(x):
    if x is None:
        return ""
    return fmt_real(x) if isinstance(x, float) else str(x)


def record_csv_rows(rec: SweepRecord) -> list[list[str]]:
    """One CSV line per inverse row; a skipped trial gets one line with empty row fields."""
    head = [str(rec.trial), rec.status, str(rec.n), _opt(rec.N), _opt(rec.delta),
            _opt(rec.residual_VU)]
    if not rec.rows:
        return [head + ["", "", "", "", ""]]
    return [
        head + [str(r.node), str(r.k), fmt_real(r.empirical_norm), fmt_real(r.bound),
                fmt_real(r.ratio)]
        for r in rec.rows
    ]


def format_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for rec in records:
        w.writerows(record_csv_rows(rec))
    s = summarize(records)
    buf.write(
        f"# summary: trials={s['trials']} passed={s['passed']} "
        f"failed={s['failed']} skipped={s['skipped']}\n"
    )
    return buf.getvalue()


def record_json(rec: SweepRecord) -> dict:
    return {
        "trial": rec.trial,
        "status": rec.status,
        "n": rec.n,
        "N": rec.N,
        "delta": rec.delta,
        "residual_VU": rec.residual_VU,
        "pass": rec.passed,
        "rows": [
            {"node": r.node, "k": r.k, "empirical_norm": r.empirical_norm,
             "bound": r.bound, "ratio": r.ratio}
            for r in rec.rows
        ],
    }


def format_json(records) -> str:
    lines = [dumps(record_json(r)) for r in records]
    lines.append(dumps({"summary": summarize(records)}))
    return "\n".join(lines) + "\n"


def read_csv(text: str) -> list[SweepRecord]:
    """Parse :func:`format_csv` output back into records."""
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    reader = csv.DictReader(lines)
    grouped: dict[int, list[dict]] = {}
    for row in reader:
        grouped.setdefault(int(row["trial"]), []).append(row)

    def opt(s, conv):
        return None if s == "" else conv(s)

    out = []
    for trial, group in grouped.items():
        first = group[0]
        rows = tuple(
            RowRecord(int(g["node"]), int(g["k"]), float(g["empirical_norm"]),
                      float(g["bound"]), float(g["ratio"]))
            for g in group if g["node"] != ""
        )
        out.append(SweepRecord(
            trial, first["status"], int(first["n"]), opt(first["N"], int),
            opt(first["delta"], float), opt(first["residual_VU"], float), rows,
        ))
    return out
