"""Time the numba kernels against their numpy twins.

    python benchmarks/bench_kernels.py [--repeat 200] [--sweep]

``--sweep`` also times a 200-trial verification sweep end to end in a fresh
interpreter per backend (selected through CVINV_DISABLE_NUMBA).
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from cvinv import _kernels
from cvinv.nodes import random_configuration


def timeit(fn, args, repeat):
    fn(*args)  # compile / warm caches
    start = time.perf_counter()
    for _ in range(repeat):
        fn(*args)
    return (time.perf_counter() - start) / repeat


def kernel_cases(N):
    config = random_configuration(4, (1, 4), 0.4, 0, max_total=N)
    x, m, f = config.node_array, config.multiplicity_array, _kernels.FACTORIALS
    V = _kernels.NUMPY_KERNELS["confluent_matrix"](x, m, f)
    rng = np.random.default_rng(0)
    a = rng.normal(size=N) + 1j * rng.normal(size=N)
    return config.N, {
        "convolve": (a, a[::-1].copy()),
        "confluent_matrix": (x, m, f),
        "h_derivatives": (x, m, 0, 8, f),
        "lu_inverse": (V,),
        "taylor_shift": (a, 0.3 - 0.2j),
        "reciprocal_series": (a, 16),
    }


SWEEP_SCRIPT = """
import time
from cvinv.sweep import SweepSpec, run_sweep
from cvinv import backend_name
run_sweep(SweepSpec((2, 3), (1, 2), 0.5, 2, 0))
t = time.perf_counter()
run_sweep(SweepSpec((2, 5), (1, 4), 0.5, 200, 42, max_total=12))
print(backend_name(), time.perf_counter() - t)
"""


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=200)
    ap.add_argument("--size", type=int, default=12, help="target matrix order")
    ap.add_argument("--sweep", action="store_true")
    args = ap.parse_args()

    N, cases = kernel_cases(args.size)
    print(f"kernel timings, N = {N}, {args.repeat} calls each (microseconds per call)")
    print(f"{'kernel':<20}{'numba':>12}{'numpy':>12}{'speedup':>10}")
    for name, call_args in cases.items():
        t_nb = timeit(_kernels.NUMBA_KERNELS[name], call_args, args.repeat)
        t_np = timeit(_kernels.NUMPY_KERNELS[name], call_args, args.repeat)
        print(f"{name:<20}{t_nb * 1e6:>12.2f}{t_np * 1e6:>12.2f}{t_np / t_nb:>10.1f}")

    if args.sweep:
        print("\nend-to-end sweep (200 trials)")
        for flag in ("0", "1"):
            env = {**os.environ, "CVINV_DISABLE_NUMBA": flag}
            out = subprocess.run([sys.executable, "-c", SWEEP_SCRIPT], env=env,
                                 capture_output=True, text=True, check=True)
            backend, secs = out.stdout.split()
            print(f"{backend:<20}{float(secs):>12.3f} s")


if __name__ == "__main__":
    main()
