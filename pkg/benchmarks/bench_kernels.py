"""Compiled versus pure-Python kernel backend.

Usage::

    python benchmarks/bench_kernels.py [--repeat 5]

Times each inner kernel on a fixed workload under both backends, checks that
they agree, then times the full closed-form/quadrature self-check grid.
"""

import argparse
import math
import os
import subprocess
import sys
import timeit

from eigenclose import _backend

WORKLOADS = {
    "lanczos_gamma": lambda k: [k.lanczos_gamma(0.1 + 0.05 * i) for i in range(400)],
    "lanczos_lgamma": lambda k: [k.lanczos_lgamma(0.5 + 0.7 * i) for i in range(400)],
    "hyp2f1_series": lambda k: [k.hyp2f1_series(-0.75, 1.25, 0.5 + 0.01 * i, 0.2 + 0.001 * i, 5000)[0]
                                for i in range(200)],
    "power_rational_integral": lambda k: [k.power_rational_integral(2.0, 1.0 + 0.1 * i, math.cos(1.0 + 0.01 * i),
                                                                    1.0, 1.5, 1e-10, 200)[0]
                                          for i in range(40)],
    "power_exp_integral": lambda k: [k.power_exp_integral(0.5 + 0.05 * i, 1.0 + 0.1 * i, 1e-10, 200)[0]
                                     for i in range(40)],
}


def _best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def bench_kernels(repeat):
    py = _backend.load("python")
    c = _backend.load("c") if _backend.compiled_available() else None
    print(f"{'kernel':<26}{'python [ms]':>13}{'compiled [ms]':>15}{'speedup':>10}{'max rel diff':>14}")
    for name, work in WORKLOADS.items():
        tp = _best(lambda: work(py), repeat)
        if c is None:
            print(f"{name:<26}{tp * 1e3:>13.2f}{'-':>15}{'-':>10}{'-':>14}")
            continue
        tc = _best(lambda: work(c), repeat)
        a, b = work(py), work(c)
        diff = max(abs(x - y) / max(abs(x), 1e-300) for x, y in zip(a, b))
        print(f"{name:<26}{tp * 1e3:>13.2f}{tc * 1e3:>15.2f}{tp / tc:>10.1f}{diff:>14.1e}")


def bench_grid():
    # backend choice happens at import, so each run needs a fresh interpreter
    code = ("import time; from eigenclose import selfcheck, BACKEND; t = time.perf_counter(); "
            "n = len(selfcheck.kernel_grid()); print(BACKEND, n, time.perf_counter() - t)")
    for pure in ("1", "0"):
        env = dict(os.environ, EIGENCLOSE_PURE_PYTHON=pure)
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        backend, n, secs = out.stdout.split()
        print(f"kernel grid ({n} points) on {backend:<7}{float(secs):8.3f} s")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    print(f"auto-selected backend: {_backend.BACKEND}")
    bench_kernels(args.repeat)
    bench_grid()


if __name__ == "__main__":
    main()
