"""Time the compiled kernels against the pure-Python ones.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--seed 0]

Each workload runs through both backends on identical inputs and the results
are compared before any timing is reported.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from simplex_metrics import _pykernels

try:
    from simplex_metrics import _ckernels
except ImportError:
    _ckernels = None


def _matrix(rng, n, bound):
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]


def _poly(rng, terms, nvars, max_exp):
    out = {}
    for _ in range(terms):
        m = 0
        for v in range(nvars):
            m += rng.randint(0, max_exp) << (16 * v)
        out[m] = rng.randint(-9, 9) or 1
    return out


def _graded(p):
    return [(m, c, sum((m >> (16 * v)) & 0xFFFF for v in range(8))) for m, c in p.items()]


def workloads(seed):
    rng = random.Random(seed)
    mats = [_matrix(rng, 12, 10 ** 6) for _ in range(20)]
    a, b = _poly(rng, 300, 6, 3), _poly(rng, 300, 6, 3)
    ga, gb = _graded(a), _graded(b)
    return {
        "bareiss 12x12 (20 matrices)": lambda k: [k.bareiss_det(m) for m in mats],
        "poly_mul 300x300 terms": lambda k: k.poly_mul(a, b),
        "poly_mul_graded bound 8": lambda k: k.poly_mul_graded(ga, gb, 8),
    }


def end_to_end(pure):
    code = ("import time; from simplex_metrics.sdg_verify import run_all; "
            "t = time.perf_counter(); run_all(3, 3); print(time.perf_counter() - t)")
    env = {"SIMPLEX_METRICS_PURE": "1"} if pure else {}
    out = subprocess.run([sys.executable, "-c", code], env={**os.environ, **env},
                         capture_output=True, text=True, check=True)
    return float(out.stdout)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--no-suite", action="store_true", help="skip the end-to-end verify timing")
    args = ap.parse_args(argv)

    if _ckernels is None:
        print("compiled extension not built; only the Python kernels are available")
    print(f"{'workload':32s} {'python (ms)':>12s} {'cython (ms)':>12s} {'speedup':>8s}")
    for name, fn in workloads(args.seed).items():
        if _ckernels is not None and fn(_pykernels) != fn(_ckernels):
            raise SystemExit(f"backends disagree on {name}")
        py = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=args.repeat)) * 1e3
        if _ckernels is None:
            print(f"{name:32s} {py:12.2f} {'-':>12s} {'-':>8s}")
            continue
        cy = min(timeit.repeat(lambda: fn(_ckernels), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:32s} {py:12.2f} {cy:12.2f} {py / cy:7.2f}x")

    if not args.no_suite:
        py = end_to_end(pure=True)
        line = f"{'verify suite (n, k <= 3)':32s} {py * 1e3:12.1f}"
        if _ckernels is not None:
            cy = end_to_end(pure=False)
            line += f" {cy * 1e3:12.1f} {py / cy:7.2f}x"
        print(line)


if __name__ == "__main__":
    main()
