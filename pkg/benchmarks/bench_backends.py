"""Compare the compiled polynomial kernels against the pure-Python ones.

Runs the same workloads twice by re-executing itself with ALMOSTALG_PURE=1
in a subprocess, then prints both timings side by side.

    python3 benchmarks/bench_backends.py
"""
import json
import os
import random
import subprocess
import sys
import time


def bench_poly_mul(rng, n=2000, deg=64):
    from almostalg.polys import poly_mul
    polys = [[rng.randrange(2) for _ in range(deg)] for _ in range(64)]
    t0 = time.perf_counter()
    for i in range(n):
        poly_mul(polys[i % 64], polys[(i * 7) % 64], 2)
    return time.perf_counter() - t0


def bench_snf(rng, n=60, size=5, deg=6):
    from almostalg.linalg import PolyMatrix, snf
    t0 = time.perf_counter()
    for _ in range(n):
        ent = [[[rng.randrange(3) for _ in range(rng.randint(0, deg))]
                for _ in range(size)] for _ in range(size)]
        snf(PolyMatrix(size, size, 3, ent))
    return time.perf_counter() - t0


def bench_suite(_rng):
    from almostalg.suites import SuiteOptions, run_suite
    t0 = time.perf_counter()
    run_suite("quillen", SuiteOptions(seed=0))
    return time.perf_counter() - t0


BENCHES = [("poly_mul 64x64 deg-64", bench_poly_mul),
           ("snf 5x5 F_3[s]", bench_snf),
           ("quillen suite", bench_suite)]


def run_once():
    from almostalg.polys import BACKEND
    rng = random.Random(0)
    out = {"backend": BACKEND}
    for name, fn in BENCHES:
        out[name] = fn(rng)
    return out


def main():
    if os.environ.get("_BENCH_CHILD"):
        print(json.dumps(run_once()))
        return
    here = run_once()
    env = dict(os.environ, ALMOSTALG_PURE="1", _BENCH_CHILD="1")
    child = subprocess.run([sys.executable, __file__], env=env,
                           capture_output=True, text=True, check=True)
    pure = json.loads(child.stdout)
    print(f"{'benchmark':<28}{here['backend']:>12}{pure['backend']:>12}"
          f"{'speedup':>10}")
    for name, _ in BENCHES:
        a, b = here[name], pure[name]
        print(f"{name:<28}{a:>11.3f}s{b:>11.3f}s{b / a:>9.1f}x")


if __name__ == "__main__":
    main()
