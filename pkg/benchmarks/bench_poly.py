"""Benchmark: compiled term-map kernel vs the pure-Python fallback.

Times the raw kernels on synthetic Laurent polynomials and a realistic
workload (the rank-4 Murphy transition solve, which is gcd-heavy).  The
kernel is chosen at import time, so each measurement runs in a fresh
subprocess with CELLULAR_TOWERS_PURE set accordingly.

Usage: python benchmarks/bench_poly.py
"""

import json
import os
import subprocess
import sys

WORKER = r"""
import json, os, random, sys, time

def bench():
    from cellular_towers import _kernel
    rng = random.Random(0)

    def rand_terms(nvars, nterms, span, coefmax):
        t = {}
        for _ in range(nterms):
            exp = tuple(rng.randint(-span, span) for _ in range(nvars))
            t[exp] = rng.randint(1, coefmax)
        return t

    out = {"kernel": _kernel.KERNEL}

    pairs = [(rand_terms(2, 25, 6, 10 ** 6), rand_terms(2, 25, 6, 10 ** 6))
             for _ in range(60)]
    t0 = time.perf_counter()
    for _ in range(40):
        for a, b in pairs:
            _kernel.terms_mul(a, b)
    out["terms_mul_s"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    for _ in range(4000):
        for a, b in pairs:
            _kernel.terms_add(a, b)
    out["terms_add_s"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    from cellular_towers.hecke import murphy_transition_det
    murphy_transition_det(4)
    out["murphy_rank4_s"] = time.perf_counter() - t0

    print(json.dumps(out))

bench()
"""


def run(pure):
    env = dict(os.environ)
    env["CELLULAR_TOWERS_PURE"] = "1" if pure else "0"
    proc = subprocess.run(
        [sys.executable, "-c", WORKER], env=env, capture_output=True, text=True
    )
    if proc.returncode != 0:
        raise RuntimeError(proc.stderr)
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main():
    rows = [run(pure=False), run(pure=True)]
    fields = ["terms_mul_s", "terms_add_s", "murphy_rank4_s"]
    print(f"{'kernel':<10}" + "".join(f"{f:>18}" for f in fields))
    for row in rows:
        print(f"{row['kernel']:<10}" + "".join(f"{row[f]:>18.3f}" for f in fields))
    if rows[0]["kernel"] == rows[1]["kernel"]:
        print("note: compiled kernel unavailable; both rows use the fallback")
    else:
        for f in fields:
            print(f"speedup {f}: {rows[1][f] / rows[0][f]:.2f}x")


if __name__ == "__main__":
    main()
