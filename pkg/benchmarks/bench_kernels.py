#!/usr/bin/env python3
"""Benchmark: compiled extension vs pure-Python kernel on the hot paths.

Micro-benchmarks run both kernel modules in-process; the end-to-end field
inversion comparison re-runs this script in a subprocess with RADRAT_PURE=1
so the import-time kernel selection is exercised exactly as users get it.

Usage: python benchmarks/bench_kernels.py [--skip-e2e]
"""

import argparse
import os
import subprocess
import sys
import time
from random import Random

import numpy as np


def _bench(fn, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def micro(kernels):
    from radrat.linsolve import _primes_for

    rng = Random(7)
    print(f"{'kernel prepare (mod-p inverse/LU)':<44}" +
          "".join(f"{name:>12}" for name, _ in kernels))
    for d in (48, 144, 288):
        p = _primes_for(d)[0]
        a = np.array([[rng.randrange(p) for _ in range(d)] for _ in range(d)],
                     dtype=np.int64)
        times = []
        for _, mod in kernels:
            times.append(_bench(lambda m=mod: m.prepare(a, p)))
        print(f"  d={d:<41}" + "".join(f"{t * 1000:>10.2f}ms" for t in times))

    print(f"{'dixon_digits (64 digit vectors)':<44}")
    for d in (48, 288):
        p = _primes_for(d)[0]
        a = np.array([[rng.randrange(p) for _ in range(d)] for _ in range(d)],
                     dtype=np.int64)
        rows, cols = np.nonzero(a)
        vals = a[rows, cols] % 1000  # keep the residue-update contract easy
        a_small = np.zeros_like(a)
        a_small[rows, cols] = vals
        b = np.array([rng.randrange(1000) for _ in range(d)], dtype=np.int64)
        times = []
        for _, mod in kernels:
            handle = mod.prepare(a_small % p, p)
            if handle is None:
                times.append(float("nan"))
                continue
            times.append(_bench(
                lambda m=mod, h=handle: m.dixon_digits(h, rows, cols, vals, b, p, 64)
            ))
        print(f"  d={d:<41}" + "".join(f"{t * 1000:>10.2f}ms" for t in times))


def e2e_inversions(n=40):
    """Invert n pseudo-random elements of the 288-dimensional field."""
    from radrat import field
    from radrat.numeric import Rat

    basis = field.make_basis([(2, 12), (3, 6), (5, 4)])
    rng = Random(42)
    t0 = time.perf_counter()
    for _ in range(n):
        terms = {}
        for _ in range(rng.randint(2, 4)):
            mono = (rng.randrange(12), rng.randrange(6), rng.randrange(4))
            num = rng.randint(-5, 5) or 1
            terms[mono] = Rat(num, rng.randint(1, 4))
        x = field.RadicalNumber(basis, terms)
        y = field.invert(x)
        prod = field.multiply(x, y)
        assert prod.is_rational() and prod.rational_value() == 1
    return time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--skip-e2e", action="store_true")
    ap.add_argument("--e2e-only", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()

    if args.e2e_only:
        from radrat import _kernel

        dt = e2e_inversions()
        print(f"{_kernel.IMPL}:{dt:.3f}")
        return

    kernels = []
    try:
        from radrat import _modlinalg

        kernels.append(("compiled", _modlinalg))
    except ImportError:
        print("note: compiled kernel not built; showing pure only")
    from radrat import _modlinalg_py

    kernels.append(("pure", _modlinalg_py))

    micro(kernels)

    if args.skip_e2e:
        return
    print("\nend-to-end: 40 exact inversions in the 288-dim radical field")
    for purity in ("", "1"):
        env = dict(os.environ)
        if purity:
            env["RADRAT_PURE"] = "1"
        else:
            env.pop("RADRAT_PURE", None)
        out = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--e2e-only"],
            env=env, capture_output=True, text=True, check=True,
        ).stdout.strip()
        name, _, secs = out.partition(":")
        print(f"  {name:<10} {float(secs) * 1000:>10.1f}ms total")


if __name__ == "__main__":
    main()
