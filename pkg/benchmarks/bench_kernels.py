"""Compiled versus numpy triple-scan kernels.

    python3 benchmarks/bench_kernels.py [--samples N] [--repeat R]

Each kernel runs on tables where no triple fails, so the whole scan is timed:
the full triple space of a 64-element ring brace, and a sampled scan of the
4096-element brace of the thm6 ring.
"""

import argparse
import time

import numpy as np

from ybe import kernels
from ybe.rings import builtin_thm6, to_finite_brace
from ybe.suite import truncated_free


def _tables(b):
    return {
        "assoc": (b.star,),
        "left_brace": (b.add, b.mul),
        "right_brace": (b.add, b.mul),
        "rump": (b.add, b.star),
        "laut": (b.add, b.left),
        "braid": (b.left, np.ascontiguousarray(b.right.T)),
    }


def _best(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=10**6)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if kernels.compiled is None:
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation`")

    small = to_finite_brace(truncated_free(2, 2))
    big = to_finite_brace(builtin_thm6())
    idx = np.random.default_rng(args.seed).integers(0, big.m, size=(args.samples, 3))
    cases = [(f"order {small.m}, all {small.m ** 3} triples", small, ()),
             (f"order {big.m}, {args.samples} sampled triples", big, (idx,))]

    print(f"{'kernel':<12} {'case':<38} {'cython s':>10} {'numpy s':>10} {'speedup':>8}")
    for label, b, extra in cases:
        for name, tabs in _tables(b).items():
            tc, wc = _best(getattr(kernels.compiled, name), tabs + extra, args.repeat)
            tp, wp = _best(getattr(kernels.python, name), tabs + extra, args.repeat)
            if wc != wp:
                raise SystemExit(f"{name}: backends disagree ({wc} vs {wp})")
            print(f"{name:<12} {label:<38} {tc:>10.4f} {tp:>10.4f} {tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()
