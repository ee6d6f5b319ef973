#!/usr/bin/env python3
"""Benchmark the compiled tape kernel against the pure-Python walker.

Times plain evaluation and full Jacobian sweeps of a medium-sized
expression over a batch of random positive points, once per backend,
and prints calls per second plus the speedup. Run from the repo root:

    python3 benchmarks/bench_backends.py [--points 20000] [--seed 7]
"""

import argparse
import time

import numpy as np

from confjac import parse
from confjac.engine import CompiledFunction

EXPR = ("exp(sin(x)*cos(y)) + (x^2*y + y^3/(1+x^2))*ln(1+x^2) "
        "+ sqrt(x^2+y^2+z^2)*tan(z/4), "
        "x*y*z/(1+exp(-x)) + cos(x*y)^2 - z^0.5")
VARS = ("x", "y", "z")


def _time(label, fn, points):
    start = time.perf_counter()
    acc = 0.0
    for p in points:
        acc += float(np.sum(fn(p)))
    elapsed = time.perf_counter() - start
    rate = len(points) / elapsed
    print(f"  {label:<22} {rate:>12,.0f} calls/s   "
          f"({1e6 * elapsed / len(points):8.2f} us/call)")
    return elapsed, acc


def bench(backend, points):
    engine = CompiledFunction(parse(EXPR, VARS), backend=backend)
    print(f"{engine.backend} backend:")
    t_eval, a1 = _time("evaluate", engine.values, points)
    t_jac, a2 = _time("jacobian (3 sweeps)", engine.jacobian, points)
    return t_eval, t_jac, (a1, a2)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    points = rng.uniform(0.5, 2.5, size=(args.points, len(VARS)))

    print(f"expression: {EXPR}")
    print(f"{args.points} random points in [0.5, 2.5]^{len(VARS)}\n")

    pure_eval, pure_jac, pure_acc = bench("pure", points)
    try:
        comp_eval, comp_jac, comp_acc = bench("compiled", points)
    except RuntimeError as exc:
        print(f"\ncompiled backend unavailable: {exc}")
        return
    assert pure_acc == comp_acc, "backends disagree"
    print(f"\nspeedup: evaluate x{pure_eval / comp_eval:.1f}, "
          f"jacobian x{pure_jac / comp_jac:.1f} "
          f"(outputs bit-identical)")


if __name__ == "__main__":
    main()
