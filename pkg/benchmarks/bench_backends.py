"""Time the compiled and pure-Python simulation kernels on identical workloads.

    python3 benchmarks/bench_backends.py [--runs N] [--repeat R]

Both backends consume the same random streams, so each workload's output
is checked for equality before its timings are reported.
"""

from __future__ import annotations

import argparse
import statistics
import time

from rumortree import ModelParams
from rumortree.simulate import derive_seed, run
from rumortree.simulate.core import _compiled

WORKLOADS = [
    # (label, d, k, engine, depth_limit)
    ("genealogy d=2 k=1 to extinction", 2, 1, "genealogy", None),
    ("genealogy d=3 k=1 depth 12", 3, 1, "genealogy", 12),
    ("jumpchain d=2 k=1 to extinction", 2, 1, "jumpchain", None),
    ("jumpchain d=3 k=2 depth 8", 3, 2, "jumpchain", 8),
]


def batch(backend: str, d: int, k: int, engine: str, depth, runs: int):
    p = ModelParams(d, k)
    return [run(p, engine, depth, derive_seed(1, i), backend=backend) for i in range(runs)]


def timed(fn, repeat: int) -> float:
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--runs", type=int, default=2000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if _compiled is None:
        raise SystemExit("compiled kernels are not built; reinstall with Cython available")

    print(f"{'workload':36s} {'python s':>10s} {'compiled s':>11s} {'speedup':>8s}")
    for label, d, k, engine, depth in WORKLOADS:
        same = batch("python", d, k, engine, depth, 200) == batch("compiled", d, k, engine, depth, 200)
        if not same:
            raise SystemExit(f"backends disagree on {label}")
        py = timed(lambda: batch("python", d, k, engine, depth, args.runs), args.repeat)
        c = timed(lambda: batch("compiled", d, k, engine, depth, args.runs), args.repeat)
        print(f"{label:36s} {py:10.3f} {c:11.3f} {py / c:7.1f}x")


if __name__ == "__main__":
    main()
