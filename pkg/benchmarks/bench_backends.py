"""Benchmark the JIT kernels against the pure-NumPy fallback.

Builds a unit-weight construction, then times ideal enumeration and
differential verification over it under both backends:

    python benchmarks/bench_backends.py --degree 2 --horizon 12

The first JIT call compiles (cached on disk); a warm-up run keeps that
out of the timings.
"""

from __future__ import annotations

import argparse
import statistics
import time

from wdlat import (
    DegreeFunction,
    WeightPolicy,
    construct,
    enumerate_ideals,
    rank_profile,
    verify_differential,
)
from wdlat.kernels import set_backend


def time_call(fn, repeats):
    samples = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - start)
    return min(samples), statistics.median(samples)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--degree", type=int, default=2)
    parser.add_argument("--horizon", type=int, default=12)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    degree = DegreeFunction.constant(args.degree)
    set_backend("numpy")
    poset = construct(degree, WeightPolicy.unit(), args.horizon).poset
    n_ideals = sum(rank_profile(poset, args.horizon).counts)
    print(
        f"degree {args.degree}, horizon {args.horizon}: "
        f"{len(poset)} points, {n_ideals} ideals"
    )

    tasks = {
        "enumerate": lambda: enumerate_ideals(poset, args.horizon),
        "verify": lambda: verify_differential(poset, degree, args.horizon),
    }

    results: dict[tuple[str, str], tuple[float, float]] = {}
    for backend in ("numpy", "numba"):
        set_backend(backend)
        for name, fn in tasks.items():
            fn()  # warm-up: JIT compile / cache touch
            results[(backend, name)] = time_call(fn, args.repeats)

    print(f"{'task':<12}{'numpy best':>12}{'numba best':>12}{'speedup':>9}")
    for name in tasks:
        np_best = results[("numpy", name)][0]
        nb_best = results[("numba", name)][0]
        print(
            f"{name:<12}{np_best * 1e3:>10.2f}ms{nb_best * 1e3:>10.2f}ms"
            f"{np_best / nb_best:>8.1f}x"
        )
    set_backend(None)


if __name__ == "__main__":
    main()
