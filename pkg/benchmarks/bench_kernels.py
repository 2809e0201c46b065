#!/usr/bin/env python3
"""Benchmark the numba kernels against their pure-numpy fallbacks.

Runs each hot kernel on the same random batch through both
implementations and prints best-of-N timings with the speedup. Run with
DILATON_STEERING_NO_NUMBA unset so both paths are available.

    python benchmarks/bench_kernels.py --batch 100000 --repeat 5
"""

import argparse
import time

import numpy as np

from dilaton_steering import kernels, sampling


def best_time(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--batch", type=int, default=100_000, help="states per kernel call")
    parser.add_argument("--repeat", type=int, default=5, help="timed repetitions (best kept)")
    parser.add_argument("--seed", type=int, default=20240901)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    d11, d22, d33, d44, c14, c23 = sampling.random_xstate_params(rng, args.batch)
    params = (d11, d22, d33, d44, np.abs(c14), np.abs(c23))
    matrices = sampling.xstate_matrices(d11, d22, d33, d44, c14, c23)

    cases = [
        ("xstate_measures", kernels.xstate_measures_numpy, kernels.xstate_measures_numba, params),
        (
            "spinflip_concurrence",
            kernels.spinflip_concurrence_numpy,
            kernels.spinflip_concurrence_numba,
            (matrices,),
        ),
        ("chsh_max", kernels.chsh_max_numpy, kernels.chsh_max_numba, (matrices,)),
    ]

    print(f"batch = {args.batch}, repeat = {args.repeat}, numba available = {kernels.USING_NUMBA}")
    print(f"{'kernel':22s} {'numpy [ms]':>12s} {'numba [ms]':>12s} {'speedup':>9s}")
    for name, numpy_fn, numba_fn, call_args in cases:
        t_numpy = best_time(numpy_fn, call_args, args.repeat)
        if numba_fn is None:
            print(f"{name:22s} {1e3 * t_numpy:12.2f} {'n/a':>12s} {'n/a':>9s}")
            continue
        numba_fn(*call_args)  # compile outside the timer
        t_numba = best_time(numba_fn, call_args, args.repeat)
        print(
            f"{name:22s} {1e3 * t_numpy:12.2f} {1e3 * t_numba:12.2f} "
            f"{t_numpy / t_numba:8.1f}x"
        )


if __name__ == "__main__":
    main()
