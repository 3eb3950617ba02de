#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Runs the deterministic grid kernel and the Monte Carlo kernel on a
realistic cell layout under both backends and prints a timing table.

    python benchmarks/bench_kernels.py [--grid 401] [--mc-points 2000]
                                       [--samples 20000] [--repeat 3]
"""

import argparse
import time

import numpy as np

from irssim import default_scenario, drop_for_scenario, generate_users, validate
from irssim.backend import HAVE_NUMBA
from irssim import kernels


def _layout(grid_points):
    scenario = validate(default_scenario("irs", 28))
    drop = drop_for_scenario(scenario, grid=grid_points)
    users = generate_users(drop)
    srv = scenario.serving_position
    mac = scenario.config.macro_bs.position
    d_srv = np.sqrt((users[:, 0] - srv.x) ** 2 + (users[:, 1] - srv.y) ** 2
                    + (users[:, 2] - srv.z) ** 2)
    d_mac = np.sqrt((users[:, 0] - mac.x) ** 2 + (users[:, 1] - mac.y) ** 2
                    + (users[:, 2] - mac.z) ** 2)
    # representative constants for the 28 GHz default panel layout
    return d_srv, d_mac, 2.8272e-4, 2.0, 5.7319e-3, 4.5, 0.2, 2.0 / 4.5


def _time(fn, repeat):
    fn()                        # warmup (includes JIT compile for numba)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--grid", type=int, default=401)
    parser.add_argument("--mc-points", type=int, default=2000)
    parser.add_argument("--samples", type=int, default=20000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    det_args = _layout(args.grid)
    mc_args = _layout(int(np.sqrt(args.mc_points)) + 1)

    backends = ["numpy"] + (["numba"] if HAVE_NUMBA else [])
    print(f"deterministic kernel: {det_args[0].size} points")
    print(f"monte carlo kernel:   {mc_args[0].size} points x {args.samples} draws")
    print()
    print(f"{'kernel':<14} {'backend':<8} {'best of ' + str(args.repeat):>12}")
    results = {}
    for backend in backends:
        t = _time(lambda: kernels.assoc_deterministic(*det_args, backend=backend),
                  args.repeat)
        results[("det", backend)] = t
        print(f"{'deterministic':<14} {backend:<8} {t * 1e3:>10.2f} ms")
    for backend in backends:
        t = _time(lambda: kernels.assoc_monte_carlo(
            *mc_args, samples=args.samples, seed=42, fade_serving=False,
            backend=backend), args.repeat)
        results[("mc", backend)] = t
        print(f"{'monte carlo':<14} {backend:<8} {t * 1e3:>10.2f} ms")

    if HAVE_NUMBA:
        print()
        for kind in ("det", "mc"):
            speedup = results[(kind, "numpy")] / results[(kind, "numba")]
            print(f"{kind}: numba speedup x{speedup:.2f}")


if __name__ == "__main__":
    main()
