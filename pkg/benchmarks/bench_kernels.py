"""Benchmark the numba kernels against their pure-numpy fallbacks.

Run with the package installed:

    python benchmarks/bench_kernels.py

Includes a warmup pass so JIT compilation does not count against numba.
Set DNSAMPLER_NUMBA=0 before importing to check the selected default path.
"""

import time

import numpy as np

from dnsampler import kernels

RNG = np.random.default_rng(0)


def time_call(fn, args, repeats):
    fn(*args)  # warmup (and JIT compile)
    start = time.perf_counter()
    for _ in range(repeats):
        fn(*args)
    return (time.perf_counter() - start) / repeats


def cases():
    for n in (50, 500, 5000):
        x = RNG.standard_normal(n)
        y = 2.0 * x + 1.0 + RNG.standard_normal(n)
        yield (f"straightline n={n}", kernels.straightline_loglike_numba,
               kernels.straightline_loglike_numpy, (x, y, 2.0, 1.0, 0.5))
    for d in (5, 50):
        theta = RNG.standard_normal(d)
        yield (f"gaussian d={d}", kernels.gaussian_loglike_numba,
               kernels.gaussian_loglike_numpy, (theta, 0.1))
    for n_comp in (3, 30, 100):
        data = RNG.standard_normal(82)
        mu = RNG.standard_normal(n_comp)
        log_sigma = 0.3 * RNG.standard_normal(n_comp)
        log_w = np.log(np.full(n_comp, 1.0 / n_comp))
        yield (f"mixture 82pts k={n_comp}", kernels.mixture_loglike_numba,
               kernels.mixture_loglike_numpy, (data, mu, log_sigma, log_w))
    for n in (100, 1000):
        lat = RNG.standard_normal(n)
        yield (f"abc minmax n={n}", kernels.abc_minmax_discrepancy_numba,
               kernels.abc_minmax_discrepancy_numpy, (lat, 0.1, 1.1, -2.5, 2.5))


def main():
    if not kernels.USE_NUMBA:
        print("numba path unavailable (DNSAMPLER_NUMBA=0 or numba missing); "
              "nothing to compare")
        return
    print(f"{'kernel':<24} {'numba':>12} {'numpy':>12} {'speedup':>9}")
    print("-" * 60)
    for name, jit_fn, np_fn, args in cases():
        repeats = 2000
        t_jit = time_call(jit_fn, args, repeats)
        t_np = time_call(np_fn, args, repeats)
        print(f"{name:<24} {t_jit * 1e6:>10.2f}us {t_np * 1e6:>10.2f}us "
              f"{t_np / t_jit:>8.1f}x")


if __name__ == "__main__":
    main()
