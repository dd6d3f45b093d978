"""Time the numba kernels against the pure-numpy fallback.

Usage:  python3 benchmarks/bench_kernels.py [--n 100000] [--repeat 5]

Both backends are imported directly, so the IWCELAB_NUMBA flag is not
needed here. The first numba call (JIT compile or cache load) is excluded.
The last block times the bootstrap of the ECDF plug-in estimator end to end
under whichever backend the flag selects.
"""

import argparse
import math
import time

import numpy as np

from iwcelab.kernels import _numba, _numpy


def best_of(fn, repeat):
    fn()  # warm-up
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def step_case(rng, n):
    xs = np.sort(rng.exponential(1.0, n))
    cum = np.arange(1, n + 1) / n
    psi = xs.copy()
    t1, t2 = 0.5, 1.5
    F1 = float(np.searchsorted(xs, t1, side="right")) / n
    F2 = float(np.searchsorted(xs, t2, side="right")) / n
    return xs, cum, psi, t1, t2, F1, F2


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=100_000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    n = args.n

    u = rng.uniform(0.0, 1.0, n)
    u[::10] = 0.0
    xs, cum, psi, t1, t2, F1, F2 = step_case(rng, n)
    a, b = rng.exponential(1.0, n), rng.exponential(1.0, n)
    zs = rng.uniform(0.1, 10.0, 2000)

    cases = {
        "xlogx": lambda m: m.xlogx(u),
        "step_entropy": lambda m: m.step_entropy(xs, cum, psi, t1, t2, F1, F2, t1, t2,
                                                 False, True),
        "pair_abs_diff_stats": lambda m: m.pair_abs_diff_stats(a, b),
        "gammainc x2000": lambda m: [m.gammainc_series(2.5, z) if z < 3.5
                                     else m.gammainc_cf(2.5, z) for z in zs],
    }

    print(f"n = {n}, best of {args.repeat}")
    print(f"{'kernel':22s} {'numpy [ms]':>11s} {'numba [ms]':>11s} {'speedup':>8s}  max|diff|")
    for name, fn in cases.items():
        t_np = best_of(lambda: fn(_numpy), args.repeat)
        t_nb = best_of(lambda: fn(_numba), args.repeat)
        r_np, r_nb = fn(_numpy), fn(_numba)
        diff = float(np.max(np.abs(np.subtract(r_np, r_nb, dtype=float))))
        print(f"{name:22s} {1e3 * t_np:11.3f} {1e3 * t_nb:11.3f} {t_np / t_nb:8.1f}x  {diff:.1e}")

    # end-to-end: plug-in estimate with 200 bootstrap resamples
    from iwcelab import kernels
    from iwcelab.distributions import Exponential
    from iwcelab.entropy import TruncationInterval
    from iwcelab.oracle import ecdf_plugin_entropy
    from iwcelab.weights import ConstantOne

    d = Exponential(1.0)
    iv = TruncationInterval.make(d, 0.5, 1.5)
    t0 = time.perf_counter()
    est = ecdf_plugin_entropy(d, ConstantOne(), iv, "iwce", n, args.seed)
    dt = time.perf_counter() - t0
    print(f"\necdf_plugin_entropy (backend {kernels.BACKEND}, 200 resamples): "
          f"{dt:.2f} s, estimate {est.mean:.6f} +- {est.std_error:.1e}")
    assert math.isfinite(est.mean)


if __name__ == "__main__":
    main()
