"""Benchmark the see-saw kernel: numba-jitted vs pure-python fallback.

Run:
    python benchmarks/bench_seesaw.py [--d 4] [--k 2] [--restarts 20] [--reps 5]

The workload is a batch of random Hermitian forms on C^d (x) C^d minimized
over Schmidt-rank-<= k unit vectors, the inner loop behind every see-saw
certificate. Both kernels see identical inputs; the jitted path is warmed
once before timing so compilation is not counted.
"""

import argparse
import time

import numpy as np

from conekit._seesaw import NUMBA_ACTIVE, _jit_kernel, _py_kernel, seesaw_minimize


def _workload(d, n_mats, seed):
    rng = np.random.default_rng(seed)
    mats = []
    for _ in range(n_mats):
        g = rng.normal(size=(d * d, d * d)) + 1j * rng.normal(size=(d * d, d * d))
        h = 0.5 * (g + g.conj().T)
        mats.append(np.ascontiguousarray(h / np.abs(h).max()))
    return mats


def _time_kernel(kernel, mats, d, k, restarts, reps):
    best = np.inf
    checksum = 0.0
    for _ in range(reps):
        t0 = time.perf_counter()
        for i, c in enumerate(mats):
            q, _, _ = seesaw_minimize(c, (d, d), k, restarts=restarts,
                                      seed=i, kernel=kernel)
            checksum += q
        best = min(best, time.perf_counter() - t0)
    return best, checksum / reps


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d", type=int, default=4)
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--restarts", type=int, default=20)
    ap.add_argument("--n-mats", type=int, default=12)
    ap.add_argument("--reps", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    mats = _workload(args.d, args.n_mats, args.seed)
    print(f"workload: {args.n_mats} Hermitian forms at d={args.d}, "
          f"k={args.k}, {args.restarts} restarts, best of {args.reps} reps")

    if NUMBA_ACTIVE:
        # warm the compiled path before timing
        seesaw_minimize(mats[0], (args.d, args.d), args.k, restarts=1,
                        kernel=_jit_kernel)
        t_jit, s_jit = _time_kernel(_jit_kernel, mats, args.d, args.k,
                                    args.restarts, args.reps)
    else:
        t_jit, s_jit = None, None

    t_py, s_py = _time_kernel(_py_kernel, mats, args.d, args.k,
                              args.restarts, args.reps)

    print(f"{'kernel':<12} {'time [s]':>10} {'per call [ms]':>14}")
    print(f"{'python':<12} {t_py:>10.4f} {1e3 * t_py / args.n_mats:>14.2f}")
    if t_jit is not None:
        print(f"{'numba':<12} {t_jit:>10.4f} {1e3 * t_jit / args.n_mats:>14.2f}")
        print(f"speedup: {t_py / t_jit:.1f}x")
        if abs(s_py - s_jit) > 1e-9:
            raise SystemExit(f"kernels disagree: {s_py} vs {s_jit}")
    else:
        print("numba unavailable or disabled via CONEKIT_NO_NUMBA; "
              "timed the python path only")


if __name__ == "__main__":
    main()
