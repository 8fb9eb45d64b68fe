"""Time the compiled and numpy purity kernels on the full qutrit permutation sweep.

    python3 benchmarks/bench_kernels.py [--threads N] [--repeat R]
"""
import argparse
import time

import numpy as np

from multient import kernels, permlab


def time_backend(perms, backend, threads, repeat):
    best = np.inf
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        chunks = np.array_split(perms, max(1, threads * 4))
        if threads > 1:
            from concurrent.futures import ThreadPoolExecutor

            with ThreadPoolExecutor(threads) as pool:
                parts = list(pool.map(lambda c: kernels.purity_numerators(c, None, 3, backend), chunks))
        else:
            parts = [kernels.purity_numerators(c, None, 3, backend) for c in chunks]
        out = np.concatenate(parts)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    perms = permlab.all_permutations(3)
    print(f"{len(perms)} permutation states, threads={args.threads}, best of {args.repeat}")
    results = {}
    for backend in ("numpy", "cython"):
        if backend == "cython" and kernels.purity_numerators_compiled is None:
            print("cython : not built")
            continue
        t, out = time_backend(perms, backend, args.threads, args.repeat)
        results[backend] = out
        print(f"{backend:7s}: {t:.3f} s")
    if len(results) == 2:
        print("identical:", bool(np.array_equal(results["numpy"], results["cython"])))


if __name__ == "__main__":
    main()
