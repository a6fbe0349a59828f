"""Time the compiled and pure-Python Jacobi kernels on random Hermitian matrices.

    python3 benchmarks/bench_jacobi.py --n 4 --count 2000
"""
import argparse
import time

import numpy as np

from coherence_tradeoff import linalg


def random_hermitian(rng, n):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return g + g.conj().T


def time_kernel(kernel, mats, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for m in mats:
            linalg.herm_eigen(m, kernel)
        best = min(best, time.perf_counter() - t0)
    return best / len(mats)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=4, help="matrix dimension")
    parser.add_argument("--count", type=int, default=2000)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    mats = [random_hermitian(rng, args.n) for _ in range(args.count)]
    print(f"{args.count} random {args.n}x{args.n} Hermitian matrices, best of {args.repeat}")
    timings = {k: time_kernel(k, mats, args.repeat) for k in sorted(linalg.KERNELS)}
    for kernel, t in timings.items():
        print(f"  {kernel:9s} {t * 1e6:9.1f} us/matrix")
    if "compiled" in timings:
        print(f"  speedup   {timings['python'] / timings['compiled']:9.1f}x")
    else:
        print("  compiled kernel not built; run `pip install -e . --no-build-isolation`")


if __name__ == "__main__":
    main()
