"""Compare the compiled kernels against the pure-Python fallback.

Times the three hot kernels (Jacobi eigensolver, pair product means,
cosine grid maximum) on both backends and prints a per-size table with
the speedup.  numpy.linalg.eigh is timed alongside as context.

Usage::

    python benchmarks/bench_kernels.py [--sizes 16,32,64,128] [--repeats 5]
"""

import argparse
import time

import numpy as np

from spcov import _kernels_py

try:
    from spcov import _kernels
except ImportError:
    _kernels = None


def best_of(repeats, fn, *args, fresh=None):
    """Best wall time over repeats; ``fresh`` regenerates in-place args."""
    best = float("inf")
    for _ in range(repeats):
        call_args = fresh() if fresh is not None else args
        start = time.perf_counter()
        fn(*call_args)
        best = min(best, time.perf_counter() - start)
    return best


def bench_jacobi(rng, d, repeats):
    m = rng.normal(size=(d, d))
    a = np.ascontiguousarray((m + m.T) / 2.0)
    rows = {"numpy": best_of(repeats, np.linalg.eigh, a)}
    tol = 1e-12 * np.linalg.norm(a)
    # the Jacobi kernels diagonalize in place, so each repeat needs a fresh copy
    rows["python"] = best_of(repeats, _kernels_py.jacobi_eigh,
                             fresh=lambda: (a.copy(), tol, 100))
    if _kernels is not None:
        rows["compiled"] = best_of(repeats, _kernels.jacobi_eigh,
                                   fresh=lambda: (a.copy(), tol, 100))
    return rows


def bench_pair_means(rng, d, repeats):
    n, marks = 4096, max(2, d // 4)
    values = np.ascontiguousarray(rng.normal(size=(n, marks)))
    ii, jj, offsets = [], [], [0]
    for s in range(marks):
        for j in range(marks - s):
            ii.append(j)
            jj.append(j + s)
        offsets.append(len(ii))
    ii = np.asarray(ii, dtype=np.int64)
    jj = np.asarray(jj, dtype=np.int64)
    offsets = np.asarray(offsets, dtype=np.int64)
    rows = {"python": best_of(repeats, _kernels_py.pair_product_means,
                              values, ii, jj, offsets)}
    if _kernels is not None:
        rows["compiled"] = best_of(repeats, _kernels.pair_product_means,
                                   values, ii, jj, offsets)
    return rows


def bench_cosine_grid(rng, d, repeats):
    t = np.ascontiguousarray(rng.normal(size=d))
    rows = {"python": best_of(repeats, _kernels_py.cosine_grid_max, t)}
    if _kernels is not None:
        rows["compiled"] = best_of(repeats, _kernels.cosine_grid_max, t)
    return rows


BENCHES = [
    ("jacobi_eigh", bench_jacobi),
    ("pair_product_means", bench_pair_means),
    ("cosine_grid_max", bench_cosine_grid),
]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="16,32,64,128",
                        help="comma-separated matrix dimensions")
    parser.add_argument("--repeats", type=int, default=5,
                        help="repeats per timing (best is kept)")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    sizes = [int(s) for s in args.sizes.split(",")]
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(args.seed)))

    if _kernels is None:
        print("compiled backend unavailable; timing the fallback only\n")

    for name, bench in BENCHES:
        print(f"== {name} ==")
        header = f"{'d':>6} {'python':>12}"
        if _kernels is not None:
            header += f" {'compiled':>12} {'speedup':>9}"
        if name == "jacobi_eigh":
            header += f" {'numpy':>12}"
        print(header)
        for d in sizes:
            rows = bench(rng, d, args.repeats)
            line = f"{d:>6} {rows['python'] * 1e3:>10.3f}ms"
            if "compiled" in rows:
                speedup = rows["python"] / rows["compiled"]
                line += f" {rows['compiled'] * 1e3:>10.3f}ms {speedup:>8.1f}x"
            if "numpy" in rows:
                line += f" {rows['numpy'] * 1e3:>10.3f}ms"
            print(line)
        print()


if __name__ == "__main__":
    main()
