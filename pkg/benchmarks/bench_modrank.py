"""Compare the numba and numpy Gauss-Jordan kernels over F_p.

Runs both kernels on random dense matrices and on the AR matrix of a real
instance, checks that they agree, and prints the timings.

    python benchmarks/bench_modrank.py
    python benchmarks/bench_modrank.py --sizes 100 200 400 --repeat 5
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from tjurina import _kernels, corpus, linalg, syzygy


def _time(fn, A: np.ndarray, p: int, repeat: int) -> tuple[float, tuple]:
    out = None
    samples = []
    for _ in range(repeat):
        B = A.copy()
        t0 = time.perf_counter()
        r, piv = fn(B, p, True)
        samples.append(time.perf_counter() - t0)
        out = (r, tuple(int(c) for c in piv), B.tobytes())
    return statistics.median(samples), out


def _instance_matrix(name: str, k: int, p: int) -> np.ndarray:
    M = syzygy.ar_matrix(corpus.get(name).poly, k)
    rows = linalg._integer_rows(M, list(range(M.rows)), list(range(M.cols)))
    return linalg._mod_matrix(rows, M.cols, p)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 128, 256, 384])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--instance", default="ten-lines")
    ap.add_argument("--degree", type=int, default=14)
    args = ap.parse_args(argv)

    if _kernels.rref_modp_numba is None:
        raise SystemExit("numba kernel unavailable (numba missing or TJURINA_DISABLE_NUMBA set)")
    p = linalg._PRIME_POOL[0]
    rng = np.random.default_rng(args.seed)

    # first call compiles (or loads the cache); keep it out of the timings
    _kernels.rref_modp_numba(rng.integers(0, p, (4, 4), dtype=np.int64), p, True)

    cases = []
    for n in args.sizes:
        # rank-deficient: product of n x (n/2) and (n/2) x (n + n/4)
        left = rng.integers(0, p, (n, n // 2), dtype=np.int64)
        right = rng.integers(0, 3, (n // 2, n + n // 4), dtype=np.int64)
        A = (left.astype(object) @ right.astype(object) % p).astype(np.int64)
        cases.append((f"random {A.shape[0]}x{A.shape[1]}", A))
    A = _instance_matrix(args.instance, args.degree, p)
    cases.append((f"{args.instance} AR_{args.degree} {A.shape[0]}x{A.shape[1]}", A))

    print(f"{'case':<32} {'rank':>6} {'numba s':>10} {'numpy s':>10} {'speedup':>8}")
    for label, A in cases:
        t_nb, out_nb = _time(_kernels.rref_modp_numba, A, p, args.repeat)
        t_np, out_np = _time(_kernels.rref_modp_numpy, A, p, args.repeat)
        if out_nb != out_np:
            raise SystemExit(f"kernels disagree on {label}")
        print(f"{label:<32} {out_nb[0]:>6} {t_nb:>10.4f} {t_np:>10.4f} {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
