"""Benchmark the alignment kernels: numba @njit vs the pure-numpy fallback.

Usage:
    python3 benchmarks/bench_alignment.py [--n 800] [--max-len 12] [--repeat 3]

The same workloads run through both backends (regardless of UNFUN_NUMBA),
so the numbers are directly comparable on one machine.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from unfun.alignment import kernels


def make_sequences(n: int, max_len: int, vocab: int, seed: int):
    rng = np.random.default_rng(seed)
    lengths = rng.integers(1, max_len + 1, size=n).astype(np.int32)
    padded = rng.integers(0, vocab, size=(n, max_len), dtype=np.int32)
    return padded, lengths


def time_call(fn, *args, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_pairwise(padded, lengths, repeat):
    rows = []
    rows.append(("numpy", time_call(kernels.pairwise_distance_matrix_numpy,
                                    padded, lengths, repeat=repeat)))
    if kernels.backend() == "numba":
        kernels.pairwise_distance_matrix_numba(padded[:4], lengths[:4])  # warm the jit
        rows.append(("numba", time_call(kernels.pairwise_distance_matrix_numba,
                                        padded, lengths, repeat=repeat)))
    return rows


def bench_tables(padded, lengths, repeat):
    pairs = [(padded[i, : lengths[i]], padded[i + 1, : lengths[i + 1]])
             for i in range(0, len(lengths) - 1, 2)]

    def run(fn):
        for a, b in pairs:
            fn(a, b)

    rows = [("numpy", time_call(run, kernels.dp_table_numpy, repeat=repeat))]
    if kernels.backend() == "numba":
        kernels.dp_table_numba(padded[0, :4], padded[1, :4])
        rows.append(("numba", time_call(run, kernels.dp_table_numba, repeat=repeat)))
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=800, help="number of sequences")
    parser.add_argument("--max-len", type=int, default=12)
    parser.add_argument("--vocab", type=int, default=50)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    padded, lengths = make_sequences(args.n, args.max_len, args.vocab, args.seed)
    n_pairs = args.n * args.n
    print(f"active backend: {kernels.backend()}")
    print(f"workload: {args.n} sequences (max len {args.max_len}), "
          f"{n_pairs:,} pairwise distances\n")

    print(f"{'kernel':<28}{'backend':<10}{'best time':>12}{'pairs/s':>14}")
    for backend_name, seconds in bench_pairwise(padded, lengths, args.repeat):
        print(f"{'pairwise_distance_matrix':<28}{backend_name:<10}"
              f"{seconds:>11.3f}s{n_pairs / seconds:>14,.0f}")
    n_tables = len(lengths) // 2
    for backend_name, seconds in bench_tables(padded, lengths, args.repeat):
        print(f"{'dp_table (per pair)':<28}{backend_name:<10}"
              f"{seconds:>11.3f}s{n_tables / seconds:>14,.0f}")

    if kernels.backend() != "numba":
        print("\nnumba backend unavailable or disabled (UNFUN_NUMBA=0); "
              "only the numpy fallback was timed.")


if __name__ == "__main__":
    main()
