"""Dynamic-programming kernels for unit-cost Levenshtein over integer id sequences.

Two interchangeable backends:

* ``numba`` -- @njit-compiled loops (default when numba imports cleanly)
* ``numpy`` -- vectorized row-sweep fallback

Selection is controlled by the ``UNFUN_NUMBA`` environment variable:
``0``/``false`` forces the numpy path, ``1``/``true`` requires numba,
anything else (or unset) auto-detects.  Both backends are exported with
``_numpy``/``_numba`` suffixes so tests and benchmarks can compare them
directly; the unsuffixed names are the selected backend.
"""

from __future__ import annotations

import os

import numpy as np

_FORCE_OFF = {"0", "false", "off", "no"}
_FORCE_ON = {"1", "true", "on", "yes"}


def _resolve_backend() -> str:
    flag = os.environ.get("UNFUN_NUMBA", "").strip().lower()
    if flag in _FORCE_OFF:
        return "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        if flag in _FORCE_ON:
            raise
        return "numpy"
    return "numba"


_BACKEND = _resolve_backend()


def backend() -> str:
    """Name of the active kernel backend ('numba' or 'numpy')."""
    return _BACKEND


# ---------------------------------------------------------------------------
# numpy backend
# ---------------------------------------------------------------------------

def dp_table_numpy(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Full (len(a)+1, len(b)+1) Levenshtein table, row-sweep vectorized.

    The in-row (insertion) dependency is a running minimum, folded into a
    single pass via minimum.accumulate on (row[j] - j).
    """
    m, n = len(a), len(b)
    cols = np.arange(n + 1, dtype=np.int32)
    dp = np.empty((m + 1, n + 1), dtype=np.int32)
    dp[0] = cols
    for i in range(1, m + 1):
        prev = dp[i - 1]
        cand = np.minimum(prev[1:] + 1, prev[:-1] + (b != a[i - 1]))
        row = np.empty(n + 1, dtype=np.int32)
        row[0] = i
        row[1:] = cand
        dp[i] = np.minimum.accumulate(row - cols) + cols
    return dp


def distance_numpy(a: np.ndarray, b: np.ndarray) -> int:
    return int(dp_table_numpy(a, b)[len(a), len(b)])


def pairwise_distance_matrix_numpy(padded: np.ndarray, lengths: np.ndarray) -> np.ndarray:
    """All-pairs distances for N padded id rows; vectorized over the pair axis.

    ``padded`` is (N, L) int32 with junk beyond each row's length; junk never
    leaks because cell (i, j) of a DP table only depends on prefixes.
    """
    n_seq, width = padded.shape
    lengths = lengths.astype(np.int64)
    cols = np.arange(width + 1, dtype=np.int32)
    out = np.empty((n_seq, n_seq), dtype=np.int32)
    gather = np.arange(n_seq)
    for i in range(n_seq):
        la = int(lengths[i])
        dp = np.broadcast_to(cols, (n_seq, width + 1)).copy()
        for ai in range(1, la + 1):
            cand = np.minimum(dp[:, 1:] + 1, dp[:, :-1] + (padded != padded[i, ai - 1]))
            row = np.empty_like(dp)
            row[:, 0] = ai
            row[:, 1:] = cand
            dp = np.minimum.accumulate(row - cols, axis=1) + cols
        out[i] = dp[gather, lengths]
    return out


# ---------------------------------------------------------------------------
# numba backend
# ---------------------------------------------------------------------------

if _BACKEND == "numba":
    from numba import njit

    @njit(cache=True)
    def _dp_table_jit(a, b):  # pragma: no cover - exercised via wrapper
        m, n = len(a), len(b)
        dp = np.empty((m + 1, n + 1), dtype=np.int32)
        for j in range(n + 1):
            dp[0, j] = j
        for i in range(1, m + 1):
            dp[i, 0] = i
            ai = a[i - 1]
            for j in range(1, n + 1):
                cost = 0 if ai == b[j - 1] else 1
                best = dp[i - 1, j - 1] + cost
                if dp[i - 1, j] + 1 < best:
                    best = dp[i - 1, j] + 1
                if dp[i, j - 1] + 1 < best:
                    best = dp[i, j - 1] + 1
                dp[i, j] = best
        return dp

    @njit(cache=True)
    def _pairwise_jit(padded, lengths):  # pragma: no cover - exercised via wrapper
        n_seq, width = padded.shape
        out = np.empty((n_seq, n_seq), dtype=np.int32)
        prev = np.empty(width + 1, dtype=np.int32)
        cur = np.empty(width + 1, dtype=np.int32)
        for i in range(n_seq):
            la = lengths[i]
            out[i, i] = 0
            for k in range(i + 1, n_seq):
                lb = lengths[k]
                for j in range(lb + 1):
                    prev[j] = j
                for ai in range(1, la + 1):
                    cur[0] = ai
                    av = padded[i, ai - 1]
                    for j in range(1, lb + 1):
                        cost = 0 if av == padded[k, j - 1] else 1
                        best = prev[j - 1] + cost
                        if prev[j] + 1 < best:
                            best = prev[j] + 1
                        if cur[j - 1] + 1 < best:
                            best = cur[j - 1] + 1
                        cur[j] = best
                    for j in range(lb + 1):
                        prev[j] = cur[j]
                d = prev[lb]
                out[i, k] = d
                out[k, i] = d
        return out

    def dp_table_numba(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return _dp_table_jit(np.ascontiguousarray(a, dtype=np.int32),
                             np.ascontiguousarray(b, dtype=np.int32))

    def distance_numba(a: np.ndarray, b: np.ndarray) -> int:
        return int(dp_table_numba(a, b)[len(a), len(b)])

    def pairwise_distance_matrix_numba(padded: np.ndarray, lengths: np.ndarray) -> np.ndarray:
        return _pairwise_jit(np.ascontiguousarray(padded, dtype=np.int32),
                             np.ascontiguousarray(lengths, dtype=np.int32))

    dp_table = dp_table_numba
    distance = distance_numba
    pairwise_distance_matrix = pairwise_distance_matrix_numba
else:
    dp_table = dp_table_numpy
    distance = distance_numpy
    pairwise_distance_matrix = pairwise_distance_matrix_numpy
