"""Permanents and determinants of complex matrices.

``permanent_ryser`` is the production path: Ryser's inclusion-exclusion formula
with Gray-code subset ordering, compiled with numba. The subset range is cut
into a fixed number of chunks that depends only on the matrix size, each chunk
is summed in a fixed order and the partial sums are combined by a fixed binary
tree, so the result is bitwise reproducible whatever the thread count.
``permanent_naive`` sums over all permutations and serves as the oracle.
"""

from __future__ import annotations

import itertools
import os
import time
from math import factorial

import numba
import numpy as np

if "NUMBA_THREADING_LAYER" not in os.environ:
    # the bundled TBB is often too old; prefer OpenMP, fall back to workqueue
    numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]

NAIVE_MAX_N = 10
RYSER_MAX_N = 30
KAHAN_MIN_N = 20


class SizeLimitError(ValueError):
    """Raised when a matrix is too large for the requested algorithm."""


def _as_square(matrix) -> np.ndarray:
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def permanent_naive(matrix) -> complex:
    """Sum over all permutations of prod_i M[i, sigma(i)]."""
    m = _as_square(matrix)
    n = m.shape[0]
    if n > NAIVE_MAX_N:
        raise SizeLimitError(f"naive permanent limited to n <= {NAIVE_MAX_N}, got {n}")
    rows = np.arange(n)
    total = 0j
    for sigma in itertools.permutations(range(n)):
        total += np.prod(m[rows, list(sigma)])
    return complex(total)


@numba.njit(cache=True, nogil=True)
def _ryser_chunk(a, k_start, k_stop, compensated):
    n = a.shape[0]
    # Gray code of the subset before step k_start
    prev = (k_start - 1) ^ ((k_start - 1) >> 1)
    rowsum = np.zeros(n, dtype=np.complex128)
    size = 0
    for j in range(n):
        if (prev >> j) & 1:
            size += 1
            for i in range(n):
                rowsum[i] += a[i, j]
    acc_re = 0.0
    acc_im = 0.0
    c_re = 0.0
    c_im = 0.0
    for k in range(k_start, k_stop):
        # bit flipped at step k is the lowest set bit of k
        j = 0
        kk = k
        while (kk & 1) == 0:
            kk >>= 1
            j += 1
        gray = k ^ (k >> 1)
        if (gray >> j) & 1:
            size += 1
            for i in range(n):
                rowsum[i] += a[i, j]
        else:
            size -= 1
            for i in range(n):
                rowsum[i] -= a[i, j]
        prod = rowsum[0]
        for i in range(1, n):
            prod *= rowsum[i]
        if size & 1:
            prod = -prod
        if compensated:
            y = prod.real - c_re
            t = acc_re + y
            c_re = (t - acc_re) - y
            acc_re = t
            y = prod.imag - c_im
            t = acc_im + y
            c_im = (t - acc_im) - y
            acc_im = t
        else:
            acc_re += prod.real
            acc_im += prod.imag
    return complex(acc_re, acc_im)


@numba.njit(cache=True, parallel=True)
def _ryser_chunks(a, bounds, compensated):
    n_chunks = bounds.shape[0] - 1
    out = np.zeros(n_chunks, dtype=np.complex128)
    for c in numba.prange(n_chunks):
        out[c] = _ryser_chunk(a, bounds[c], bounds[c + 1], compensated)
    return out


def _tree_sum(values: np.ndarray) -> complex:
    vals = list(values)
    while len(vals) > 1:
        nxt = [vals[i] + vals[i + 1] for i in range(0, len(vals) - 1, 2)]
        if len(vals) % 2:
            nxt.append(vals[-1])
        vals = nxt
    return complex(vals[0]) if vals else 0j


def _chunk_count(n: int) -> int:
    # depends on n only, never on the thread count
    return 1 << max(0, min(n - 12, 8))


def permanent_ryser(matrix, compensated: bool | None = None) -> complex:
    """Permanent by Ryser's formula in O(2^n n) time.

    ``compensated`` switches on Kahan summation of the 2^n terms; by default
    it is used for n >= 20.
    """
    m = _as_square(matrix)
    n = m.shape[0]
    if n > RYSER_MAX_N:
        raise SizeLimitError(f"Ryser permanent limited to n <= {RYSER_MAX_N}, got {n}")
    if n == 0:
        return 1 + 0j
    if compensated is None:
        compensated = n >= KAHAN_MIN_N
    total = 1 << n
    bounds = np.linspace(1, total, _chunk_count(n) + 1).astype(np.int64)
    bounds[0], bounds[-1] = 1, total
    partial = _ryser_chunks(np.ascontiguousarray(m), bounds, bool(compensated))
    s = _tree_sum(partial)
    return -s if n % 2 else s


def permanent(matrix) -> complex:
    """Production permanent (Ryser); empty matrices have permanent 1."""
    return permanent_ryser(matrix)


def determinant(matrix) -> complex:
    """Determinant via LU factorisation with partial pivoting (LAPACK)."""
    m = _as_square(matrix)
    if m.shape[0] == 0:
        return 1 + 0j
    return complex(np.linalg.det(m))


def benchmark_permanent(max_n: int = 24, min_n: int = 4, step: int = 2, repeats: int = 1, seed: int = 0):
    """Time ``permanent_ryser`` on random complex matrices.

    Returns a list of ``(n, seconds)`` with the best of ``repeats`` runs.
    """
    rng = np.random.default_rng(seed)
    permanent_ryser(np.eye(2))  # compile outside the timings
    rows = []
    for n in range(min_n, max_n + 1, step):
        m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        best = np.inf
        for _ in range(repeats):
            t0 = time.perf_counter()
            permanent_ryser(m)
            best = min(best, time.perf_counter() - t0)
        rows.append((n, best))
    return rows


def factorial_product(occupations) -> int:
    out = 1
    for n in occupations:
        out *= factorial(int(n))
    return out
