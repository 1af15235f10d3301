import itertools
import time

import numpy as np
import pytest

from fock_interfere.permanent import (
    SizeLimitError,
    benchmark_permanent,
    determinant,
    factorial_product,
    permanent,
    permanent_naive,
    permanent_ryser,
)


def test_small_closed_forms():
    a = np.array([[1, 2], [3, 4]])
    assert permanent(a) == pytest.approx(10)
    assert permanent_naive(a) == pytest.approx(10)
    assert permanent(np.zeros((0, 0))) == 1
    assert permanent([[5]]) == pytest.approx(5)


@pytest.mark.parametrize("n", [1, 2, 5, 8, 10])
def test_all_ones_is_factorial(n):
    assert permanent_ryser(np.ones((n, n))).real == pytest.approx(float(np.prod(range(1, n + 1))), rel=1e-13)


def test_identity_and_permutation_matrices():
    for perm in itertools.permutations(range(4)):
        P = np.eye(4)[list(perm)]
        assert permanent(P) == pytest.approx(1)


def test_ryser_matches_naive(rng):
    for n in range(1, 9):
        for _ in range(5):
            m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            assert abs(permanent_ryser(m) - permanent_naive(m)) <= 1e-10 * max(1, abs(permanent_naive(m)))


def test_compensated_and_plain_agree(rng):
    m = rng.normal(size=(14, 14)) + 1j * rng.normal(size=(14, 14))
    a = permanent_ryser(m, compensated=True)
    b = permanent_ryser(m, compensated=False)
    assert abs(a - b) <= 1e-10 * abs(a)


def test_bitwise_reproducible(rng):
    m = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
    assert permanent_ryser(m) == permanent_ryser(m.copy())


def test_row_scaling_and_transpose(rng):
    m = rng.normal(size=(7, 7)) + 1j * rng.normal(size=(7, 7))
    p = permanent(m)
    s = m.copy()
    s[2] *= 3 - 1j
    assert permanent(s) == pytest.approx(p * (3 - 1j), rel=1e-12)
    assert permanent(m.T) == pytest.approx(p, rel=1e-12)


def test_size_limits():
    with pytest.raises(SizeLimitError):
        permanent_naive(np.ones((11, 11)))
    with pytest.raises(SizeLimitError):
        permanent_ryser(np.ones((31, 31)))
    with pytest.raises(ValueError):
        permanent(np.ones((2, 3)))


def test_determinant(rng):
    m = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    # Leibniz sum as oracle
    total = 0
    for perm in itertools.permutations(range(5)):
        inv = sum(1 for i in range(5) for j in range(i + 1, 5) if perm[i] > perm[j])
        total += (-1) ** inv * np.prod([m[i, perm[i]] for i in range(5)])
    assert determinant(m) == pytest.approx(total, rel=1e-12)
    assert determinant(np.zeros((0, 0))) == 1


def test_n20_runtime(rng):
    m = rng.normal(size=(20, 20)) + 1j * rng.normal(size=(20, 20))
    permanent_ryser(np.eye(2))
    t0 = time.perf_counter()
    permanent_ryser(m)
    assert time.perf_counter() - t0 < 10


def test_benchmark_rows():
    rows = benchmark_permanent(max_n=10, min_n=4, step=3)
    assert [n for n, _ in rows] == [4, 7, 10]
    assert all(t >= 0 for _, t in rows)


def test_factorial_product():
    assert factorial_product((2, 3, 0)) == 12
