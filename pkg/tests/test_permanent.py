import itertools
import math

import numpy as np
import pytest

from bosonex.permanent import (DimensionError, expand_rows, laplace_permanent, minor_permanents,
                               permanent_naive, permanent_repeated, permanent_ryser)
from conftest import random_complex


def rel_err(x, y):
    return abs(x - y) / abs(y)


def random_pattern(rng, k, m):
    return rng.multinomial(k, np.full(m, 1.0 / m))


def test_naive_small_cases():
    assert permanent_naive(np.eye(2)) == 1
    assert permanent_naive(np.ones((3, 3))) == 6
    assert permanent_naive([[1, 2], [3, 4]]) == 10


def test_naive_refuses_large():
    with pytest.raises(ValueError):
        permanent_naive(np.ones((11, 11)))


def test_non_square_rejected():
    with pytest.raises(DimensionError):
        permanent_ryser(np.ones((2, 3)))
    with pytest.raises(DimensionError):
        permanent_naive(np.ones((3, 2)))


def test_ryser_small_cases():
    assert permanent_ryser([[1, 2], [3, 4]]) == 10
    assert permanent_ryser(np.zeros((0, 0))) == 1
    for k in range(1, 11):
        assert permanent_ryser(np.eye(k)) == 1


def test_ryser_refuses_k_above_30():
    with pytest.raises(ValueError):
        permanent_ryser(np.eye(31))


@pytest.mark.parametrize("compensated", [False, True])
def test_ryser_matches_naive(rng, compensated):
    for _ in range(20):
        b = random_complex(rng, (6, 6))
        assert rel_err(permanent_ryser(b, compensated=compensated), permanent_naive(b)) < 1e-10


def test_ryser_integer_matrices_exact(rng):
    for k in range(1, 8):
        b = rng.integers(-3, 4, size=(k, k)).astype(float)
        exact = sum(math.prod(int(b[i, p[i]]) for i in range(k))
                    for p in itertools.permutations(range(k)))
        assert permanent_ryser(b) == exact


def test_repeated_examples():
    assert permanent_repeated([[1, 2], [3, 4]], (2, 0)) == 4
    assert permanent_naive([[1, 2], [1, 2]]) == 4
    row = np.array([[1.5, -2.0, 0.5j, 3.0]])
    assert np.isclose(permanent_repeated(row, (4,)), math.factorial(4) * np.prod(row))


def test_repeated_all_distinct_matches_ryser(rng):
    for _ in range(10):
        base = random_complex(rng, (9, 6))
        s = np.zeros(9, dtype=int)
        s[rng.choice(9, size=6, replace=False)] = 1
        expected = permanent_ryser(base[s == 1])
        assert rel_err(permanent_repeated(base, s), expected) < 1e-10


@pytest.mark.parametrize("compensated", [False, True])
def test_repeated_matches_naive_on_expansion(rng, compensated):
    for _ in range(50):
        k = int(rng.integers(1, 8))
        m = int(rng.integers(1, k + 2))
        base = random_complex(rng, (m, k))
        s = random_pattern(rng, k, m)
        got = permanent_repeated(base, s, compensated=compensated)
        assert rel_err(got, permanent_naive(expand_rows(base, s))) < 1e-9


def test_repeated_integer_weights_exact(rng):
    # binomial weights are tracked in floating point; integer input must stay exact
    for _ in range(30):
        k = int(rng.integers(1, 8))
        base = rng.integers(-2, 3, size=(3, k)).astype(float)
        s = random_pattern(rng, k, 3)
        assert permanent_repeated(base, s) == permanent_naive(expand_rows(base, s))


def test_repeated_step_count(rng):
    for s in [(2, 0, 1), (3,), (1, 1, 1, 1), (0, 4, 2)]:
        k = sum(s)
        base = random_complex(rng, (len(s), k))
        _, steps = permanent_repeated(base, s, with_steps=True)
        assert steps == math.prod(c + 1 for c in s) - 1


def test_repeated_dimension_errors():
    with pytest.raises(DimensionError):
        permanent_repeated(np.ones((2, 3)), (1, 1))
    with pytest.raises(DimensionError):
        permanent_repeated(np.ones((2, 2)), (1, 1, 0))
    with pytest.raises(ValueError):
        permanent_repeated(np.ones((2, 2)), (3, -1))


def test_row_permutation_invariance(rng):
    for _ in range(10):
        b = random_complex(rng, (6, 6))
        shuffled = b[rng.permutation(6)]
        assert rel_err(permanent_ryser(shuffled), permanent_ryser(b)) < 1e-10


@pytest.mark.parametrize("c", [2, 1j])
def test_row_scaling(rng, c):
    base = random_complex(rng, (4, 5))
    s = np.array([2, 1, 0, 2])
    scaled = base.copy()
    scaled[0] *= c
    # row 0 appears twice in the expansion
    assert rel_err(permanent_repeated(scaled, s), c**2 * permanent_repeated(base, s)) < 1e-10
    b = random_complex(rng, (5, 5))
    b2 = b.copy()
    b2[3] *= c
    assert rel_err(permanent_ryser(b2), c * permanent_ryser(b)) < 1e-10


def test_minors_two_by_two():
    minors = minor_permanents([[1, 2], [3, 4]], (1, 0))
    np.testing.assert_allclose(minors, [2, 1])
    assert laplace_permanent([3, 4], minors) == 10


def test_minors_k1():
    np.testing.assert_array_equal(minor_permanents(np.array([[0.3 + 0.1j]]), (0,)), [1])


def test_minors_match_each_minor(rng):
    for _ in range(20):
        k = int(rng.integers(2, 7))
        m = int(rng.integers(1, k + 1))
        base = random_complex(rng, (m, k))
        s = random_pattern(rng, k - 1, m)
        minors, steps = minor_permanents(base, s, with_steps=True)
        assert steps == math.prod(c + 1 for c in s) - 1
        rows = expand_rows(base, s)
        for ell in range(k):
            sub = np.delete(rows, ell, axis=1)
            assert rel_err(minors[ell], permanent_naive(sub)) < 1e-9
            assert rel_err(minors[ell], permanent_repeated(np.delete(base, ell, axis=1), s)) < 1e-9


@pytest.mark.parametrize("compensated", [False, True])
def test_laplace_reconstructs_permanent(rng, compensated):
    for _ in range(20):
        k = int(rng.integers(1, 8))
        m = int(rng.integers(1, 5))
        base = random_complex(rng, (m, k))
        s = random_pattern(rng, k, m)
        last = int(np.flatnonzero(s)[-1])
        s_minus = s.copy()
        s_minus[last] -= 1
        minors = minor_permanents(base, s_minus, compensated=compensated)
        assert rel_err(laplace_permanent(base[last], minors), permanent_repeated(base, s)) < 1e-9


def test_laplace_random_5x5(rng):
    b = random_complex(rng, (5, 5))
    minors = [permanent_ryser(np.delete(b[:4], ell, axis=1)) for ell in range(5)]
    assert rel_err(laplace_permanent(b[4], minors), permanent_ryser(b)) < 1e-10


def test_laplace_zero_row_and_mismatch():
    assert laplace_permanent([0, 0, 0], [1, 2, 3]) == 0
    with pytest.raises(DimensionError):
        laplace_permanent([1, 2], [1, 2, 3])


def test_minor_dimension_error():
    with pytest.raises(DimensionError):
        minor_permanents(np.ones((2, 3)), (1, 0))


def test_precision_on_heavy_cancellation():
    # all-ones k x k: Ryser terms reach k**k against a result of k!
    for k, tol in [(12, 1e-12), (16, 1e-8), (20, 1e-5)]:
        exact = math.factorial(k)
        for compensated in (False, True):
            got = permanent_ryser(np.ones((k, k)), compensated=compensated)
            assert abs(got - exact) / exact < tol
