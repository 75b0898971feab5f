import math
from collections import Counter

import numpy as np
import pytest
from scipy import stats

from bosonex.combinatorics import multiset_from_rows
from bosonex.haar import haar_unitary, stream
from bosonex.permanent import DimensionError, permanent_naive
from bosonex.sampler import (SamplingError, operation_counter, sample_batch, sample_from_weights,
                             sample_many, sample_single)
from bosonex.verification import chi_square_test, empirical_pmf, exact_pmf, tv_distance


def test_single_mode(rng):
    a = haar_unitary(1, rng)
    for _ in range(5):
        assert sample_single(a, 1, rng).z == (1,)


def test_one_photon_two_modes():
    a = haar_unitary(2, stream(1))
    samples = sample_many(a, 1, 100_000, stream(2))
    freq = np.mean(samples[:, 0] == 1)
    p = abs(a[0, 0]) ** 2
    assert abs(freq - p) < 4 * math.sqrt(p * (1 - p) / 100_000)


def test_stage_weights_match_brute_force(rng):
    # stage k weight of row i is |Per|^2 of the k x k matrix with rows (r_1..r_{k-1}, i)
    a = haar_unitary(4, rng)
    for _ in range(10):
        z, trace = sample_single(a, 3, rng, return_trace=True)
        ap = a[:, list(trace.permutation)]
        rows = [r - 1 for r in trace.rows]
        assert multiset_from_rows(trace.rows, 4) == z
        for k in range(1, 4):
            for i in range(4):
                b = ap[rows[:k - 1] + [i], :k]
                expected = abs(permanent_naive(b)) ** 2
                assert abs(trace.weights[k - 1, i] - expected) < 1e-12


def test_trace_walks_agree_with_counter(rng):
    a = haar_unitary(6, rng)
    for _ in range(20):
        _, trace = sample_single(a, 5, rng, return_trace=True)
        counts = operation_counter(trace)
        assert tuple(c.walk_length for c in counts) == trace.walks
        assert [c.laplace_ops for c in counts] == [6 * k for k in range(1, 6)]
        assert counts[-1].cost_term == math.prod(c + 1 for c in trace.multiplicities(5))


def test_operation_counter_cases(rng):
    _, trace = sample_single(haar_unitary(3, rng), 1, rng, return_trace=True)
    (stage,) = operation_counter(trace)
    assert stage.walk_length == 0 and stage.laplace_ops == 3
    for _ in range(10):
        _, trace = sample_single(haar_unitary(2, rng), 2, rng, return_trace=True)
        assert operation_counter(trace)[1].walk_length == 2
    # m much larger than n: rows are almost always distinct
    a = haar_unitary(40, rng)
    for _ in range(10):
        _, trace = sample_single(a, 4, rng, return_trace=True)
        for c in operation_counter(trace):
            if len(set(trace.rows[:c.stage - 1])) == c.stage - 1 and c.stage > 1:
                assert c.walk_length == 2 ** (c.stage - 1)


def test_sample_from_weights_point_mass(rng):
    assert all(sample_from_weights([0, 0, 3.5, 0], rng) == 3 for _ in range(100))


def test_sample_from_weights_fair_coin(rng):
    draws = np.array([sample_from_weights([1, 1], rng) for _ in range(100_000)])
    assert abs(np.mean(draws == 1) - 0.5) < 0.01


def test_sample_from_weights_multinomial(rng):
    n = 100_000
    counts = Counter(sample_from_weights([1, 2, 1], rng) for _ in range(n))
    for i, p in zip((1, 2, 3), (0.25, 0.5, 0.25)):
        assert abs(counts[i] / n - p) < 3 * math.sqrt(p * (1 - p) / n)


def test_sample_from_weights_errors(rng):
    with pytest.raises(ValueError):
        sample_from_weights([0, 0], rng)
    with pytest.raises(ValueError):
        sample_from_weights([1, -0.5], rng)
    with pytest.raises(ValueError):
        sample_from_weights([1, np.nan], rng)
    # rounding-level negatives clamp to zero
    assert sample_from_weights([-1e-15, 1.0], rng) == 2


def test_bad_n(rng):
    a = haar_unitary(3, rng)
    with pytest.raises(DimensionError):
        sample_single(a, 4, rng)
    with pytest.raises(DimensionError):
        sample_single(a, 0, rng)


def test_collapsed_weights_raise(rng):
    a = np.zeros((3, 2), dtype=complex)
    with pytest.raises(SamplingError) as exc:
        sample_single(a, 1, rng)
    assert exc.value.stage == 1
    a[:, 0] = [1, 0, 0]
    # stage 2 weights vanish because the second column is zero
    with pytest.raises(SamplingError) as exc:
        sample_batch(a, 2, 3, seed=0, start=10)
    assert exc.value.stage in (1, 2) and exc.value.index == 10


def test_batch_count_one_equals_single():
    a = haar_unitary(5, stream(0))
    single = sample_single(a, 4, stream(42, 0))
    batch = sample_batch(a, 4, 1, 42)
    assert tuple(batch[0]) == single.z


def test_batch_deterministic_and_splittable():
    a = haar_unitary(5, stream(0))
    full = sample_batch(a, 4, 300, 9)
    np.testing.assert_array_equal(full, sample_batch(a, 4, 300, 9))
    parts = [sample_batch(a, 4, 120, 9), sample_batch(a, 4, 100, 9, start=120),
             sample_batch(a, 4, 80, 9, start=220)]
    np.testing.assert_array_equal(np.concatenate(parts), full)
    np.testing.assert_array_equal(sample_batch(a, 4, 300, 9, threads=3), full)
    assert not np.array_equal(sample_batch(a, 4, 300, 10), full)


def test_many_equals_repeated_single():
    a = haar_unitary(4, stream(5))
    many = sample_many(a, 3, 50, stream(6))
    rng = stream(6)
    singles = [sample_single(a, 3, rng).z for _ in range(50)]
    assert [tuple(row) for row in many] == singles


def test_compensated_path_same_samples():
    a = haar_unitary(5, stream(3))
    np.testing.assert_array_equal(sample_batch(a, 5, 200, 1),
                                  sample_batch(a, 5, 200, 1, compensated=True))


def test_stage_weights_form_a_pmf(rng):
    a = haar_unitary(5, rng)
    for _ in range(20):
        _, trace = sample_single(a, 4, rng, return_trace=True)
        w = trace.weights
        assert np.all(np.isfinite(w))
        assert np.all(w >= -1e-12 * w.max(axis=1, keepdims=True))
        assert np.all(w.sum(axis=1) > 0)


def test_exact_m3_n2():
    a = haar_unitary(3, stream(77))
    samples = sample_many(a, 2, 50_000, stream(78))
    pmf = exact_pmf(a, 2)
    assert chi_square_test(pmf, samples).pvalue > 0.001
    assert tv_distance(pmf, empirical_pmf(samples, 3, 2)) < 0.01


@pytest.mark.parametrize("m, n", [(m, n) for m in range(1, 5) for n in range(1, 4) if n <= m])
def test_exactness_sweep(m, n):
    failures = 0
    for t in range(20):
        a = haar_unitary(m, stream(1000 + 10 * m + n, t))
        samples = sample_many(a, n, 50_000, stream(2000 + 10 * m + n, t))
        failures += chi_square_test(exact_pmf(a, n), samples).pvalue <= 0.001
    assert failures <= 1


def test_prefix_distribution():
    # after stage 2 the sorted first two rows follow the k=2 pmf of the matrix made of
    # the first two permuted columns; this holds given which columns come first,
    # averaged over their order (fixing the order as well breaks it, see below)
    m, n = 3, 3
    a = haar_unitary(m, stream(314))
    rng = stream(315)
    by_set, by_order = {}, {}
    for _ in range(30_000):
        _, trace = sample_single(a, n, rng, return_trace=True)
        rows = sorted(trace.rows[:2])
        by_set.setdefault(frozenset(trace.permutation[:2]), []).append(rows)
        by_order.setdefault(trace.permutation[:2], []).append(rows)
    assert len(by_set) == 3
    pvalues = [chi_square_test(exact_pmf(a[:, sorted(cols)], 2), np.array(rows)).pvalue
               for cols, rows in by_set.items()]
    # Bonferroni over the three column sets
    assert min(pvalues) > 0.001 / 3
    pvalues = [chi_square_test(exact_pmf(a[:, list(cols)], 2), np.array(rows)).pvalue
               for cols, rows in by_order.items()]
    assert max(pvalues) < 1e-6


def test_column_permutation_is_uniform(rng):
    a = haar_unitary(3, rng)
    perms = Counter(sample_single(a, 3, rng, return_trace=True)[1].permutation
                    for _ in range(12_000))
    assert len(perms) == 6
    assert stats.chisquare(list(perms.values())).pvalue > 0.001
