"""Brute-force oracles and statistical checks for the sampler and cost model.

Counting identities are evaluated in exact rational arithmetic
(:class:`fractions.Fraction`); Monte Carlo is used only for statements
that are expectations over Haar random unitaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple

import numpy as np
import scipy.stats

from .combinatorics import enumerate_multisets, multichoose, multiplicity_product
from .haar import haar_unitary
from .permanent import permanent_repeated

__all__ = [
    "StateSpaceTooLarge",
    "PmfTable",
    "exact_pmf",
    "empirical_pmf",
    "tv_distance",
    "chi_square_test",
    "MarginalEstimate",
    "marginal_uniformity_check",
    "expected_multiplicity_product",
    "enumerated_multiplicity_product",
    "asymptotic_growth_constant",
    "asymptotic_prefactor",
    "ComplexitySum",
    "average_complexity_sum",
    "haar_moment",
]

MAX_STATES = 10**6


class StateSpaceTooLarge(ValueError):
    pass


@dataclass
class PmfTable:
    """Probabilities over size-``n`` multisets of ``[m]``, keyed by sorted ``z``.

    Missing keys have probability zero.
    """

    m: int
    n: int
    probs: dict[tuple[int, ...], float] = field(default_factory=dict)

    def __getitem__(self, z) -> float:
        return self.probs.get(tuple(z), 0.0)

    def total(self) -> float:
        return math.fsum(self.probs.values())

    def support(self) -> list[tuple[int, ...]]:
        return [ms.z for ms in enumerate_multisets(self.m, self.n)]


def exact_pmf(a, n: int) -> PmfTable:
    """``|Per A_z|^2 / mu(z)`` for every multiset ``z``, using the first ``n`` columns."""
    a = np.asarray(a, dtype=np.complex128)
    m = a.shape[0]
    size = multichoose(m, n)
    if size > MAX_STATES:
        raise StateSpaceTooLarge(f"{size} multisets for m={m}, n={n}; limit is {MAX_STATES}")
    cols = a[:, :n]
    probs = {}
    for ms in enumerate_multisets(m, n):
        per = permanent_repeated(cols, ms.s)
        probs[ms.z] = (per.real**2 + per.imag**2) / ms.mu
    return PmfTable(m, n, probs)


def empirical_pmf(samples: Iterable, m: int, n: int) -> PmfTable:
    """Relative frequencies of sampled multisets (rows of sorted 1-based indices)."""
    counts: dict[tuple[int, ...], int] = {}
    total = 0
    for z in samples:
        key = tuple(int(v) for v in z)
        counts[key] = counts.get(key, 0) + 1
        total += 1
    if total == 0:
        raise ValueError("no samples")
    return PmfTable(m, n, {z: c / total for z, c in counts.items()})


def tv_distance(p: PmfTable, q: PmfTable) -> float:
    """Total variation distance ``sum |p - q| / 2``."""
    if (p.m, p.n) != (q.m, q.n):
        raise ValueError(f"support mismatch: (m, n) = {(p.m, p.n)} vs {(q.m, q.n)}")
    keys = set(p.probs) | set(q.probs)
    return 0.5 * math.fsum(abs(p[z] - q[z]) for z in keys)


def chi_square_test(p: PmfTable, samples, min_expected: float = 5.0):
    """Pearson goodness of fit of ``samples`` against ``p``.

    Cells with expected count below ``min_expected`` are pooled into one.
    Returns scipy's ``(statistic, pvalue)``; with a single cell left the
    fit is trivially perfect (statistic 0, p-value 1).
    """
    samples = np.asarray(samples)
    total = samples.shape[0]
    emp = empirical_pmf(samples, p.m, p.n)
    observed, expected = [], []
    pooled_obs = pooled_exp = 0.0
    for z in p.support():
        e = p[z] * total
        o = emp[z] * total
        if e < min_expected:
            pooled_obs += o
            pooled_exp += e
        else:
            observed.append(o)
            expected.append(e)
    if pooled_exp > 0:
        observed.append(pooled_obs)
        expected.append(pooled_exp)
    observed = np.array(observed)
    expected = np.array(expected)
    if observed.size < 2:
        # a single cell always fits
        return scipy.stats.chisquare([1.0, 1.0])
    # absorb normalisation rounding so scipy's sum check passes
    expected *= observed.sum() / expected.sum()
    return scipy.stats.chisquare(observed, expected)


@dataclass
class MarginalEstimate:
    m: int
    n: int
    num_matrices: int
    mean: dict[tuple[int, ...], float]
    stderr: dict[tuple[int, ...], float]

    @property
    def target(self) -> Fraction:
        return Fraction(1, multichoose(self.m, self.n))


def marginal_uniformity_check(m: int, n: int, num_matrices: int,
                              rng: np.random.Generator) -> MarginalEstimate:
    """Monte Carlo mean and standard error of ``q(z|A)`` over Haar ``A``."""
    if num_matrices < 1:
        raise ValueError("num_matrices must be positive")
    keys = [ms.z for ms in enumerate_multisets(m, n)]
    values = np.empty((num_matrices, len(keys)))
    for t in range(num_matrices):
        pmf = exact_pmf(haar_unitary(m, rng), n)
        values[t] = [pmf[z] for z in keys]
    mean = values.mean(axis=0)
    if num_matrices > 1:
        se = values.std(axis=0, ddof=1) / math.sqrt(num_matrices)
    else:
        se = np.full(len(keys), np.nan)
    return MarginalEstimate(m, n, num_matrices, dict(zip(keys, mean.tolist())),
                            dict(zip(keys, se.tolist())))


def expected_multiplicity_product(m: int, n: int) -> Fraction:
    """Mean of ``prod(s + 1)`` over uniformly drawn multiplicity arrays, closed form."""
    if m < 1 or n < 1:
        raise ValueError("need m, n >= 1")
    return Fraction(math.comb(2 * m + n - 1, n), math.comb(m + n - 1, n))


def enumerated_multiplicity_product(m: int, n: int) -> Fraction:
    """Same mean by walking every multiset; exact."""
    total = sum(multiplicity_product(ms.s) for ms in enumerate_multisets(m, n))
    return Fraction(total, multichoose(m, n))


def asymptotic_growth_constant(theta: float) -> float:
    """Per-photon growth base of the mean Guan walk length when ``m = theta * n``."""
    if theta < 1:
        raise ValueError("theta must be >= 1")
    # regrouped so large theta does not overflow
    return (1 + 1 / (4 * theta * (theta + 1))) ** theta * (2 * theta + 1) / (theta + 1)


def asymptotic_prefactor(theta: float) -> float:
    return math.sqrt(2 * (theta + 1) / (2 * theta + 1))


class ComplexitySum(NamedTuple):
    direct: Fraction
    closed_form: Fraction


def average_complexity_sum(m: int, n: int) -> ComplexitySum:
    """``sum_k k * E prod(s^(k) + 1)`` for ``k = 1..n``, summed and in closed form."""
    if m < 1 or n < 1:
        raise ValueError("need m, n >= 1")
    direct = sum(k * expected_multiplicity_product(m, k) for k in range(1, n + 1))
    closed = (Fraction((n * (m + 1) - m + 1) * (m + n), (m + 1) * (m + 2))
              * Fraction(math.comb(2 * m + n, n + 1), math.comb(m + n, n + 1))
              + Fraction(2 * m * (m - 1), (m + 1) * (m + 2)))
    return ComplexitySum(Fraction(direct), closed)


def haar_moment(m: int, n: int) -> Fraction:
    """``E |A_11|^(2n)`` for an ``m``-dimensional Haar unitary."""
    return Fraction(math.factorial(n), math.prod(range(m, m + n)))
