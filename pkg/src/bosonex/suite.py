"""Pass/fail verification suites used by ``bosonex verify``.

``identities`` needs no randomness: exact counting identities only.
``statistical`` runs Monte Carlo checks at one ``(m, n)`` under a seed.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .combinatorics import guan_steps, multichoose
from .haar import haar_unitary, stream
from .sampler import sample_batch
from .verification import (asymptotic_growth_constant, average_complexity_sum,
                           chi_square_test, empirical_pmf, enumerated_multiplicity_product,
                           exact_pmf, expected_multiplicity_product, marginal_uniformity_check,
                           tv_distance)

__all__ = ["CheckResult", "identity_checks", "statistical_checks", "run_suite", "format_report"]

SUITES = ("all", "identities", "statistical")


class CheckResult(NamedTuple):
    name: str
    statistic: float
    threshold: float
    passed: bool

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"{self.name}\t{self.statistic:.6g}\t{self.threshold:.6g}\t{verdict}"


def _guan_defects(radices) -> int:
    """Count violations of the visit-once, single +-1 step property."""
    it = guan_steps([r - 1 for r in radices])
    seen = {tuple(it.current)}
    prev = tuple(it.current)
    bad = 0
    for _ in it:
        cur = tuple(it.current)
        diff = [abs(a - b) for a, b in zip(cur, prev)]
        bad += sum(diff) != 1 or cur in seen
        seen.add(cur)
        prev = cur
    return bad + (len(seen) != math.prod(radices))


def identity_checks(max_mn: int = 8, max_sum: int = 30) -> list[CheckResult]:
    results = []

    mismatches = sum(
        enumerated_multiplicity_product(m, n) != expected_multiplicity_product(m, n)
        for m in range(1, max_mn + 1) for n in range(1, max_mn + 1)
    )
    results.append(CheckResult("multiplicity_product_enumeration", mismatches, 0, mismatches == 0))

    spot = expected_multiplicity_product(2, 2)
    results.append(CheckResult("multiplicity_product_m2_n2", float(spot), 10 / 3,
                               spot == Fraction(10, 3)))

    worst = 0.0
    for m in range(1, max_sum + 1):
        for n in range(1, max_sum + 1):
            direct, closed = average_complexity_sum(m, n)
            worst = max(worst, float(abs(direct - closed) / direct))
    results.append(CheckResult("complexity_sum_closed_form", worst, 1e-12, worst <= 1e-12))

    rho = asymptotic_growth_constant(1)
    results.append(CheckResult("growth_constant_theta1", rho, 27 / 16, rho == 1.6875))

    defects = sum(_guan_defects(r) for r in [(2, 3), (2, 2, 2), (3, 1, 4), (4, 3, 2, 2), (5,)])
    results.append(CheckResult("guan_walk_visits_once", defects, 0, defects == 0))
    return results


def statistical_checks(m: int, n: int, seed: int, matrix=None, count: int | None = None,
                       num_matrices: int = 5000) -> list[CheckResult]:
    """Normalisation, marginal uniformity and sampler fit at ``(m, n)``.

    ``matrix`` replaces the Haar draw used for the sampler check. ``count``
    defaults to enough samples that sampling noise sits well below the
    0.01 total variation threshold.
    """
    results = []
    size = multichoose(m, n)

    worst = 0.0
    for t in range(20):
        u = haar_unitary(m, stream(seed, 0, t))
        worst = max(worst, abs(exact_pmf(u, n).total() - 1.0))
    if matrix is not None:
        worst = max(worst, abs(exact_pmf(matrix, n).total() - 1.0))
    results.append(CheckResult("pmf_normalisation", worst, 1e-9, worst <= 1e-9))

    est = marginal_uniformity_check(m, n, num_matrices, stream(seed, 1, 0))
    target = float(est.target)
    zscore = max(abs(est.mean[z] - target) / est.stderr[z] for z in est.mean)
    results.append(CheckResult("marginal_uniformity_max_z", zscore, 4.0, zscore < 4.0))

    a = matrix if matrix is not None else haar_unitary(m, stream(seed, 2, 0))
    count = count or max(100_000, 10_000 * size)
    samples = sample_batch(a, n, count, seed)
    pmf = exact_pmf(a, n)
    tv = tv_distance(pmf, empirical_pmf(samples, m, n))
    results.append(CheckResult("sampler_tv_distance", tv, 0.01, tv < 0.01))
    pvalue = float(chi_square_test(pmf, samples).pvalue)
    results.append(CheckResult("sampler_chi_square_pvalue", pvalue, 0.001, pvalue > 0.001))
    return results


def run_suite(suite: str, m: int, n: int, seed: int, matrix=None,
              count: int | None = None) -> list[CheckResult]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    results = []
    if suite in ("all", "identities"):
        results += identity_checks()
    if suite in ("all", "statistical"):
        results += statistical_checks(m, n, seed, matrix=np.asarray(matrix) if matrix is not None
                                      else None, count=count)
    return results


def format_report(results: list[CheckResult]) -> str:
    return "".join(r.line() + "\n" for r in results)
