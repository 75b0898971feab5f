"""Operation-count benchmark against the average-case cost model.

Each sample uses a fresh Haar unitary, so means are taken over both the
matrix and the sampler's randomness. The headline statistic is the Guan
walk length ``prod(s + 1)`` of the final multiset, i.e. the tuple count
for the permanent of the sampled ``n x n`` matrix, whose Haar average is
``C(2m + n - 1, n) / C(m + n - 1, n)``.
"""

from __future__ import annotations

import csv
import math
import time
from typing import IO, Iterable, NamedTuple

import numpy as np

from .haar import haar_unitary, stream
from .sampler import operation_counter, sample_single
from .verification import average_complexity_sum, expected_multiplicity_product

__all__ = ["BenchRow", "bench_point", "bench_sweep", "write_csv", "CSV_COLUMNS"]

CSV_COLUMNS = ("m", "n", "samples", "mean_walk", "stderr_walk", "predicted_walk",
               "mean_cost", "predicted_cost", "seconds_per_sample")


class BenchRow(NamedTuple):
    m: int
    n: int
    samples: int
    mean_walk: float  # mean prod(s + 1) of the final multiset
    stderr_walk: float
    predicted_walk: float
    mean_cost: float  # mean sum_k k * prod(s^(k) + 1)
    predicted_cost: float
    seconds_per_sample: float


def bench_point(m: int, n: int, count: int, seed: int) -> BenchRow | None:
    """Run ``count`` samples at ``(m, n)``; ``None`` when ``count == 0``."""
    if count < 1:
        return None
    walks = np.empty(count)
    costs = np.empty(count)
    elapsed = 0.0
    for i in range(count):
        rng = stream(seed, m, n, i)
        a = haar_unitary(m, rng)
        start = time.perf_counter()
        _, trace = sample_single(a, n, rng, return_trace=True)
        elapsed += time.perf_counter() - start
        stages = operation_counter(trace)
        walks[i] = stages[-1].cost_term
        costs[i] = sum(st.stage * st.cost_term for st in stages)
    se = walks.std(ddof=1) / math.sqrt(count) if count > 1 else math.nan
    return BenchRow(m, n, count, float(walks.mean()), float(se),
                    float(expected_multiplicity_product(m, n)), float(costs.mean()),
                    float(average_complexity_sum(m, n).closed_form), elapsed / count)


def bench_sweep(points: Iterable[tuple[int, int]], count: int, seed: int) -> list[BenchRow]:
    rows = []
    for m, n in points:
        row = bench_point(m, n, count, seed)
        if row is not None:
            rows.append(row)
    return rows


def write_csv(fh: IO[str], rows: Iterable[BenchRow]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([f"{v:.10g}" if isinstance(v, float) else v for v in row])
