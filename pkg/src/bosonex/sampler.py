"""Exact boson sampling by sequential conditional sampling of rows.

A sample consumes ``2n`` uniforms from its random source, in one
``rng.random(2 * n)`` call: the first ``n`` are sort keys that fix a
uniformly random permutation of the ``n`` input columns, the remaining
``n`` drive the stage-by-stage index draws. Batch sampling gives sample
``i`` the generator :func:`bosonex.haar.stream` ``(seed, i)``, so any
index range can be regenerated on its own and thread count never changes
the output.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels
from .combinatorics import OutcomeMultiset, multiset_from_rows
from .haar import stream
from .permanent import DimensionError

__all__ = [
    "SamplingError",
    "SamplerTrace",
    "StageCount",
    "sample_from_weights",
    "sample_single",
    "sample_many",
    "sample_batch",
    "operation_counter",
]


class SamplingError(RuntimeError):
    """Stage weights collapsed; not a valid state for unitary input."""

    def __init__(self, stage: int, index: int | None = None):
        where = f"stage {stage}" if index is None else f"sample {index}, stage {stage}"
        super().__init__(f"all weights numerically zero or invalid at {where}")
        self.stage = stage
        self.index = index


@dataclass(frozen=True)
class SamplerTrace:
    """Record of one sampler run.

    ``rows`` are the 1-based chosen rows in draw order, ``weights[k - 1]``
    the unnormalised weights of stage ``k``, ``walks[k - 1]`` the number of
    tuples its Guan walk visited (0 at stage 1, which has no walk).
    """

    m: int
    rows: tuple[int, ...]
    permutation: tuple[int, ...]
    weights: np.ndarray
    walks: tuple[int, ...]

    def multiplicities(self, k: int) -> tuple[int, ...]:
        """Multiplicity array of the first ``k`` rows."""
        return multiset_from_rows(self.rows[:k], self.m).s


class StageCount(NamedTuple):
    stage: int
    walk_length: int  # tuples visited computing the stage's minors
    cost_term: int  # prod(s + 1) over the first `stage` rows
    laplace_ops: int  # m * stage multiply-adds for the weights


def sample_from_weights(w, rng: np.random.Generator) -> int:
    """Draw a 1-based index with probability proportional to ``w``.

    Negative entries down to ``-1e-12 * max(w)`` are rounding noise and
    count as zero; anything more negative, or an all-zero array, raises.
    """
    w = np.array(w, dtype=np.float64).reshape(-1)
    if w.size == 0 or not np.all(np.isfinite(w)):
        raise ValueError("weights must be a non-empty finite array")
    i = _kernels.pick_index(w, rng.random())
    if i < 0:
        raise ValueError("weights are all zero or significantly negative")
    return i + 1


def _prepare(a, n: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2:
        raise DimensionError("expected a 2-d matrix")
    if not 1 <= n <= a.shape[1] or n > a.shape[0]:
        raise DimensionError(f"need 1 <= n <= m; got n={n} for a {a.shape} matrix")
    return np.ascontiguousarray(a[:, :n])


def sample_single(a, n: int, rng: np.random.Generator, *, return_trace: bool = False,
                  compensated: bool = False):
    """Draw one multiset ``z`` from the boson sampling pmf of ``a``.

    ``a`` is an ``m x m`` unitary, or any ``m x n'`` matrix with ``n' >= n``;
    only the first ``n`` columns are used.

    Returns an :class:`OutcomeMultiset`, plus a :class:`SamplerTrace` when
    ``return_trace`` is set.
    """
    a = _prepare(a, n)
    m = a.shape[0]
    u = rng.random(2 * n)
    perm = np.argsort(u[:n])
    ap = np.ascontiguousarray(a[:, perm])
    rows = np.empty(n, dtype=np.int64)
    weights = np.empty((n, m), dtype=np.float64)
    walks = np.empty(n, dtype=np.int64)
    stage = _kernels.draw_rows(ap, u[n:], rows, weights, walks, compensated)
    if stage:
        raise SamplingError(stage)
    z = multiset_from_rows(rows + 1, m)
    if not return_trace:
        return z
    trace = SamplerTrace(m, tuple(int(v) + 1 for v in rows), tuple(int(v) for v in perm),
                         weights, tuple(int(v) for v in walks))
    return z, trace


def _draw(a, uniforms, compensated, first_index=0):
    rows, status = _kernels.draw_many(a, uniforms, compensated)
    bad = np.flatnonzero(status)
    if bad.size:
        raise SamplingError(int(status[bad[0]]), first_index + int(bad[0]))
    rows.sort(axis=1)
    return rows + 1


def sample_many(a, n: int, count: int, rng: np.random.Generator, *,
                compensated: bool = False) -> np.ndarray:
    """``count`` samples drawn from one generator.

    Returns a ``(count, n)`` int array; each row is a sorted 1-based ``z``.
    Equivalent to calling :func:`sample_single` ``count`` times on ``rng``.
    """
    a = _prepare(a, n)
    if count < 0:
        raise ValueError("count must be non-negative")
    return _draw(a, rng.random((count, 2 * n)), compensated)


def sample_batch(a, n: int, count: int, seed: int, *, start: int = 0, threads: int = 1,
                 compensated: bool = False) -> np.ndarray:
    """Samples ``start .. start + count - 1`` under ``seed``.

    Sample ``i`` uses generator ``stream(seed, i)`` and nothing else, so the
    result is independent of ``threads`` and of how index ranges are split.
    Returns a ``(count, n)`` int array of sorted 1-based rows.
    """
    a = _prepare(a, n)
    if count < 1:
        raise ValueError("count must be at least 1")
    uniforms = np.empty((count, 2 * n))
    for t in range(count):
        uniforms[t] = stream(seed, start + t).random(2 * n)
    threads = max(1, min(int(threads), count))
    if threads == 1:
        return _draw(a, uniforms, compensated, start)
    bounds = np.linspace(0, count, threads + 1).astype(int)
    with ThreadPoolExecutor(threads) as pool:
        parts = pool.map(lambda lo, hi: _draw(a, uniforms[lo:hi], compensated, start + lo),
                         bounds[:-1], bounds[1:])
        return np.concatenate(list(parts))


def operation_counter(trace: SamplerTrace) -> list[StageCount]:
    """Per-stage work of a traced run.

    ``walk_length`` at stage ``k`` is ``prod(s + 1)`` over the first
    ``k - 1`` rows, the Guan walk that produced the stage's minors.
    ``cost_term`` is the same product over the first ``k`` rows, the
    quantity that enters the total operation count.
    """
    counts = []
    for k in range(1, len(trace.rows) + 1):
        walk = 0 if k == 1 else math.prod(c + 1 for c in trace.multiplicities(k - 1))
        cost = math.prod(c + 1 for c in trace.multiplicities(k))
        counts.append(StageCount(k, walk, cost, trace.m * k))
    return counts
