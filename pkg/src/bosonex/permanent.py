"""Matrix permanents: brute force, Gray-code Ryser and repeated-row Ryser.

Repeated-row matrices are described by a base matrix of distinct rows and
a multiplicity array ``s``; the expanded matrix stacks row ``v`` of the
base ``s[v]`` times. Its permanent costs ``O(k * prod(s + 1))`` instead of
``O(k * 2**k)``.

Double precision is adequate up to ``k`` of about 30. Ryser-type sums
cancel heavily; every kernel accepts ``compensated=True`` to switch the
outer accumulator to Kahan summation, which removes accumulation error
but not the cancellation already present in the individual terms.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import _kernels

__all__ = [
    "DimensionError",
    "expand_rows",
    "permanent_naive",
    "permanent_ryser",
    "permanent_repeated",
    "minor_permanents",
    "laplace_permanent",
]

NAIVE_MAX = 10
RYSER_MAX = 30


class DimensionError(ValueError):
    """Matrix shapes or multiplicities do not fit together."""


def _as_matrix(b) -> np.ndarray:
    b = np.asarray(b, dtype=np.complex128)
    if b.ndim != 2:
        raise DimensionError(f"expected a 2-d matrix, got shape {b.shape}")
    if not np.all(np.isfinite(b)):
        raise ValueError("matrix has non-finite entries")
    return b


def _as_square(b) -> np.ndarray:
    b = _as_matrix(b)
    if b.shape[0] != b.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {b.shape}")
    return b


def _repeated_args(base, s, total: int | None = None):
    base = _as_matrix(base)
    s = np.asarray(s, dtype=np.int64).reshape(-1)
    if s.shape[0] != base.shape[0]:
        raise DimensionError(f"{s.shape[0]} multiplicities for {base.shape[0]} rows")
    if np.any(s < 0):
        raise ValueError("multiplicities must be non-negative")
    want = base.shape[1] if total is None else total
    if int(s.sum()) != want:
        raise DimensionError(f"multiplicities sum to {int(s.sum())}, expected {want}")
    keep = s > 0
    return np.ascontiguousarray(base[keep]), np.ascontiguousarray(s[keep])


def expand_rows(base, s) -> np.ndarray:
    """Stack row ``v`` of ``base`` ``s[v]`` times."""
    base = _as_matrix(base)
    return np.repeat(base, np.asarray(s, dtype=np.int64), axis=0)


def permanent_naive(b) -> complex:
    """Permanent by summing over all permutations. Oracle use only (k <= 10)."""
    b = _as_square(b)
    k = b.shape[0]
    if k > NAIVE_MAX:
        raise ValueError(f"naive permanent refused for k={k} > {NAIVE_MAX}")
    rows = np.arange(k)
    total = 0j
    for sigma in itertools.permutations(range(k)):
        total += np.prod(b[rows, sigma])
    return complex(total)


def permanent_ryser(b, *, compensated: bool = False) -> complex:
    """Permanent by Ryser's formula with a binary Gray code, ``O(k 2^k)``."""
    b = _as_square(b)
    k = b.shape[0]
    if k > RYSER_MAX:
        raise ValueError(f"Ryser permanent supports k <= {RYSER_MAX}, got {k}")
    return complex(_kernels.ryser_gray(np.ascontiguousarray(b), compensated))


def permanent_repeated(base, s, *, compensated: bool = False, with_steps: bool = False):
    """Permanent of the matrix built by repeating row ``v`` of ``base`` ``s[v]`` times.

    Parameters
    ----------
    base : (m, k) array_like
        Distinct rows.
    s : (m,) array_like of int
        Row multiplicities, summing to ``k``. Zero entries drop the row.
    compensated : bool
        Use Kahan summation for the outer sum.
    with_steps : bool
        Also return the number of Guan steps taken, ``prod(s + 1) - 1``.

    Returns
    -------
    complex, or (complex, int) when ``with_steps`` is set.
    """
    a, s = _repeated_args(base, s)
    value, steps = _kernels.repeated_ryser(a, s, compensated)
    value = complex(value)
    return (value, int(steps)) if with_steps else value


def minor_permanents(base, s, *, compensated: bool = False, with_steps: bool = False):
    """Permanents of every column-deleted minor of a ``(k-1) x k`` repeated-row matrix.

    ``base`` is ``m x k`` and ``s`` sums to ``k - 1``. Entry ``l`` of the
    result is the permanent after deleting column ``l``. All ``k`` values
    come from one Guan walk, at the cost of a single permanent.
    """
    base = _as_matrix(base)
    k = base.shape[1]
    if k < 1:
        raise DimensionError("need at least one column")
    a, s = _repeated_args(base, s, total=k - 1)
    values, steps = _kernels.repeated_minors(a, s, compensated)
    return (values, int(steps)) if with_steps else values


def laplace_permanent(row, minors) -> complex:
    """Laplace expansion along one row: ``sum(row[l] * minors[l])``."""
    row = np.asarray(row, dtype=np.complex128).reshape(-1)
    minors = np.asarray(minors, dtype=np.complex128).reshape(-1)
    if row.shape != minors.shape:
        raise DimensionError(f"row has {row.shape[0]} entries, minors {minors.shape[0]}")
    return complex(np.dot(row, minors))

