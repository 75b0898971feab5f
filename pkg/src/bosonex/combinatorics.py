"""Multisets of output modes, counting identities and Gray/Guan code walks.

Outcome indices are 1-based (mode ``1`` .. ``m``) wherever they describe
a physical output mode. Coordinates of a multiplicity array, as emitted by
the Gray code iterators, are plain 0-based Python positions.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

__all__ = [
    "OutcomeMultiset",
    "MixedRadixGrayIterator",
    "BinaryGrayIterator",
    "multiset_from_rows",
    "multiset_from_counts",
    "enumerate_multisets",
    "guan_steps",
    "gray_steps",
    "multichoose",
    "multiplicity_product",
]


@dataclass(frozen=True)
class OutcomeMultiset:
    """A size-``n`` multiset over ``[m]``.

    Attributes
    ----------
    z : tuple of int
        Elements in non-decreasing order, each in ``1..m``.
    s : tuple of int
        Multiplicities; ``s[j - 1]`` counts occurrences of mode ``j``.
    mu : int
        Product of the factorials of ``s``.
    """

    z: tuple[int, ...]
    s: tuple[int, ...]
    mu: int

    @property
    def m(self) -> int:
        return len(self.s)

    @property
    def n(self) -> int:
        return len(self.z)

    def __str__(self) -> str:
        return " ".join(str(v) for v in self.z)


def _mu(s: Sequence[int]) -> int:
    return math.prod(math.factorial(c) for c in s)


def multiset_from_rows(r: Sequence[int], m: int) -> OutcomeMultiset:
    """Sort a sequence of 1-based row indices into an :class:`OutcomeMultiset`.

    >>> multiset_from_rows((2, 1, 2), 3)
    OutcomeMultiset(z=(1, 2, 2), s=(1, 2, 0), mu=2)
    """
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    s = [0] * m
    for v in r:
        v = int(v)
        if not 1 <= v <= m:
            raise ValueError(f"row index {v} outside [1, {m}]")
        s[v - 1] += 1
    z = tuple(sorted(int(v) for v in r))
    return OutcomeMultiset(z, tuple(s), _mu(s))


def multiset_from_counts(s: Sequence[int]) -> OutcomeMultiset:
    """Build the multiset whose multiplicity array is ``s``."""
    s = tuple(int(c) for c in s)
    if any(c < 0 for c in s):
        raise ValueError("multiplicities must be non-negative")
    z = tuple(j + 1 for j, c in enumerate(s) for _ in range(c))
    return OutcomeMultiset(z, s, _mu(s))


def enumerate_multisets(m: int, n: int) -> Iterator[OutcomeMultiset]:
    """Yield every size-``n`` multiset over ``[m]`` in lexicographic order of ``z``."""
    if m < 1 or n < 0:
        raise ValueError(f"need m >= 1 and n >= 0, got m={m}, n={n}")
    for z in itertools.combinations_with_replacement(range(1, m + 1), n):
        s = [0] * m
        for v in z:
            s[v - 1] += 1
        yield OutcomeMultiset(z, tuple(s), _mu(s))


def multichoose(m: int, n: int) -> int:
    """Number of size-``n`` multisets over ``[m]``, ``C(m + n - 1, n)``."""
    if m < 1 or n < 0:
        raise ValueError(f"need m >= 1 and n >= 0, got m={m}, n={n}")
    return math.comb(m + n - 1, n)


def multiplicity_product(s: Sequence[int]) -> int:
    """``prod(s_v + 1)``, the number of tuples a Guan walk over ``s`` visits."""
    return math.prod(int(c) + 1 for c in s)


class MixedRadixGrayIterator:
    """Reflected mixed-radix Gray code over ``0 <= r[v] <= s[v]``.

    Iterating yields ``(v, delta)`` steps with ``delta`` in ``{+1, -1}``;
    ``current`` holds the tuple reached after the latest step. The walk
    starts at all zeros and visits each of the ``prod(s[v] + 1)`` tuples
    exactly once. Coordinates with ``s[v] == 0`` never move.

    Loopless: uses focus pointers, so every step costs O(1).
    """

    def __init__(self, s: Sequence[int]):
        s = [int(c) for c in s]
        if any(c < 0 for c in s):
            raise ValueError("multiplicities must be non-negative")
        self.radices = [c + 1 for c in s]
        self.current = [0] * len(s)
        # only radices >= 2 take part in the walk
        self._active = [v for v, c in enumerate(s) if c > 0]
        na = len(self._active)
        self._direction = [1] * na
        self._focus = list(range(na + 1))

    def __iter__(self) -> "MixedRadixGrayIterator":
        return self

    def __next__(self) -> tuple[int, int]:
        focus = self._focus
        na = len(self._active)
        j = focus[0]
        focus[0] = 0
        if j == na:
            # keep raising on later calls
            focus[0] = na
            raise StopIteration
        v = self._active[j]
        d = self._direction[j]
        self.current[v] += d
        r = self.current[v]
        if r == 0 or r == self.radices[v] - 1:
            self._direction[j] = -d
            focus[j] = focus[j + 1]
            focus[j + 1] = j + 1
        return v, d


class BinaryGrayIterator:
    """Binary reflected Gray code over the subsets of ``[k]``.

    Yields ``(i, delta)``: element ``i`` (0-based) enters the subset when
    ``delta == +1`` and leaves when ``delta == -1``. ``2**k - 1`` steps.
    """

    def __init__(self, k: int):
        if k < 0:
            raise ValueError("k must be non-negative")
        self.k = k
        self.step = 0
        self.current = [0] * k

    def __iter__(self) -> "BinaryGrayIterator":
        return self

    def __next__(self) -> tuple[int, int]:
        if self.step >= (1 << self.k) - 1:
            raise StopIteration
        self.step += 1
        # the bit that flips between gray(step - 1) and gray(step)
        i = (self.step & -self.step).bit_length() - 1
        self.current[i] ^= 1
        return i, 1 if self.current[i] else -1


def guan_steps(s: Sequence[int]) -> MixedRadixGrayIterator:
    """Steps of a Guan-code walk over all tuples ``0 <= r <= s``."""
    return MixedRadixGrayIterator(s)


def gray_steps(k: int) -> BinaryGrayIterator:
    """Steps of a binary Gray-code walk over all subsets of ``[k]``."""
    return BinaryGrayIterator(k)
