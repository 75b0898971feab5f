"""Plain-text formats for matrices, samples and pmf tables.

Matrix::

    3 2
    0.1,-0.2 0.5,0
    ...

One header line ``rows cols``, then one line per row of ``re,im`` pairs
separated by spaces. Values are written with 17 significant digits so a
write/read round trip is exact.

Samples::

    # m=3 n=3 seed=7
    1 2 2
    ...

Pmf table: one line ``z_1 ... z_n<TAB>probability`` per multiset,
lexicographic in ``z``.
"""

from __future__ import annotations

import os
from typing import IO, Iterable, Sequence, Union

import numpy as np

__all__ = [
    "MatrixFormatError",
    "format_real",
    "format_matrix",
    "parse_matrix",
    "read_matrix",
    "write_matrix",
    "format_samples",
    "parse_samples",
    "format_pmf",
    "parse_pmf",
]

PathOrFile = Union[str, os.PathLike, IO[str]]


class MatrixFormatError(ValueError):
    """Malformed matrix text; ``lineno`` is 1-based."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def format_real(x: float) -> str:
    x = float(x) + 0.0  # no "-0"
    return f"{x:.17g}"


def format_matrix(a: np.ndarray) -> str:
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    lines = [f"{a.shape[0]} {a.shape[1]}"]
    for row in a:
        lines.append(" ".join(f"{format_real(v.real)},{format_real(v.imag)}" for v in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise MatrixFormatError(1, "missing 'rows cols' header")
    head = lines[0].split()
    try:
        rows, cols = (int(v) for v in head)
    except ValueError:
        raise MatrixFormatError(1, f"bad header {lines[0]!r}") from None
    if rows < 0 or cols < 0:
        raise MatrixFormatError(1, "negative dimension")
    body = lines[1:]
    while body and not body[-1].strip():
        body.pop()
    if len(body) != rows:
        # first missing or first surplus line
        raise MatrixFormatError(min(len(body), rows) + 2, f"expected {rows} rows, found {len(body)}")
    a = np.empty((rows, cols), dtype=np.complex128)
    for i, line in enumerate(body):
        lineno = i + 2
        fields = line.split()
        if len(fields) != cols:
            raise MatrixFormatError(lineno, f"expected {cols} entries, found {len(fields)}")
        for j, field in enumerate(fields):
            parts = field.split(",")
            if len(parts) != 2:
                raise MatrixFormatError(lineno, f"entry {field!r} is not 're,im'")
            try:
                re, im = float(parts[0]), float(parts[1])
            except ValueError:
                raise MatrixFormatError(lineno, f"entry {field!r} is not numeric") from None
            if not (np.isfinite(re) and np.isfinite(im)):
                raise MatrixFormatError(lineno, f"entry {field!r} is not finite")
            a[i, j] = complex(re, im)
    return a


def read_matrix(src: PathOrFile) -> np.ndarray:
    if hasattr(src, "read"):
        return parse_matrix(src.read())
    with open(src) as fh:
        return parse_matrix(fh.read())


def write_matrix(dst: PathOrFile, a: np.ndarray) -> None:
    text = format_matrix(a)
    if hasattr(dst, "write"):
        dst.write(text)
    else:
        with open(dst, "w") as fh:
            fh.write(text)


def format_samples(samples: Iterable[Sequence[int]], m: int, n: int, seed: int) -> str:
    lines = [f"# m={m} n={n} seed={seed}"]
    lines.extend(" ".join(str(v) for v in z) for z in samples)
    return "\n".join(lines) + "\n"


def parse_samples(text: str) -> tuple[dict, list[tuple[int, ...]]]:
    """Returns the header fields and the list of samples."""
    lines = text.splitlines()
    if not lines or not lines[0].startswith("#"):
        raise ValueError("missing '# m=.. n=.. seed=..' header")
    header = {}
    for item in lines[0][1:].split():
        key, _, value = item.partition("=")
        header[key] = int(value)
    samples = [tuple(int(v) for v in line.split()) for line in lines[1:] if line.strip()]
    return header, samples


def format_pmf(table: dict[tuple[int, ...], float]) -> str:
    return "".join(
        f"{' '.join(str(v) for v in z)}\t{format_real(p)}\n" for z, p in sorted(table.items())
    )


def parse_pmf(text: str) -> dict[tuple[int, ...], float]:
    table = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        z, _, p = line.partition("\t")
        table[tuple(int(v) for v in z.split())] = float(p)
    return table
