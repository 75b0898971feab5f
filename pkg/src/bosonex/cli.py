"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
The seed comes from ``--seed``, else ``$BOSONEX_SEED``, else 0. When no
matrix file is given the input is ``haar_unitary(m, stream(seed))``.
"""

from __future__ import annotations

import argparse
import os
import sys
from contextlib import contextmanager

import numpy as np

from . import formats
from .bench import bench_sweep, write_csv
from .haar import haar_unitary, stream
from .permanent import permanent_repeated, permanent_ryser
from .sampler import SamplingError, sample_batch
from .suite import SUITES, format_report, run_suite
from .verification import exact_pmf

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _seed(value) -> int:
    if value is None:
        value = os.environ.get("BOSONEX_SEED", "0")
    try:
        seed = int(value)
    except ValueError:
        raise UsageError(f"seed {value!r} is not an integer") from None
    if not 0 <= seed < 2**64:
        raise UsageError("seed must fit in an unsigned 64-bit integer")
    return seed


@contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _input_matrix(args, seed: int) -> np.ndarray:
    if args.matrix:
        a = formats.read_matrix(args.matrix)
        if args.m is not None and args.m != a.shape[0]:
            raise UsageError(f"--m {args.m} disagrees with the {a.shape[0]}-row matrix file")
        return a
    if args.m is None:
        raise UsageError("give --matrix or --m")
    if args.m < 1:
        raise UsageError("--m must be positive")
    return haar_unitary(args.m, stream(seed))


def _check_n(n: int, a: np.ndarray) -> None:
    m = a.shape[0]
    if not 1 <= n <= m or n > a.shape[1]:
        raise UsageError(f"need 1 <= n <= m, got n={n}, m={m}")


def cmd_sample(args) -> int:
    seed = _seed(args.seed)
    if args.m is not None and args.n > args.m:
        raise UsageError(f"need n <= m, got n={args.n}, m={args.m}")
    if args.count < 1:
        raise UsageError("--count must be at least 1")
    a = _input_matrix(args, seed)
    _check_n(args.n, a)
    samples = sample_batch(a, args.n, args.count, seed, threads=args.threads,
                           compensated=args.compensated)
    with _output(args.output) as fh:
        fh.write(formats.format_samples(samples, a.shape[0], args.n, seed))
    return EXIT_OK


def cmd_perm(args) -> int:
    a = formats.read_matrix(args.matrix)
    if args.pattern:
        try:
            s = [int(v) for v in args.pattern.replace(",", " ").split()]
        except ValueError:
            raise UsageError(f"bad multiplicity pattern {args.pattern!r}") from None
        value = permanent_repeated(a, s, compensated=args.compensated)
    else:
        if a.shape[0] != a.shape[1]:
            raise UsageError(f"matrix is {a.shape[0]}x{a.shape[1]}; non-square needs --pattern")
        value = permanent_ryser(a, compensated=args.compensated)
    print(f"{formats.format_real(value.real)} {formats.format_real(value.imag)}")
    return EXIT_OK


def cmd_pmf(args) -> int:
    seed = _seed(args.seed)
    a = _input_matrix(args, seed)
    _check_n(args.n, a)
    table = exact_pmf(a, args.n)
    with _output(args.output) as fh:
        fh.write(formats.format_pmf(table.probs))
    return EXIT_OK


def cmd_haar(args) -> int:
    seed = _seed(args.seed)
    if args.m < 1:
        raise UsageError("--m must be positive")
    with _output(args.output) as fh:
        formats.write_matrix(fh, haar_unitary(args.m, stream(seed)))
    return EXIT_OK


def cmd_verify(args) -> int:
    seed = _seed(args.seed)
    matrix = None
    if args.matrix:
        matrix = formats.read_matrix(args.matrix)
        _check_n(args.n, matrix)
        m = matrix.shape[0]
    else:
        m = args.m
    if args.suite != "identities" and not 1 <= args.n <= m:
        raise UsageError(f"need 1 <= n <= m, got n={args.n}, m={m}")
    results = run_suite(args.suite, m, args.n, seed, matrix=matrix, count=args.count)
    with _output(args.output) as fh:
        fh.write(format_report(results))
    failed = [r for r in results if not r.passed]
    for r in failed:
        print(f"failed: {r.line()}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def _parse_range(text: str) -> range:
    lo, sep, hi = text.partition(":")
    try:
        return range(int(lo), int(hi if sep else lo) + 1)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected LO:HI") from None


def cmd_bench(args) -> int:
    seed = _seed(args.seed)
    if args.n_range:
        points = [(max(n, round(args.theta * n)), n) for n in _parse_range(args.n_range)]
    elif args.m is not None and args.n is not None:
        points = [(args.m, args.n)]
    else:
        raise UsageError("give --n-range (with --theta) or both --m and --n")
    for m, n in points:
        if not 1 <= n <= m:
            raise UsageError(f"need 1 <= n <= m, got n={n}, m={m}")
    if args.count < 0:
        raise UsageError("--count must be non-negative")
    rows = bench_sweep(points, args.count, seed)
    with _output(args.output) as fh:
        write_csv(fh, rows)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bosonex", description="Exact classical boson sampling.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, matrix=True):
        p.add_argument("--seed", default=None, help="64-bit seed (default $BOSONEX_SEED or 0)")
        p.add_argument("--output", "-o", default=None, help="output file (default stdout)")
        if matrix:
            p.add_argument("--matrix", default=None, help="matrix text file")

    p = sub.add_parser("sample", help="draw samples")
    common(p)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--compensated", action="store_true")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("perm", help="permanent of a matrix file")
    p.add_argument("--matrix", required=True)
    p.add_argument("--pattern", default=None, help="row multiplicities, e.g. 2,0,1")
    p.add_argument("--compensated", action="store_true")
    p.set_defaults(func=cmd_perm)

    p = sub.add_parser("pmf", help="dump the exact pmf table")
    common(p)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_pmf)

    p = sub.add_parser("haar", help="emit a Haar random unitary")
    common(p, matrix=False)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_haar)

    p = sub.add_parser("verify", help="run verification checks")
    common(p)
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--count", type=int, default=None, help="sampler check sample count")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="operation-count benchmark, CSV output")
    common(p, matrix=False)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--n-range", default=None, help="LO:HI photon numbers")
    p.add_argument("--theta", type=float, default=1.0, help="m / n for --n-range")
    p.add_argument("--count", type=int, default=2000)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except formats.MatrixFormatError as exc:
        print(f"bosonex: malformed matrix file: {exc}", file=sys.stderr)
    except (UsageError, ValueError, OSError) as exc:
        print(f"bosonex: {exc}", file=sys.stderr)
    except SamplingError as exc:
        print(f"bosonex: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
