"""Command-line surface.

Subcommands: ``basis`` (four algorithm variants), ``det``, ``dioph``,
``hnf``, ``gen``, ``check``, ``bench``. Exit codes: 0 success / feasible /
equal, 1 infeasible Diophantine system or unequal lattices, 2 usage or
input errors. Setting ``LATTICE_EUCLID_LOG=trace`` prints one line per
exchange step to stderr (all indices 0-based).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from dataclasses import dataclass
from typing import Sequence

from .applications import determinant_with_trace, diophantine_run
from .errors import DimensionMismatchError, SpanMismatchError
from .euclid import BasisResult, ExchangeRecord, basic_basis
from .exact import Matrix, lcm_denominators
from .matio import MatrixParseError, format_matrix, load_matrix
from .oracle import InstanceParams, hnf, lattice_equal, random_instance
from .variants import (
    coefficient_bound,
    inverse_variant_basis,
    rowwise_variant_basis,
    solution_variant_basis,
)


class _InputError(Exception):
    """Bad input file or usage; message is ready to print."""


def _load(path: str) -> Matrix:
    try:
        return load_matrix(path)
    except MatrixParseError as exc:
        raise _InputError(f"{path}: {exc}") from exc
    except OSError as exc:
        raise _InputError(str(exc)) from exc

VARIANTS = {
    "basic": basic_basis,
    "inverse": inverse_variant_basis,
    "solution": solution_variant_basis,
    "rowwise": rowwise_variant_basis,
}


@dataclass
class RunStats:
    """Per-run statistics as emitted by ``--stats-json`` and ``bench``."""

    variant: str
    n: int
    m: int
    rank: int
    exchanges: int
    discards: int
    det_initial: int
    det_final: int
    max_abs_entry_output: int
    coefficient_bound: int
    wall_time_s: float

    def to_json_dict(self) -> dict:
        # wall time is excluded: the JSON object must repeat byte-exactly
        return {
            "variant": self.variant,
            "n": self.n,
            "m": self.m,
            "rank": self.rank,
            "exchanges": self.exchanges,
            "discards": self.discards,
            "det_initial": str(self.det_initial),
            "det_final": str(self.det_final),
            "max_abs_entry_output": self.max_abs_entry_output,
            "coefficient_bound": self.coefficient_bound,
        }


BENCH_COLUMNS = [
    "variant",
    "trial",
    "seed",
    "n",
    "m",
    "rank",
    "exchanges",
    "discards",
    "det_initial",
    "det_final",
    "max_abs_entry_output",
    "coefficient_bound",
    "wall_time_s",
]


def _stats(variant: str, a_mat: Matrix, result: BasisResult, wall: float) -> RunStats:
    return RunStats(
        variant=variant,
        n=a_mat.rows,
        m=a_mat.cols,
        rank=result.basis.cols,
        exchanges=result.exchanges,
        discards=result.discards,
        det_initial=result.det_trajectory[0],
        det_final=result.det_trajectory[-1],
        max_abs_entry_output=result.max_abs_entry,
        coefficient_bound=coefficient_bound(a_mat.rows, int(a_mat.max_abs())),
        wall_time_s=wall,
    )


def _emit_trace(records: Sequence[ExchangeRecord]) -> None:
    if os.environ.get("LATTICE_EUCLID_LOG", "off") != "trace":
        return
    for rec in records:
        print(
            f"step {rec.step}: i={rec.pivot_row} j={rec.column}"
            f" factor={rec.factor} det={rec.det_after}",
            file=sys.stderr,
        )


def _print_transform(transform: Matrix) -> None:
    # numerators at a common denominator, so the block stays integer-valued
    mu = lcm_denominators(e for col in transform.columns for e in col)
    scaled = Matrix(
        tuple(tuple(int(e * mu) for e in col) for col in transform.columns),
        rows=transform.rows,
    )
    print("# transform: numerator matrix, then one common-denominator line")
    print(format_matrix(scaled), end="")
    print(mu)


def cmd_basis(args: argparse.Namespace) -> int:
    a_mat = _load(args.file)
    started = time.perf_counter()
    result = VARIANTS[args.alg](a_mat)
    wall = time.perf_counter() - started
    _emit_trace(result.trace)
    if args.stats_json:
        print(json.dumps(_stats(args.alg, a_mat, result, wall).to_json_dict()))
    else:
        print(format_matrix(result.basis), end="")
        if args.emit_transform:
            _print_transform(result.transform)
    return 0


def cmd_det(args: argparse.Namespace) -> int:
    b_mat = _load(args.file)
    if b_mat.rows != b_mat.cols:
        print(f"{args.file}: determinant needs a square matrix", file=sys.stderr)
        return 2
    value, trace = determinant_with_trace(b_mat)
    _emit_trace(trace)
    print(value)
    return 0


def cmd_dioph(args: argparse.Namespace) -> int:
    a_mat = _load(args.file)
    rhs_mat = _load(args.rhsfile)
    if rhs_mat.cols != 1 or rhs_mat.rows != a_mat.rows:
        print(
            f"{args.rhsfile}: right-hand side must be a {a_mat.rows}x1 matrix",
            file=sys.stderr,
        )
        return 2
    rhs = tuple(rhs_mat.entry(i, 0) for i in range(rhs_mat.rows))
    try:
        solution, _, trace = diophantine_run(a_mat, rhs)
    except SpanMismatchError:
        print("INFEASIBLE")
        return 1
    _emit_trace(trace)
    if solution is None:
        print("INFEASIBLE")
        return 1
    print(format_matrix(Matrix((solution,), rows=a_mat.cols)), end="")
    return 0


def cmd_hnf(args: argparse.Namespace) -> int:
    print(format_matrix(hnf(_load(args.file))), end="")
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        params = InstanceParams(
            n=args.n, m=args.m, bound=args.bound, seed=args.seed, rank_full=args.rank_full
        )
    except ValueError as exc:
        print(f"gen: {exc}", file=sys.stderr)
        return 2
    print(format_matrix(random_instance(params)), end="")
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    left = _load(args.file1)
    right = _load(args.file2)
    if lattice_equal(left, right):
        print("EQUAL")
        return 0
    print("NOT EQUAL")
    return 1


def cmd_bench(args: argparse.Namespace) -> int:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(BENCH_COLUMNS)
    for trial in range(args.trials):
        seed = args.seed + trial
        a_mat = random_instance(
            InstanceParams(n=args.n, m=args.m, bound=args.bound, seed=seed)
        )
        for variant, runner in VARIANTS.items():
            started = time.perf_counter()
            result = runner(a_mat)
            wall = time.perf_counter() - started
            stats = _stats(variant, a_mat, result, wall)
            writer.writerow(
                [
                    stats.variant,
                    trial,
                    seed,
                    stats.n,
                    stats.m,
                    stats.rank,
                    stats.exchanges,
                    stats.discards,
                    stats.det_initial,
                    stats.det_final,
                    stats.max_abs_entry_output,
                    stats.coefficient_bound,
                    f"{stats.wall_time_s:.6f}",
                ]
            )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lattice-euclid",
        description="Exact lattice basis computation by Euclidean-style column exchanges.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_basis = sub.add_parser("basis", help="compute a lattice basis for the columns of FILE")
    p_basis.add_argument("--alg", choices=sorted(VARIANTS), required=True)
    p_basis.add_argument(
        "--stats-json",
        action="store_true",
        help="print a run-statistics JSON object instead of the basis",
    )
    p_basis.add_argument(
        "--emit-transform",
        action="store_true",
        help="also print the rational transform from the initial to the final "
        "basis (solution variant only)",
    )
    p_basis.add_argument("file")
    p_basis.set_defaults(func=cmd_basis)

    p_det = sub.add_parser(
        "det", help="determinant of a square matrix via exchange-factor accumulation"
    )
    p_det.add_argument("file")
    p_det.set_defaults(func=cmd_det)

    p_dioph = sub.add_parser(
        "dioph",
        help="solve A x = b over the integers",
        description="Solve A x = b over the integers. Prints a solution vector, "
        "or INFEASIBLE with exit code 1. Maintaining the generator-coordinate "
        "transform adds roughly an m*n^2*log(det) arithmetic overhead on top of "
        "the plain basis run.",
    )
    p_dioph.add_argument("file")
    p_dioph.add_argument("rhsfile")
    p_dioph.set_defaults(func=cmd_dioph)

    p_hnf = sub.add_parser("hnf", help="canonical Hermite form of the lattice of FILE")
    p_hnf.add_argument("file")
    p_hnf.set_defaults(func=cmd_hnf)

    p_gen = sub.add_parser("gen", help="generate a seeded random instance")
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--m", type=int, required=True)
    p_gen.add_argument("--bound", type=int, required=True)
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument("--rank-full", action="store_true")
    p_gen.set_defaults(func=cmd_gen)

    p_check = sub.add_parser("check", help="compare the lattices of two matrix files")
    p_check.add_argument("file1")
    p_check.add_argument("file2")
    p_check.set_defaults(func=cmd_check)

    p_bench = sub.add_parser(
        "bench", help="run all variants on seeded instances and emit CSV statistics"
    )
    p_bench.add_argument("--seed", type=int, required=True)
    p_bench.add_argument("--trials", type=int, required=True)
    p_bench.add_argument("--n", type=int, required=True)
    p_bench.add_argument("--m", type=int, required=True)
    p_bench.add_argument("--bound", type=int, required=True)
    p_bench.set_defaults(func=cmd_bench)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    if getattr(args, "emit_transform", False):
        if args.alg != "solution":
            print("basis: --emit-transform requires --alg solution", file=sys.stderr)
            return 2
        if args.stats_json:
            print("basis: --emit-transform conflicts with --stats-json", file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except _InputError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except DimensionMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
