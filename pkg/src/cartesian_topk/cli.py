"""Command-line benchmark: ``cartesian-topk-bench`` / ``python -m cartesian_topk``."""
import argparse
import sys

from . import bench
from .errors import AgreementError, SelectionError


def _int_list(text):
    return [int(part) for part in text.split(",") if part.strip()]


def _grid(ns, ks):
    if ns is None and ks is None:
        return list(bench.TABLE1_GRID)
    if ns is None:
        ns = sorted({n for n, _ in bench.TABLE1_GRID})
    if ks is None:
        # Same k/n ratios as the default grid.
        return [(n, n * m // 4) for n in ns for m in (1, 2, 4, 8, 16)]
    return [(n, k) for n in ns for k in ks if 1 <= k <= n * n]


def _corrupted(runner):
    def run(x, y, k, alpha):
        result = runner(x, y, k, alpha)
        result.values = result.values.copy()
        result.values[0] += 1
        return result

    return run


def build_parser():
    p = argparse.ArgumentParser(
        prog="cartesian-topk-bench",
        description="Benchmark and cross-check top-k selection on X+Y.",
    )
    p.add_argument("--n", type=_int_list, help="comma-separated lengths of X and Y")
    p.add_argument("--k", type=_int_list, help="comma-separated k values (crossed with --n)")
    p.add_argument("--alpha", type=float, default=2.0, help="LOH growth rate (default 2.0)")
    p.add_argument(
        "--methods",
        type=lambda s: [m.strip() for m in s.split(",") if m.strip()],
        default=list(bench.METHODS),
        help="comma-separated subset of naive,loh,simplified",
    )
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("table", "csv"), default="table")
    p.add_argument("--value-max", type=int, default=bench.DEFAULT_VALUE_RANGE[1],
                   help="largest value drawn (inclusive); values start at 0")
    p.add_argument("--verify-only", action="store_true",
                   help="run the agreement checks only, no timing output")
    # Test hook: perturbs one method's output so the agreement gate trips.
    p.add_argument("--corrupt-method", choices=bench.METHODS, help=argparse.SUPPRESS)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    runners = {}
    if args.corrupt_method:
        runners[args.corrupt_method] = _corrupted(bench.RUNNERS[args.corrupt_method])
    grid = _grid(args.n, args.k)
    try:
        records = bench.run_benchmark(
            grid,
            methods=args.methods,
            alpha=args.alpha,
            trials=args.trials,
            seed=args.seed,
            value_range=(0, args.value_max),
            verify_only=args.verify_only,
            runners=runners,
        )
    except AgreementError as exc:
        print(f"agreement failure: {exc}", file=sys.stderr)
        return 1
    except SelectionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.verify_only:
        print(f"verified {len(grid)} grid points x {args.trials} trials: all methods agree")
    else:
        sys.stdout.write(bench.emit_report(records, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
