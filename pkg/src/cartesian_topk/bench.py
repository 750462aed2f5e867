"""Seeded benchmark harness comparing top-k methods on random integer X, Y.

Instances come from numpy's PCG64 generator (``numpy.random.default_rng``),
so a given seed yields the same arrays on every platform.  Each trial of
each grid point draws a fresh instance whose seed is derived from
``(seed, n, k, trial)``.
"""
import csv
import gc
import io
import time
from dataclasses import astuple, dataclass, fields

import numpy as np

from .baselines import naive_select, simplified_select
from .errors import AgreementError, InvalidConfigError
from .loh import LohConfig, lohify
from .pairwise_select import run_phase1, run_phase2, run_phase3

METHODS = ("naive", "loh", "simplified")
DEFAULT_VALUE_RANGE = (0, 2**31 - 1)
TABLE1_GRID = [(n, n * m // 4) for n in (1000, 2000, 4000) for m in (1, 2, 4, 8, 16)]
NAIVE_MAX_N = 2000


@dataclass
class BenchRecord:
    n: int
    k: int
    alpha: float
    method: str
    trials: int
    mean_seconds: float
    phase0_seconds: float = None
    phases123_seconds: float = None
    overhead_ratio: float = None
    seed: int = 0


@dataclass
class _Run:
    values: np.ndarray
    phase0: float = None
    phases123: float = None
    overhead: float = None

    @property
    def seconds(self):
        return self.phase0 + self.phases123


def generate_instance(n, seed, value_range=DEFAULT_VALUE_RANGE):
    """Two length-``n`` int64 arrays uniform on the inclusive ``value_range``."""
    lo, hi = value_range
    if hi < lo:
        raise InvalidConfigError(f"empty value range [{lo}, {hi}]")
    if n < 1:
        raise InvalidConfigError(f"n must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    x = rng.integers(lo, hi, size=n, endpoint=True, dtype=np.int64)
    y = rng.integers(lo, hi, size=n, endpoint=True, dtype=np.int64)
    return x, y


def instance_seed(seed, n, k, trial):
    return int(np.random.SeedSequence([seed, n, k, trial]).generate_state(1, np.uint64)[0])


def _run_naive(x, y, k, alpha):
    t0 = time.perf_counter()
    values = naive_select(x, y, k).values
    return _Run(values, 0.0, time.perf_counter() - t0)


def _run_loh(x, y, k, alpha):
    config = LohConfig(alpha)
    t0 = time.perf_counter()
    x_loh = lohify(x, config)
    y_loh = lohify(y, config)
    t1 = time.perf_counter()
    state, trace = run_phase1(x_loh, y_loh, k)
    run_phase2(state, trace, x_loh, y_loh)
    values = run_phase3(x_loh, y_loh, trace.q, k)
    t2 = time.perf_counter()
    return _Run(values, t1 - t0, t2 - t1, (trace.s + trace.s_prime) / k)


def _run_simplified(x, y, k, alpha):
    t0 = time.perf_counter()
    values = simplified_select(x, y, k, LohConfig(alpha)).values
    return _Run(values, 0.0, time.perf_counter() - t0)


RUNNERS = {"naive": _run_naive, "loh": _run_loh, "simplified": _run_simplified}


def _timed(runner, x, y, k, alpha):
    enabled = gc.isenabled()
    gc.disable()
    try:
        return runner(x, y, k, alpha)
    finally:
        if enabled:
            gc.enable()


def _warm_up(runners, methods, alpha):
    # Triggers JIT compilation outside the timed region.
    x, y = generate_instance(64, 0)
    for m in methods:
        runners[m](x, y, 64, alpha)


def _reference(n, ran):
    if n <= NAIVE_MAX_N and "naive" not in ran:
        return "naive"
    if "simplified" not in ran:
        return "simplified"
    return None


def run_benchmark(
    grid,
    methods=METHODS,
    alpha=2.0,
    trials=5,
    seed=0,
    value_range=DEFAULT_VALUE_RANGE,
    verify_only=False,
    runners=None,
):
    """Time every method on every ``(n, k)`` grid point.

    All methods run on the same instances and must return the same multisets;
    if fewer than two methods ran, a reference method (naive for
    ``n <= 2000``, else simplified) is run untimed to check against.  In
    ``verify_only`` mode nothing is timed, naive is skipped above
    ``n = 2000``, and an empty list is returned.

    Raises :class:`AgreementError` naming the instance seed on any mismatch.
    """
    if trials < 1:
        raise InvalidConfigError(f"trials must be >= 1, got {trials}")
    unknown = set(methods) - set(METHODS)
    if unknown:
        raise InvalidConfigError(f"unknown methods {sorted(unknown)}")
    LohConfig(alpha)
    runners = {**RUNNERS, **(runners or {})}
    methods = [m for m in METHODS if m in methods]
    if not verify_only:
        _warm_up(runners, methods, alpha)
    records = []
    for n, k in grid:
        if not 1 <= k <= n * n:
            raise InvalidConfigError(f"k={k} outside [1, n*n] for n={n}")
        active = [m for m in methods if not (verify_only and m == "naive" and n > NAIVE_MAX_N)]
        seeds = [instance_seed(seed, n, k, trial) for trial in range(trials)]
        # Each method's trials run back to back so one method's memory
        # traffic does not pollute another's timings.
        runs = {}
        for m in active:
            if not verify_only:
                # Untimed pass so the first timed trial starts from the
                # same cache state as the rest.
                runners[m](*generate_instance(n, seeds[0], value_range), k, alpha)
            runs[m] = [_timed(runners[m], *generate_instance(n, s, value_range), k, alpha) for s in seeds]
        for trial, iseed in enumerate(seeds):
            results = {m: runs[m][trial] for m in active}
            ref = _reference(n, results) if len(results) < 2 else None
            if ref is not None:
                x, y = generate_instance(n, iseed, value_range)
                results[ref] = runners[ref](x, y, k, alpha)
            _check_agreement(results, n, k, iseed)
        if verify_only:
            continue
        for m in active:
            records.append(_record(n, k, alpha, m, runs[m], seed))
    return records


def _check_agreement(results, n, k, iseed):
    expected_name, expected = None, None
    for name, run in results.items():
        got = np.sort(run.values)
        if expected is None:
            expected_name, expected = name, got
        elif len(got) != len(expected) or not np.array_equal(got, expected):
            raise AgreementError(
                f"methods {expected_name!r} and {name!r} disagree at n={n}, k={k}, seed={iseed}",
                seed=iseed,
            )


def _record(n, k, alpha, method, runs, seed):
    mean = float(np.mean([r.seconds for r in runs]))
    if method != "loh":
        return BenchRecord(n, k, alpha, method, len(runs), mean, seed=seed)
    return BenchRecord(
        n,
        k,
        alpha,
        method,
        len(runs),
        mean,
        phase0_seconds=float(np.mean([r.phase0 for r in runs])),
        phases123_seconds=float(np.mean([r.phases123 for r in runs])),
        overhead_ratio=float(np.mean([r.overhead for r in runs])),
        seed=seed,
    )


CSV_COLUMNS = [f.name for f in fields(BenchRecord)]


def _sig3(x):
    return f"{x:.3g}"


def emit_report(records, fmt="table"):
    """Render records as a CSV document or as a text table grouped by n."""
    if fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for rec in records:
            writer.writerow("" if v is None else v for v in astuple(rec))
        return out.getvalue()
    if fmt != "table":
        raise InvalidConfigError(f"unknown report format {fmt!r}")
    return _table(records)


def _table(records):
    present = [m for m in METHODS if any(r.method == m for r in records)]
    by_point = {}
    for rec in records:
        by_point.setdefault((rec.n, rec.k), {})[rec.method] = rec
    header = ["", *("loh (total=phase 0+phases 1-3)" if m == "loh" else m for m in present)]
    if "loh" in present:
        header.append("(s+s')/k")
    rows = []
    last_n = None
    for (n, k), cells in by_point.items():
        if last_n is not None and n != last_n:
            rows.append(None)
        last_n = n
        row = [f"n={n},k={k}"]
        for m in present:
            rec = cells.get(m)
            if rec is None:
                row.append("-")
            elif m == "loh":
                row.append(
                    f"{_sig3(rec.mean_seconds)}={_sig3(rec.phase0_seconds)}+{_sig3(rec.phases123_seconds)}"
                )
            else:
                row.append(_sig3(rec.mean_seconds))
        if "loh" in present:
            rec = cells.get("loh")
            row.append(f"{rec.overhead_ratio:.3f}" if rec else "-")
        rows.append(row)
    widths = [len(h) for h in header]
    for row in rows:
        if row:
            widths = [max(w, len(c)) for w, c in zip(widths, row)]

    def fmt(row):
        return " | ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip()

    lines = [fmt(header), "-+-".join("-" * w for w in widths)]
    for row in rows:
        lines.append("-+-".join("-" * w for w in widths) if row is None else fmt(row))
    return "\n".join(lines) + "\n"
