"""Exit criteria.  Each test records one PASS/FAIL line, shown in the
terminal summary under "acceptance criteria"."""
import time

import numpy as np

from cartesian_topk import (
    LohConfig,
    layer_sizes,
    lohify,
    naive_select,
    select_cartesian_k,
    select_k_smallest,
)
from cartesian_topk.bench import generate_instance, run_benchmark
from cartesian_topk.baselines import simplified_select
from cartesian_topk.cli import main
from helpers import first_violation

MOM_COMPARISONS_PER_ELEMENT = 40


def test_oracle_equivalence(criterion):
    rng = np.random.default_rng(20240101)
    t0 = time.perf_counter()
    mismatches = 0
    cases = 0
    for alpha in (1.2, 2.0, 3.0):
        cfg = LohConfig(alpha)
        for _ in range(200):
            nx, ny = (int(v) for v in rng.integers(1, 41, 2))
            hi = int(rng.choice([5, 100]))
            x, y = rng.integers(0, hi + 1, nx), rng.integers(0, hi + 1, ny)
            k = int(rng.integers(1, nx * ny + 1))
            expected = naive_select(x, y, k).values
            loh = np.sort(select_cartesian_k(x, y, k, cfg).values)
            simple = np.sort(simplified_select(x, y, k, cfg).values)
            cases += 1
            if not (np.array_equal(loh, expected) and np.array_equal(simple, expected)):
                mismatches += 1
    elapsed = time.perf_counter() - t0
    criterion(
        "oracle equivalence (loh == simplified == naive)",
        mismatches == 0 and cases >= 500 and elapsed < 30,
        f"{cases} instances, {mismatches} mismatches, {elapsed:.1f}s",
    )


def _loh_ok(loh, data, alpha):
    n = len(data)
    if not np.array_equal(np.sort(loh.data), np.sort(data)):
        return "permutation"
    sizes = loh.sizes()
    if n and sizes[0] != 1:
        return "first layer size"
    if list(sizes) != layer_sizes(n, alpha):
        return "schedule"
    if np.any(loh.maxs()[:-1] > loh.mins()[1:]):
        return "layer ordering"
    full = sizes[:-1]
    if len(full) >= 2:
        ratios = full[1:] / full[:-1]
        if np.any(ratios < 1) or np.any(ratios > alpha + 1):
            return "growth ratio"
    return None


def test_loh_invariant_suite(criterion):
    rng = np.random.default_rng(7)
    t0 = time.perf_counter()
    failures = []
    for n in (0, 1, 2, 17, 1000, 10**5):
        for alpha in (1.1, 1.5, 2.0, 4.0):
            for data in (rng.integers(0, 2**31, n), rng.integers(0, 4, n)):
                problem = _loh_ok(lohify(data, LohConfig(alpha)), data, alpha)
                if problem:
                    failures.append((n, alpha, problem))
    elapsed = time.perf_counter() - t0
    criterion(
        "LOH invariants",
        not failures and elapsed < 10,
        f"48 heaps, failures={failures}, {elapsed:.1f}s",
    )


def test_lemma_instrumentation(criterion):
    rng = np.random.default_rng(3)
    n = 200
    t0 = time.perf_counter()
    failures = []
    for run in range(100):
        hi = 2**31 - 1 if run % 2 else 50
        x, y = generate_instance(n, run, (0, hi))
        k = int(rng.integers(1, n * n + 1))
        trace = select_cartesian_k(x, y, k, LohConfig(2.0), instrument=True).trace
        problem = first_violation(trace)
        if problem:
            failures.append((run, k, problem))
    elapsed = time.perf_counter() - t0
    criterion(
        "lemma instrumentation (ascending, convexity, no duplicates, stop rule)",
        not failures and elapsed < 10,
        f"100 runs, failures={failures[:3]}, {elapsed:.1f}s",
    )


def test_overhead_claim(criterion):
    alpha = 2.0
    t0 = time.perf_counter()
    ratios = []
    bound_failures = []
    for k in (250, 500, 1000, 2000, 4000):
        for seed in range(5):
            x, y = generate_instance(1000, seed)
            trace = select_cartesian_k(x, y, k, LohConfig(alpha), instrument=True).trace
            ratios.append(trace.overhead_ratio)
            slack = max(trace.phase2_sizes, default=0)
            if trace.s_prime > (alpha**2 + 2 * alpha) * trace.s + slack:
                bound_failures.append((k, seed, trace.s, trace.s_prime))
    mean = float(np.mean(ratios))
    elapsed = time.perf_counter() - t0
    criterion(
        "overhead (s+s')/k in [1.5, 8.0] and s' bound",
        1.5 <= mean <= 8.0 and not bound_failures and elapsed < 60,
        f"mean={mean:.3f} (range {min(ratios):.3f}..{max(ratios):.3f}), "
        f"bound failures={bound_failures}, {elapsed:.1f}s",
    )


def test_speedup_ordering(criterion):
    t0 = time.perf_counter()
    records = run_benchmark([(1000, 1000)], methods={"naive", "loh"}, alpha=2.0, trials=5)
    by = {r.method: r for r in records}
    speedup = by["naive"].mean_seconds / by["loh"].mean_seconds
    elapsed = time.perf_counter() - t0
    criterion(
        "speedup loh vs naive >= 10x at n=1000, k=1000",
        speedup >= 10 and elapsed < 120,
        f"naive={by['naive'].mean_seconds:.4g}s loh={by['loh'].mean_seconds:.4g}s "
        f"speedup={speedup:.1f}x, {elapsed:.1f}s",
    )


def test_linearity_evidence(criterion):
    t0 = time.perf_counter()
    small, large = (
        run_benchmark([point], methods={"loh"}, alpha=2.0, trials=5)[0].mean_seconds
        for point in ((2000, 2000), (4000, 4000))
    )
    ratios = {}
    for n in (10**3, 10**4, 10**5, 10**6):
        data = np.random.default_rng(n).integers(0, 2**31, n)
        ratios[n] = select_k_smallest(data, n // 2, "median_of_medians").comparisons / n
    elapsed = time.perf_counter() - t0
    ok = large <= 4 * small and max(ratios.values()) <= MOM_COMPARISONS_PER_ELEMENT
    criterion(
        "linearity (time ratio <= 4, comparisons <= 40n)",
        ok and elapsed < 120,
        f"t(4000,4000)/t(2000,2000)={large / small:.2f}, comparisons/n="
        + ", ".join(f"{n:.0e}:{r:.1f}" for n, r in ratios.items())
        + f", {elapsed:.1f}s",
    )


def test_cli_contract(criterion, capsys):
    t0 = time.perf_counter()
    clean = main(["--verify-only"])
    capsys.readouterr()
    corrupted = main(["--verify-only", "--corrupt-method", "simplified"])
    err = capsys.readouterr().err
    elapsed = time.perf_counter() - t0
    criterion(
        "CLI --verify-only contract",
        clean == 0 and corrupted != 0 and "seed=" in err and elapsed < 30,
        f"clean exit={clean}, corrupted exit={corrupted}, message={err.strip()!r}, {elapsed:.1f}s",
    )
