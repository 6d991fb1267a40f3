"""CLI entry point for the benchmarking suite.

Usage:
    python -m benchmarks.run                          # run all
    python -m benchmarks.run --solver exact           # one solver
    python -m benchmarks.run --scenario helly         # one Young sequence
    python -m benchmarks.run --cells 6 10 --runs 5    # custom sizes
"""

from __future__ import annotations

import argparse
import json
import platform
import sys
from collections.abc import Callable
from datetime import UTC, datetime
from functools import partial
from pathlib import Path

import numpy as np

from schramm_bv.config import get_oracle_max_cells
from schramm_bv.core import (
    GridFunction,
    YoungSequence,
    all_intervals,
    random_grid_function,
    waterman,
    wiener,
)
from schramm_bv.fixtures import fixture_path
from schramm_bv.luxemburg import luxemburg_seminorm
from schramm_bv.serialize import parse_young
from schramm_bv.variation import brute_force_variation, schramm_variation

from .harness import (
    MEASURED_RUNS,
    WARMUP_RUNS,
    BenchmarkResult,
    run_scenario,
)

RESULTS_DIR = Path(__file__).parent / "results"

DEFAULT_CELLS = [4, 8, 12]


def _scenarios() -> dict[str, YoungSequence]:
    return {
        "wiener2": wiener(2),
        "waterman": waterman([4, 3, 2, 1]),
        "helly": parse_young(str(fixture_path("helly_young"))),
    }


SOLVERS: dict[str, Callable[[GridFunction, YoungSequence], float]] = {
    "exact": lambda x, seq: schramm_variation(x, seq).value,
    "heuristic": lambda x, seq: schramm_variation(
        x, seq, mode="heuristic"
    ).value,
    "oracle": brute_force_variation,
    "luxemburg": lambda x, seq: luxemburg_seminorm(
        x, seq, all_intervals(x)
    ).value,
}


def run_size(
    cells: int,
    scenarios: dict[str, YoungSequence],
    solvers: list[str],
    seed: int,
    warmup: int,
    runs: int,
) -> list[BenchmarkResult]:
    """Run every solver on one random instance per scenario."""
    results: list[BenchmarkResult] = []
    x = random_grid_function(cells, np.random.default_rng(seed))

    print(f"\n{'─' * 50}")
    print(f"  m = {cells} cells")
    print(f"{'─' * 50}")

    for name, seq in scenarios.items():
        for solver in solvers:
            print(f"  {name}/{solver}: ", end="", flush=True)
            fn = SOLVERS[solver]
            if solver == "oracle" and cells > get_oracle_max_cells():
                print("SKIP (grid too large)")
                continue
            result = run_scenario(
                solver, name, cells, partial(fn, x, seq), warmup, runs
            )
            results.append(result)
            if result.success:
                print(
                    f"{result.median_ms:>9.2f}ms "
                    f"(p5={result.p5_ms:.2f}, p95={result.p95_ms:.2f}) "
                    f"value={result.value:.10g}"
                )
            else:
                print(f"FAILED: {result.error}")
    return results


def collect_metadata() -> dict:
    """Collect environment metadata for reproducibility."""
    uname = platform.uname()
    return {
        "timestamp": datetime.now(UTC).isoformat(),
        "hardware": uname.machine,
        "system": f"{uname.system} {uname.release}",
        "python_version": platform.python_version(),
        "numpy_version": np.__version__,
    }


def print_summary(all_results: list[BenchmarkResult]) -> None:
    """Median per solver, and where exact and oracle disagree."""
    print(f"\n{'═' * 60}")
    print("  BENCHMARK RESULTS SUMMARY")
    print(f"{'═' * 60}\n")

    keys = sorted({(r.scenario, r.cells) for r in all_results})
    for scenario, cells in keys:
        group = [
            r
            for r in all_results
            if (r.scenario, r.cells) == (scenario, cells) and r.success
        ]
        if not group:
            continue
        print(f"  {scenario}, m = {cells}")
        print(f"  {'─' * 45}")
        group.sort(key=lambda r: r.median_ms)
        fastest = group[0].median_ms
        for r in group:
            ratio = f"{r.median_ms / fastest:.1f}x" if fastest > 0 else "—"
            print(f"  {r.solver:<12} {r.median_ms:>9.2f}ms  ({ratio:>7})")
        values = {r.solver: r.value for r in group}
        if "exact" in values and "oracle" in values:
            gap = abs(values["exact"] - values["oracle"])
            mark = "✓" if gap <= 1e-9 * max(1.0, values["oracle"]) else "✗"
            print(f"  {mark} exact vs oracle gap {gap:.3g}")
        print()


def main() -> None:
    parser = argparse.ArgumentParser(
        description="Time the schramm-bv variation solvers"
    )
    parser.add_argument(
        "--solver",
        choices=sorted(SOLVERS),
        help="Run only this solver",
    )
    parser.add_argument(
        "--scenario",
        "-s",
        help="Run only this Young sequence",
    )
    parser.add_argument(
        "--cells",
        type=int,
        nargs="+",
        default=DEFAULT_CELLS,
        help=f"Grid sizes (default: {DEFAULT_CELLS})",
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=0,
        help="Seed of the random instances (default: 0)",
    )
    parser.add_argument(
        "--warmup",
        type=int,
        default=WARMUP_RUNS,
        help=f"Warmup runs (default: {WARMUP_RUNS})",
    )
    parser.add_argument(
        "--runs",
        type=int,
        default=MEASURED_RUNS,
        help=f"Measured runs (default: {MEASURED_RUNS})",
    )
    parser.add_argument(
        "--output",
        "-o",
        help="Output JSON file path (default: results/<date>.json)",
    )
    args = parser.parse_args()

    scenarios = _scenarios()
    if args.scenario:
        if args.scenario not in scenarios:
            print(f"Unknown scenario: {args.scenario}", file=sys.stderr)
            print(f"Available: {', '.join(scenarios)}", file=sys.stderr)
            sys.exit(1)
        scenarios = {args.scenario: scenarios[args.scenario]}
    solvers = [args.solver] if args.solver else list(SOLVERS)

    print("schramm-bv solver benchmarks")
    print(f"  Warmup: {args.warmup} | Runs: {args.runs}")
    print(f"  Sizes: {args.cells} | Scenarios: {len(scenarios)}")

    all_results: list[BenchmarkResult] = []
    for cells in args.cells:
        all_results.extend(
            run_size(
                cells, scenarios, solvers, args.seed, args.warmup, args.runs
            )
        )

    print_summary(all_results)

    output_data = {
        "metadata": collect_metadata(),
        "config": {
            "warmup_runs": args.warmup,
            "measured_runs": args.runs,
            "cells": args.cells,
            "seed": args.seed,
            "solvers": solvers,
        },
        "results": [r.to_dict() for r in all_results],
    }

    RESULTS_DIR.mkdir(parents=True, exist_ok=True)
    if args.output:
        output_path = Path(args.output)
    else:
        date_str = datetime.now().strftime("%Y-%m-%d")
        output_path = RESULTS_DIR / f"{date_str}.json"

    output_path.write_text(json.dumps(output_data, indent=2) + "\n")
    print(f"\nResults saved to {output_path}")


if __name__ == "__main__":
    main()
