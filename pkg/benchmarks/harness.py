"""Timing harness for the variation engine.

Runs a solver callable on a fixed instance with warmup and measured runs
and keeps the wall-clock timings.
"""

from __future__ import annotations

import sys
import time
from collections.abc import Callable
from dataclasses import dataclass, field
from statistics import median
from typing import Any

WARMUP_RUNS = 2
MEASURED_RUNS = 10


@dataclass
class BenchmarkResult:
    """Timings of one solver on one scenario."""

    solver: str
    scenario: str
    cells: int
    timings_ms: list[float] = field(default_factory=list)
    value: float | None = None
    success: bool = True
    error: str | None = None

    @property
    def median_ms(self) -> float:
        if not self.timings_ms:
            return 0.0
        return median(self.timings_ms)

    @property
    def p5_ms(self) -> float:
        if not self.timings_ms:
            return 0.0
        idx = max(0, int(len(self.timings_ms) * 0.05))
        return sorted(self.timings_ms)[idx]

    @property
    def p95_ms(self) -> float:
        if not self.timings_ms:
            return 0.0
        idx = min(
            len(self.timings_ms) - 1,
            int(len(self.timings_ms) * 0.95),
        )
        return sorted(self.timings_ms)[idx]

    def to_dict(self) -> dict:
        return {
            "solver": self.solver,
            "scenario": self.scenario,
            "cells": self.cells,
            "median_ms": round(self.median_ms, 3),
            "p5_ms": round(self.p5_ms, 3),
            "p95_ms": round(self.p95_ms, 3),
            "timings_ms": [round(t, 3) for t in self.timings_ms],
            "value": self.value,
            "success": self.success,
            "error": self.error,
        }


def measure_call(fn: Callable[[], Any]) -> tuple[float, Any]:
    """Time a single call in ms."""
    t0 = time.perf_counter()
    out = fn()
    return (time.perf_counter() - t0) * 1000, out


def run_scenario(
    solver: str,
    scenario: str,
    cells: int,
    fn: Callable[[], float],
    warmup: int = WARMUP_RUNS,
    runs: int = MEASURED_RUNS,
) -> BenchmarkResult:
    """
    Run fn with warmup + measured runs.

    The value of the last run is kept so solvers can be compared on the
    same instance. Any exception marks the result as failed.
    """
    result = BenchmarkResult(solver=solver, scenario=scenario, cells=cells)
    try:
        for _ in range(warmup):
            fn()
        for _ in range(runs):
            elapsed, value = measure_call(fn)
            result.timings_ms.append(elapsed)
            result.value = float(value)
    except Exception as exc:
        result.success = False
        result.error = str(exc)
        print(f"  ERROR [{solver}/{scenario}]: {exc}", file=sys.stderr)
    return result
