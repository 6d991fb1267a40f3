"""Test batteries and the compactness probe.

Provides:
- spike() / plateau() / sawtooth(): BV-unit sequences tending to 0
  pointwise
- bv_norm(): |x(0)| + var x
- compactness_probe(): the decay table of ‖Kx_v‖_Φ along a battery

The probe is evidence, not proof: compactness asks for decay along every
pointwise-null bounded sequence, and a battery is a finite sample of them.
The (H3) modulus is the sound certificate.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from itertools import pairwise
from typing import Literal

import numpy as np

from ..config import get_probe_threshold
from ..core import GridFunction, YoungSequence
from ..luxemburg import schramm_norm
from ..variation import jordan_variation
from .kernel import Kernel, apply_operator

logger = logging.getLogger(__name__)

BatteryName = Literal["spikes", "shrinking_plateaus", "sawtooth"]
ProbeVerdict = Literal["decay-consistent", "inconclusive"]

# Monotonicity slack of the decay table
DECAY_SLACK = 1e-12


def bv_norm(x: GridFunction) -> float:
    """‖x‖_BV = |x(0)| + var x."""
    return abs(float(x.values[0])) + jordan_variation(x)


def spike(grid: np.ndarray, v: int) -> GridFunction:
    """
    Tent of height ½ and base 1/v centred at 1/(v+1).

    ‖x‖_BV <= 1; the support leaves every t > 0 as v grows.
    """
    t = np.asarray(grid, dtype=float)
    centre = 1.0 / (v + 1)
    bump = np.maximum(0.0, 1.0 - 2.0 * v * np.abs(t - centre))
    return GridFunction(t, 0.5 * bump)


def plateau(grid: np.ndarray, v: int) -> GridFunction:
    """½ on (0, 1/v], 0 elsewhere; ‖x‖_BV = 1."""
    t = np.asarray(grid, dtype=float)
    return GridFunction(t, np.where((t > 0) & (t <= 1.0 / v), 0.5, 0.0))


def sawtooth(grid: np.ndarray, v: int) -> GridFunction:
    """v triangular teeth of amplitude 1/(2v); ‖x‖_BV <= 1."""
    t = np.asarray(grid, dtype=float)
    phase = np.mod(v * t, 1.0)
    return GridFunction(t, (1.0 - np.abs(2.0 * phase - 1.0)) / (2.0 * v))


BATTERIES: dict[BatteryName, Callable[[np.ndarray, int], GridFunction]] = {
    "spikes": spike,
    "shrinking_plateaus": plateau,
    "sawtooth": sawtooth,
}


def battery_levels(v_max: int) -> list[int]:
    """Dyadic levels 1, 2, 4, ... up to v_max."""
    levels = []
    v = 1
    while v <= v_max:
        levels.append(v)
        v *= 2
    return levels


def battery_members(
    grid: np.ndarray,
    names: Iterable[BatteryName] = tuple(BATTERIES),
    v_max: int = 64,
) -> list[GridFunction]:
    """Every member of the named batteries at dyadic levels."""
    return [
        BATTERIES[name](grid, v)
        for name in names
        for v in battery_levels(v_max)
    ]


@dataclass
class ProbeReport:
    """Rows (v, ‖Kx_v‖_Φ) of one battery."""

    battery: BatteryName
    threshold: float
    rows: list[tuple[int, float]] = field(default_factory=list)

    @property
    def eventually_non_increasing(self) -> bool:
        """The table does not increase after its maximum."""
        if not self.rows:
            return True
        norms = [n for _, n in self.rows]
        peak = int(np.argmax(norms))
        tail = norms[peak:]
        return all(b <= a + DECAY_SLACK for a, b in pairwise(tail))

    @property
    def verdict(self) -> ProbeVerdict:
        if (
            self.rows
            and self.eventually_non_increasing
            and self.rows[-1][1] <= self.threshold
        ):
            return "decay-consistent"
        return "inconclusive"

    def to_dict(self) -> dict:
        return {
            "battery": self.battery,
            "threshold": self.threshold,
            "rows": [{"v": v, "norm": n} for v, n in self.rows],
            "verdict": self.verdict,
        }


def compactness_probe(
    kernel: Kernel,
    seq: YoungSequence,
    battery: BatteryName,
    v_max: int = 64,
    threshold: float | None = None,
) -> ProbeReport:
    """
    Tabulate ‖Kx_v‖_Φ for v = 1, 2, 4, ..., v_max.

    Args:
        kernel: The sampled kernel.
        seq: The Young sequence of the target space.
        battery: "spikes", "shrinking_plateaus" or "sawtooth".
        v_max: Last battery level.
        threshold: Largest final norm for "decay-consistent". Defaults to
            SCHRAMM_BV_PROBE_THRESHOLD.

    Returns:
        ProbeReport; the verdict is "decay-consistent" when the table is
        eventually non-increasing and ends at or below the threshold.
    """
    generator = BATTERIES[battery]
    report = ProbeReport(
        battery,
        threshold if threshold is not None else get_probe_threshold(),
    )
    for v in battery_levels(v_max):
        image = apply_operator(kernel, generator(kernel.grid_s, v))
        report.rows.append((v, schramm_norm(image, seq)))
    logger.info("Probe %s: %s", battery, report.verdict)
    return report
