"""Schramm BV - generalized variations and compactness certificates.

Features:
- Exact Schramm variation of sampled functions (branch and bound with
  optimal φ-assignment, dynamic programming for a single Young function)
- Luxemburg seminorms, equinormed defects and compactness witnesses
- (H2)/(H3) certificates for integral operators from BV into ΦBV

Usage:
    schramm-bv variation --input x.json --young wiener:2
    schramm-bv reproduce      # Recompute the worked examples
    schramm-bv serve          # Run the MCP tool server
"""

from .cli import main
from .core import (
    GridFunction,
    IntervalFamily,
    SchrammError,
    YoungSequence,
    all_intervals,
    custom,
    jordan,
    make_grid_function,
    make_young_sequence,
    waterman,
    wiener,
    young,
)
from .luxemburg import luxemburg_seminorm, schramm_norm
from .server import mcp
from .variation import schramm_variation, variation_over_family

__all__ = [
    "GridFunction",
    "IntervalFamily",
    "SchrammError",
    "YoungSequence",
    "all_intervals",
    "custom",
    "jordan",
    "luxemburg_seminorm",
    "main",
    "make_grid_function",
    "make_young_sequence",
    "mcp",
    "schramm_norm",
    "schramm_variation",
    "variation_over_family",
    "waterman",
    "wiener",
    "young",
]
