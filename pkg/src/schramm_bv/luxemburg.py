"""Luxemburg seminorms of grid functions.

Provides:
- luxemburg_seminorm(): |x|_J = inf{λ > 0 : V_J(x/λ) <= 1} by bisection
- luxemburg_norm() / schramm_norm(): ‖x‖_J = |x(0)| + |x|_J and ‖x‖_Φ
- luxemburg_dual_formula(): the same seminorm as a max over selections of
  per-selection infima
- sup_norm_bound_constant(): c_Φ = max{1, φ_1^{-1}(1)}

Reported values are the upper end of the final bracket, a feasible λ.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from .config import get_node_budget, get_rel_tol
from .core import (
    BudgetExceeded,
    GridFunction,
    IntervalFamily,
    YoungSequence,
    all_intervals,
    young_inverse,
)
from .variation import assignment_value, iter_selections, variation_over_family

logger = logging.getLogger(__name__)

# Guard against runaway doubling/halving of the bracket
MAX_BRACKET_STEPS = 2000


@dataclass
class SeminormValue:
    """A Luxemburg seminorm with its final bisection bracket."""

    value: float
    bracket: tuple[float, float] = (0.0, 0.0)
    evaluations: int = 0

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "bracket": list(self.bracket),
            "evaluations": self.evaluations,
        }


def _bisect_scale(
    feasible: Callable[[float], bool], rel_tol: float
) -> tuple[float, float]:
    """Smallest feasible λ of a monotone predicate, as a bracket (lo, hi)."""
    hi = 1.0
    steps = 0
    while not feasible(hi):
        hi *= 2.0
        steps += 1
        if steps > MAX_BRACKET_STEPS:
            raise ArithmeticError("no feasible scale found")
    lo = 0.5 * hi
    if steps == 0:
        while lo > 0.0 and feasible(lo):
            hi = lo
            lo *= 0.5
    while hi - lo > rel_tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return lo, hi


def luxemburg_seminorm(
    x: GridFunction,
    seq: YoungSequence,
    family: IntervalFamily,
    rel_tol: float | None = None,
    budget: int | None = None,
) -> SeminormValue:
    """
    Compute |x|_J by bisection on λ.

    λ_hi doubles from 1 until V_J(x/λ_hi) <= 1, λ_lo halves until
    V_J(x/λ_lo) > 1, then the bracket is bisected down to
    rel_tol·max(1, λ_hi).

    Args:
        x: The sampled function.
        seq: The Young sequence.
        family: The interval family J.
        rel_tol: Bracket tolerance. Defaults to SCHRAMM_BV_REL_TOL.
        budget: Node budget passed to the variation engine.

    Returns:
        SeminormValue whose value is the final λ_hi (exactly 0 when every
        increment over J vanishes).

    Raises:
        BudgetExceeded: Propagated from the variation engine.
    """
    family.check_grid(x)
    if all(x.increment(i) == 0.0 for i in family):
        return SeminormValue(0.0)
    tol = rel_tol if rel_tol is not None else get_rel_tol()
    evaluations = 0

    def feasible(lam: float) -> bool:
        nonlocal evaluations
        evaluations += 1
        scaled = x.scaled(1.0 / lam)
        value = variation_over_family(scaled, seq, family, budget=budget).value
        return value <= 1.0

    lo, hi = _bisect_scale(feasible, tol)
    logger.debug(
        "Luxemburg bracket [%r, %r] after %d evaluations", lo, hi, evaluations
    )
    return SeminormValue(hi, (lo, hi), evaluations)


def luxemburg_norm(
    x: GridFunction, seq: YoungSequence, family: IntervalFamily
) -> float:
    """‖x‖_J = |x(0)| + |x|_J."""
    return abs(float(x.values[0])) + luxemburg_seminorm(x, seq, family).value


def schramm_norm(x: GridFunction, seq: YoungSequence) -> float:
    """
    ‖x‖_Φ = |x(0)| + |x|_Φ with J = all_intervals(x).

    Example:
        >>> x = make_grid_function([0, 0.5, 1], [0, 1, 0])
        >>> round(schramm_norm(x, jordan()), 9)
        2.0
    """
    return luxemburg_norm(x, seq, all_intervals(x))


def luxemburg_dual_formula(
    x: GridFunction,
    seq: YoungSequence,
    family: IntervalFamily,
    rel_tol: float | None = None,
    budget: int | None = None,
) -> float:
    """
    |x|_J as max over selections S of inf{λ : Σ φ_n(|x(I_n)|/λ) <= 1}.

    Each inner infimum is found by bisection with the optimal assignment
    at every trial λ. Selections whose infimum cannot beat the running
    maximum are skipped after one feasibility test.

    Raises:
        BudgetExceeded: More selections than the budget allows.
    """
    family.check_grid(x)
    tol = rel_tol if rel_tol is not None else get_rel_tol()
    limit = budget or get_node_budget()
    intervals = sorted(i for i in family if x.increment(i) != 0.0)
    best = 0.0
    for count, sel in enumerate(iter_selections(intervals), start=1):
        if count > limit:
            raise BudgetExceeded(
                f"dual formula exceeded {limit} selections", count, limit
            )
        if not sel:
            continue
        d = np.array([abs(x.increment(i)) for i in sel], dtype=float)

        def feasible(lam: float, d: np.ndarray = d) -> bool:
            return assignment_value(seq, d / lam)[0] <= 1.0

        if best > 0.0 and feasible(best):
            continue
        _, hi = _bisect_scale(feasible, tol)
        best = max(best, hi)
    return best


def sup_norm_bound_constant(seq: YoungSequence) -> float:
    """
    c_Φ = max{1, φ_1^{-1}(1)}, so that max|x| <= c_Φ·‖x‖_Φ.

    Example:
        >>> sup_norm_bound_constant(waterman([0.25]))
        4.0
    """
    return max(1.0, young_inverse(seq, 1, 1.0))
