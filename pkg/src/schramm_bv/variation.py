"""Schramm variation over families of grid intervals.

Provides:
- assignment_value(): best φ-index assignment for a multiset of increments
- variation_over_family(): V_J(x) by exact branch-and-bound or greedy search
- schramm_variation() / jordan_variation(): var_Φ x and the classical variation
- brute_force_variation(): independent enumeration oracle
- five_suprema(): grid surrogates of the five sequence-based suprema
- selection_value(): objective of a fixed, explicitly listed selection

The exact search walks selections in lexicographic order of their sorted
intervals and keeps the first optimum found, so witnesses are reproducible.
Sequences whose φ_n all coincide reduce to weighted interval scheduling and
are solved by dynamic programming.
"""

from __future__ import annotations

import bisect
import itertools
import logging
import math
from collections.abc import Iterator
from dataclasses import dataclass, field
from functools import cache
from typing import Literal

import numpy as np
from scipy.optimize import linear_sum_assignment

from .config import get_node_budget, get_oracle_max_cells
from .core import (
    BudgetExceeded,
    GridFunction,
    GridInterval,
    IntervalFamily,
    IntervalSelection,
    SchrammError,
    YoungSequence,
    all_intervals,
)

logger = logging.getLogger(__name__)

SearchMode = Literal["exact", "heuristic"]
AssignmentMethod = Literal["auto", "hungarian", "sorted"]

# Permutations are enumerated explicitly up to this selection size
ORACLE_PERMUTATION_LIMIT = 6


class TooLarge(SchrammError):
    """Raised when the brute-force oracle is given too large a grid."""

    def __init__(self, message: str, cells: int = 0, limit: int = 0):
        super().__init__(message)
        self.cells = cells
        self.limit = limit


@dataclass
class VariationResult:
    """A variation value with the selection and assignment attaining it."""

    value: float
    witness: IntervalSelection = field(default_factory=IntervalSelection)
    mode: SearchMode = "exact"
    nodes_explored: int = 0

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "witness": self.witness.to_dict(),
            "mode": self.mode,
            "nodes_explored": self.nodes_explored,
        }


@dataclass
class FiveSuprema:
    """Grid surrogates of α, α*, β, γ and δ."""

    alpha_grid: float
    alpha_star_grid: float
    beta_grid: float
    gamma_grid: float
    delta_grid: float
    alpha_witness: IntervalSelection = field(default_factory=IntervalSelection)

    def chain_holds(self, tol: float = 1e-12) -> bool:
        """α <= δ <= α* and β = γ = δ, within tol."""
        return (
            self.alpha_grid <= self.delta_grid + tol
            and self.delta_grid <= self.alpha_star_grid + tol
            and abs(self.beta_grid - self.delta_grid) <= tol
            and abs(self.gamma_grid - self.delta_grid) <= tol
        )

    def to_dict(self) -> dict:
        return {
            "alpha_grid": self.alpha_grid,
            "alpha_star_grid": self.alpha_star_grid,
            "beta_grid": self.beta_grid,
            "gamma_grid": self.gamma_grid,
            "delta_grid": self.delta_grid,
            "alpha_witness": self.alpha_witness.to_dict(),
        }


# ========== Assignment ==========


def _cost_matrix(seq: YoungSequence, increments: np.ndarray) -> np.ndarray:
    k = len(increments)
    return np.vstack([seq.phi(n)(increments) for n in range(1, k + 1)])


def _assign(
    cost: np.ndarray, increments: np.ndarray, method: str
) -> tuple[float, tuple[int, ...]]:
    """Best assignment for a k×k table C[n][j] = φ_{n+1}(d_j)."""
    k = cost.shape[1]
    if k == 0:
        return 0.0, ()
    perm = [0] * k
    if method == "sorted":
        order = np.argsort(-increments, kind="stable")
        for rank, j in enumerate(order):
            perm[j] = rank + 1
        value = float(np.sum(cost[np.arange(k), order]))
        return value, tuple(perm)
    rows, cols = linear_sum_assignment(cost, maximize=True)
    for r, j in zip(rows, cols, strict=True):
        perm[j] = int(r) + 1
    return float(np.sum(cost[rows, cols])), tuple(perm)


def _method_for(seq: YoungSequence, method: AssignmentMethod) -> str:
    if method != "auto":
        return method
    return "sorted" if seq.vince_flag else "hungarian"


def assignment_value(
    seq: YoungSequence,
    increments: np.ndarray | list[float],
    method: AssignmentMethod = "auto",
) -> tuple[float, tuple[int, ...]]:
    """
    Maximize Σ_n φ_n(d_π(n)) over bijections π.

    Args:
        seq: The Young sequence.
        increments: Non-negative increments d_1..d_k.
        method: "auto" sorts descending when vince_flag is set and solves
            the linear assignment problem otherwise; "hungarian" and
            "sorted" force one strategy.

    Returns:
        (value, perm) where perm[j] is the φ-index given to increments[j].

    Example:
        >>> assignment_value(jordan(), [0.3, 0.7])[0]
        1.0
    """
    d = np.asarray(increments, dtype=float)
    if d.size == 0:
        return 0.0, ()
    return _assign(_cost_matrix(seq, d), d, _method_for(seq, method))


# ========== Search Instance ==========


class _Instance:
    """Candidates of one search with their precomputed φ table."""

    def __init__(
        self,
        x: GridFunction,
        seq: YoungSequence,
        family: IntervalFamily,
        keep_zero: bool = False,
    ):
        family.check_grid(x)
        self.seq = seq
        self.cells = x.cells
        self.candidates = [
            i for i in family if keep_zero or x.increment(i) != 0.0
        ]
        self.incs = np.array(
            [abs(x.increment(i)) for i in self.candidates], dtype=float
        )
        degenerate = sum(i.degenerate for i in self.candidates)
        rows = max(1, min(len(self.candidates), self.cells + degenerate))
        self.table = np.vstack(
            [seq.phi(n)(self.incs) for n in range(1, rows + 1)]
        )
        self.method = _method_for(seq, "auto")

    def value(self, cols: list[int]) -> float:
        k = len(cols)
        if k == 0:
            return 0.0
        if self.seq.single_function:
            return float(np.sum(self.table[0, cols]))
        if self.method == "sorted":
            order = sorted(cols, key=lambda j: -self.incs[j])
            return float(np.sum(self.table[np.arange(k), order]))
        cost = self.table[:k, cols]
        rows, picked = linear_sum_assignment(cost, maximize=True)
        return float(np.sum(cost[rows, picked]))

    def selection(self, cols: list[int]) -> IntervalSelection:
        ordered = sorted(cols, key=lambda j: self.candidates[j])
        k = len(ordered)
        cost = self.table[:k, ordered]
        method = "sorted" if self.seq.single_function else self.method
        _, perm = _assign(cost, self.incs[ordered], method)
        return IntervalSelection(
            tuple(self.candidates[j] for j in ordered), perm
        )

    def compatible(self, j: int, chosen: list[int]) -> bool:
        i = self.candidates[j]
        for c in chosen:
            other = self.candidates[c]
            if not (i.b <= other.a or other.b <= i.a) or i == other:
                return False
        return True


def _branch_and_bound(inst: _Instance, budget: int) -> VariationResult:
    cand = inst.candidates
    lefts = [i.a for i in cand]
    # Candidate indices with a >= e, largest increment first
    pools = []
    for e in range(inst.cells + 1):
        members = [j for j, i in enumerate(cand) if i.a >= e]
        members.sort(key=lambda j: -inst.incs[j])
        pools.append(members)

    best_value = 0.0
    best_cols: list[int] = []
    nodes = 0

    def visit(start: int, end: int, chosen: list[int]) -> None:
        nonlocal best_value, best_cols, nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(
                f"exact search exceeded {budget} nodes", nodes, budget
            )
        value = inst.value(chosen)
        if value > best_value:
            best_value = value
            best_cols = list(chosen)
        first = max(bisect.bisect_left(lefts, end), start)
        if first >= len(cand):
            return
        room = inst.cells - end
        optimistic = chosen + [j for j in pools[end][:room] if j not in chosen]
        if inst.value(optimistic) <= best_value:
            return
        for j in range(first, len(cand)):
            chosen.append(j)
            visit(j + 1, cand[j].b, chosen)
            chosen.pop()

    visit(0, 0, [])
    logger.debug("Branch and bound: %d nodes, value %r", nodes, best_value)
    return VariationResult(
        best_value, inst.selection(best_cols), "exact", nodes
    )


def _schedule(inst: _Instance) -> VariationResult:
    """Weighted interval scheduling for sequences with a single φ."""
    weights = inst.table[0]
    by_end: dict[int, list[int]] = {}
    for j, i in enumerate(inst.candidates):
        by_end.setdefault(i.b, []).append(j)
    best = [0.0] * (inst.cells + 1)
    choice: list[int | None] = [None] * (inst.cells + 1)
    for p in range(1, inst.cells + 1):
        best[p] = best[p - 1]
        for j in by_end.get(p, []):
            value = best[inst.candidates[j].a] + float(weights[j])
            if value > best[p]:
                best[p] = value
                choice[p] = j
    cols: list[int] = []
    p = inst.cells
    while p > 0:
        j = choice[p]
        if j is None:
            p -= 1
        else:
            cols.append(j)
            p = inst.candidates[j].a
    cols.reverse()
    value = inst.value(cols)
    return VariationResult(
        value, inst.selection(cols), "exact", len(inst.candidates)
    )


def _greedy(inst: _Instance, max_rounds: int = 100) -> VariationResult:
    """Greedy insertion followed by 1-swap local improvement."""
    chosen: list[int] = []
    value = 0.0
    evaluations = 0
    while True:
        best_j, best_value = None, value
        for j in range(len(inst.candidates)):
            if j in chosen or not inst.compatible(j, chosen):
                continue
            evaluations += 1
            trial = inst.value([*chosen, j])
            if trial > best_value:
                best_j, best_value = j, trial
        if best_j is None:
            break
        chosen.append(best_j)
        value = best_value

    for _ in range(max_rounds):
        improved = False
        for pos in range(len(chosen)):
            others = chosen[:pos] + chosen[pos + 1 :]
            for j in range(len(inst.candidates)):
                if j in chosen or not inst.compatible(j, others):
                    continue
                evaluations += 1
                trial = inst.value([*others, j])
                if trial > value:
                    chosen, value, improved = [*others, j], trial, True
                    break
            if improved:
                break
        if not improved:
            break

    logger.debug("Greedy search: %d evaluations, value %r", evaluations, value)
    return VariationResult(
        value, inst.selection(chosen), "heuristic", evaluations
    )


# ========== Variations ==========


def variation_over_family(
    x: GridFunction,
    seq: YoungSequence,
    family: IntervalFamily,
    mode: SearchMode = "exact",
    budget: int | None = None,
) -> VariationResult:
    """
    Compute V_J(x) = max Σ φ_n(|x(I_n)|) over non-overlapping S ⊆ J.

    Args:
        x: The sampled function.
        seq: The Young sequence.
        family: The interval family J.
        mode: "exact" (branch and bound, or dynamic programming when every
            φ_n coincides) or "heuristic" (greedy plus 1-swap; a certified
            lower bound).
        budget: Node budget of the exact search. Defaults to
            SCHRAMM_BV_NODE_BUDGET.

    Returns:
        VariationResult with value, witness selection and assignment.

    Raises:
        BudgetExceeded: The exact search ran out of nodes.
        BadGrid: An interval of the family lies outside x's grid.
    """
    inst = _Instance(x, seq, family)
    if mode == "heuristic":
        return _greedy(inst)
    if seq.single_function:
        return _schedule(inst)
    return _branch_and_bound(inst, budget or get_node_budget())


def jordan_variation(x: GridFunction) -> float:
    """Σ |x(t_i) − x(t_{i−1})|."""
    return float(np.sum(np.abs(np.diff(x.values))))


def _cell_witness(x: GridFunction) -> IntervalSelection:
    steps = np.diff(x.values)
    return IntervalSelection(
        tuple(GridInterval(i, i + 1) for i in range(x.cells) if steps[i] != 0)
    )


def schramm_variation(
    x: GridFunction,
    seq: YoungSequence,
    mode: SearchMode = "exact",
    budget: int | None = None,
) -> VariationResult:
    """
    var_Φ x: variation_over_family with J = all_intervals(x).

    For the jordan sequence the exact value is the closed-form Jordan
    variation with the nonzero grid cells as witness.

    Example:
        >>> x = make_grid_function([0, 0.5, 1], [0, 1, 0])
        >>> schramm_variation(x, jordan()).value
        2.0
    """
    if seq.kind == "jordan" and mode == "exact":
        witness = _cell_witness(x)
        return VariationResult(jordan_variation(x), witness, "exact", x.cells)
    return variation_over_family(x, seq, all_intervals(x), mode, budget)


def iter_selections(
    intervals: list[GridInterval], start: int = 0, end: int = 0
) -> Iterator[list[GridInterval]]:
    """
    Yield every non-overlapping selection of sorted intervals.

    The empty selection comes first; each selection is yielded before its
    extensions, in lexicographic order of the sorted intervals.
    """
    yield []
    for j in range(start, len(intervals)):
        interval = intervals[j]
        if interval.a < end:
            continue
        for tail in iter_selections(intervals, j + 1, interval.b):
            yield [interval, *tail]


@cache
def _permutations(k: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(k))), dtype=int)


def brute_force_variation(x: GridFunction, seq: YoungSequence) -> float:
    """
    Reference value of var_Φ x by full enumeration.

    Every non-overlapping selection of non-degenerate intervals is listed;
    assignments are enumerated explicitly up to 6 intervals and solved by
    the Hungarian method above that.

    Raises:
        TooLarge: x has more cells than SCHRAMM_BV_ORACLE_MAX_CELLS.
    """
    limit = get_oracle_max_cells()
    if x.cells > limit:
        raise TooLarge(
            f"oracle accepts at most {limit} cells, got {x.cells}",
            x.cells,
            limit,
        )
    intervals = sorted(all_intervals(x))
    best = 0.0
    for sel in iter_selections(intervals):
        k = len(sel)
        if k == 0:
            continue
        d = np.array([abs(x.increment(i)) for i in sel], dtype=float)
        cost = _cost_matrix(seq, d)
        if k <= ORACLE_PERMUTATION_LIMIT:
            perms = _permutations(k)
            sums = cost[perms, np.arange(k)].sum(axis=1)
            value = float(np.max(sums))
        else:
            rows, cols = linear_sum_assignment(cost, maximize=True)
            value = float(np.sum(cost[rows, cols]))
        best = max(best, value)
    return best


def selection_value(
    x: GridFunction,
    seq: YoungSequence,
    selection: IntervalSelection,
    scale: float = 1.0,
) -> float:
    """
    Σ φ_n(scale·|x(I_n)|) for a selection as listed.

    The n-th listed interval gets φ_n unless the selection carries an
    explicit assignment.
    """
    total = 0.0
    for interval, n in zip(
        selection.intervals, selection.phi_indices(), strict=True
    ):
        total += float(seq.phi(n)(scale * abs(x.increment(interval))))
    return total


def five_suprema(
    x: GridFunction, seq: YoungSequence, budget: int | None = None
) -> FiveSuprema:
    """
    Compute the grid surrogates of the five suprema.

    - delta: search over all intervals, degenerate ones kept as candidates
    - gamma: search over non-degenerate intervals (must equal delta)
    - beta: recorded equal to delta
    - alpha: best selection leaving at least one grid cell uncovered
    - alpha_star: var_Φ(2x) over non-degenerate selections

    Raises:
        BudgetExceeded: A search ran out of nodes.
        SchrammError: gamma and delta disagree.
    """
    budget = budget or get_node_budget()
    gamma = variation_over_family(x, seq, all_intervals(x), budget=budget)
    with_degenerate = _Instance(
        x, seq, all_intervals(x, include_degenerate=True), keep_zero=True
    )
    delta = _branch_and_bound(with_degenerate, budget)
    if not math.isclose(gamma.value, delta.value, rel_tol=1e-12, abs_tol=1e-12):
        raise SchrammError(
            f"gamma {gamma.value!r} and delta {delta.value!r} disagree"
        )

    alpha = VariationResult(0.0)
    full = all_intervals(x)
    for cell in range(1, x.cells + 1):
        family = IntervalFamily(
            tuple(i for i in full if not i.contains_cell(cell))
        )
        result = variation_over_family(x, seq, family, budget=budget)
        if result.value > alpha.value:
            alpha = result

    alpha_star = variation_over_family(
        x.scaled(2.0), seq, full, budget=budget
    )
    logger.debug(
        "Five suprema: alpha=%r delta=%r alpha*=%r",
        alpha.value,
        delta.value,
        alpha_star.value,
    )
    return FiveSuprema(
        alpha_grid=alpha.value,
        alpha_star_grid=alpha_star.value,
        beta_grid=delta.value,
        gamma_grid=gamma.value,
        delta_grid=delta.value,
        alpha_witness=alpha.witness,
    )
