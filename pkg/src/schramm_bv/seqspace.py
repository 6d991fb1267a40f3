"""Concrete seminorm families on sequence spaces and on C[0, 1].

Provides:
- TruncatedSequence: head ξ_1..ξ_N plus a certified tail bound
- lp_seminorm() / lp_tail() / lp_norm() / lp_defect(): prefix seminorms of
  l^p (p may be infinite for c_0)
- lp_compactness_check(): tail criterion for relative compactness in l^p
- power_mean_inequality_check(): (a+b)^p <= a^p + p·b·(a+b)^(p−1)
- PrefixSeminormFamily: l^p prefixes as a seminorm family (join = max)
- DensePointFamily / dense_order() / cX_seminorm() / cX_defect():
  point-evaluation seminorms of C[0, 1]
- equicontinuity_modulus(): max |x(t) − x(s)| over |t − s| <= δ
- counterexample_suite(): the unit-vector, convex-hull and c_00 rows

Every reported tail includes the certified bound, so verdicts err on the
FAIL side.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from .config import get_head_length
from .core import (
    BadGrid,
    GridFunction,
    MixedGrids,
    SchrammError,
    require_common_grid,
)

logger = logging.getLogger(__name__)

# Grid distances within this slack of δ count as <= δ
DISTANCE_SLACK = 1e-12


class IndexBeyondHead(SchrammError):
    """Raised when a prefix index exceeds the stored head."""

    def __init__(self, message: str, index: int = 0, head_length: int = 0):
        super().__init__(message)
        self.index = index
        self.head_length = head_length


class MixedExponents(SchrammError):
    """Raised when sequences of one set carry different exponents."""


class PointNotOnGrid(SchrammError):
    """Raised when a point-family member is not a grid point."""

    def __init__(self, message: str, point: float = 0.0):
        super().__init__(message)
        self.point = point


# ========== l^p ==========


@dataclass(frozen=True, eq=False)
class TruncatedSequence:
    """ξ_1..ξ_N with a certified bound on the l^p norm of the rest."""

    head: np.ndarray
    tail_bound: float = 0.0
    p: float = 1.0

    def __post_init__(self) -> None:
        head = np.array(self.head, dtype=float)
        if head.ndim != 1 or not np.all(np.isfinite(head)):
            raise ValueError("head must be a finite 1-d array")
        if self.tail_bound < 0:
            raise ValueError(f"tail_bound must be >= 0, got {self.tail_bound}")
        if not self.p >= 1:
            raise ValueError(f"exponent p must be >= 1, got {self.p}")
        head.flags.writeable = False
        object.__setattr__(self, "head", head)

    @property
    def length(self) -> int:
        return len(self.head)

    def __sub__(self, other: TruncatedSequence) -> TruncatedSequence:
        _require_common([self, other])
        return TruncatedSequence(
            self.head - other.head, self.tail_bound + other.tail_bound, self.p
        )

    def scaled(self, c: float) -> TruncatedSequence:
        return TruncatedSequence(
            c * self.head, abs(c) * self.tail_bound, self.p
        )

    def to_dict(self) -> dict:
        return {
            "p": "inf" if math.isinf(self.p) else self.p,
            "head": self.head.tolist(),
            "tail_bound": self.tail_bound,
        }


def _pnorm(values: np.ndarray, p: float) -> float:
    a = np.abs(values)
    if a.size == 0:
        return 0.0
    if math.isinf(p):
        return float(np.max(a))
    return float(np.sum(a**p) ** (1.0 / p))


def _check_index(x: TruncatedSequence, i: int) -> None:
    if i < 0 or i > x.length:
        raise IndexBeyondHead(
            f"index {i} outside head of length {x.length}", i, x.length
        )


def lp_seminorm(x: TruncatedSequence, i: int) -> float:
    """
    ‖x‖_i = (Σ_{k<=i} |ξ_k|^p)^{1/p}, or max_{k<=i} |ξ_k| for p = inf.

    Raises:
        IndexBeyondHead: i > N.
    """
    _check_index(x, i)
    return _pnorm(x.head[:i], x.p)


def lp_tail(x: TruncatedSequence, n: int) -> float:
    """
    Upper bound on (Σ_{k>n} |ξ_k|^p)^{1/p} honoring the tail certificate.

    Raises:
        IndexBeyondHead: n > N.
    """
    _check_index(x, n)
    rest = x.head[n:]
    if math.isinf(x.p):
        return max(_pnorm(rest, x.p), x.tail_bound)
    total = float(np.sum(np.abs(rest) ** x.p)) + x.tail_bound**x.p
    return total ** (1.0 / x.p)


def lp_norm(x: TruncatedSequence) -> float:
    """Head plus tail bound: an upper bound on ‖x‖_p."""
    return lp_tail(x, 0)


def _require_common(members: Sequence[TruncatedSequence]) -> None:
    if not members:
        return
    if len({m.p for m in members}) > 1:
        raise MixedExponents("sequences carry different exponents")
    if len({m.length for m in members}) > 1:
        raise MixedGrids("sequences carry different head lengths")


def lp_defect(members: Sequence[TruncatedSequence], i: int) -> float:
    """max over the set of ‖x‖ − ‖x‖_i."""
    _require_common(members)
    return max(
        (lp_norm(x) - lp_seminorm(x, i) for x in members), default=0.0
    )


@dataclass
class LpCheck:
    """Result of the l^p tail criterion at one ε."""

    eps: float
    witness: int | None
    tails: list[float] = field(default_factory=list)

    @property
    def success(self) -> bool:
        return self.witness is not None

    def to_dict(self) -> dict:
        return {
            "eps": self.eps,
            "witness": self.witness if self.success else "FAIL",
        }


def lp_compactness_check(
    members: Sequence[TruncatedSequence], eps: float
) -> LpCheck:
    """
    Smallest n < N with max over the set of lp_tail(·, n) <= eps.

    n = N is never accepted: past the head only the certificate is known,
    so such a witness carries no information (FAIL-at-head-length).

    Raises:
        MixedExponents: Members carry different exponents.
        MixedGrids: Members carry different head lengths.
    """
    _require_common(members)
    if not members:
        return LpCheck(eps, 0)
    length = members[0].length
    tails: list[float] = []
    for n in range(length):
        worst = max(lp_tail(x, n) for x in members)
        tails.append(worst)
        if worst <= eps:
            return LpCheck(eps, n, tails)
    logger.info("l^p criterion failed at head length %d", length)
    return LpCheck(eps, None, tails)


def power_mean_inequality_check(a: float, b: float, p: float) -> bool:
    """
    True iff (a+b)^p <= a^p + p·b·(a+b)^{p−1} within 1e-12 relative slack.

    Example:
        >>> power_mean_inequality_check(1.0, 1.0, 2.0)
        True
    """
    lhs = (a + b) ** p
    rhs = a**p + p * b * (a + b) ** (p - 1)
    return lhs <= rhs + 1e-12 * max(1.0, abs(rhs))


@dataclass
class PrefixSeminormFamily:
    """l^p prefix seminorms indexed by i; the join is max(i, j)."""

    tolerance: float = 0.0

    def norm(self, sample: TruncatedSequence) -> float:
        return lp_norm(sample)

    def seminorm(self, sample: TruncatedSequence, index: int) -> float:
        return lp_seminorm(sample, index)

    def join(self, i: int, j: int) -> int:
        return max(i, j)


# ========== C[0, 1] ==========


@dataclass(frozen=True, eq=False)
class DensePointFamily:
    """Distinct points of [0, 1] at which functions are evaluated."""

    points: np.ndarray

    def __post_init__(self) -> None:
        pts = np.array(self.points, dtype=float).reshape(-1)
        if np.any((pts < 0) | (pts > 1)):
            raise BadGrid("points must lie in [0, 1]")
        if len(np.unique(pts)) != len(pts):
            raise BadGrid("points must be pairwise distinct")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)


def dense_order(grid: np.ndarray) -> list[int]:
    """
    Grid indices ordered endpoints first, then by repeated bisection.

    Prefixes of this order are the nested point families of the C[0, 1]
    criterion.

    Example:
        >>> dense_order(np.linspace(0, 1, 5))
        [0, 4, 2, 1, 3]
    """
    last = len(grid) - 1
    order = [0, last] if last > 0 else [0]
    pending: deque[tuple[int, int]] = deque([(0, last)])
    while pending:
        lo, hi = pending.popleft()
        if hi - lo < 2:
            continue
        mid = (lo + hi) // 2
        order.append(mid)
        pending.append((lo, mid))
        pending.append((mid, hi))
    return order


def dense_family(grid: np.ndarray, size: int) -> DensePointFamily:
    """The first ``size`` points of dense_order(grid)."""
    order = dense_order(grid)[:size]
    return DensePointFamily(np.asarray(grid)[order])


def _grid_indices(x: GridFunction, points: Iterable[float]) -> list[int]:
    indices = []
    for t in points:
        k = int(np.searchsorted(x.grid, t))
        if k >= len(x.grid) or x.grid[k] != t:
            raise PointNotOnGrid(f"point {t} is not on the grid", float(t))
        indices.append(k)
    return indices


def cX_seminorm(x: GridFunction, family: DensePointFamily) -> float:
    """
    ‖x‖_F = max over the points of F of |x(t_j)|.

    Raises:
        PointNotOnGrid: A point of F is not a grid point of x.
    """
    indices = _grid_indices(x, family.points)
    if not indices:
        return 0.0
    return float(np.max(np.abs(x.values[indices])))


def cX_defect(
    members: Sequence[GridFunction], family: DensePointFamily
) -> float:
    """max over the set of sup|x| − ‖x‖_F."""
    require_common_grid(members)
    return max(
        (
            float(np.max(np.abs(x.values))) - cX_seminorm(x, family)
            for x in members
        ),
        default=0.0,
    )


def equicontinuity_modulus(
    members: Sequence[GridFunction], delta: float
) -> float:
    """
    max over x and grid pairs with |t_i − t_j| <= δ of |x(t_i) − x(t_j)|.

    Raises:
        MixedGrids: Members do not share a grid.
    """
    require_common_grid(members)
    if not members:
        return 0.0
    grid = members[0].grid
    close = np.abs(grid[:, None] - grid[None, :]) <= delta + DISTANCE_SLACK
    worst = 0.0
    for x in members:
        jumps = np.abs(x.values[:, None] - x.values[None, :])
        worst = max(worst, float(np.max(jumps[close])))
    return worst


# ========== Counterexamples ==========


@dataclass
class SuiteRow:
    """One recomputed quantity of the counterexample suite."""

    name: str
    quantity: str
    expected: float
    computed: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "quantity": self.quantity,
            "expected": self.expected,
            "computed": self.computed,
            "status": "PASS" if self.passed else "FAIL",
        }


def _unit(k: int, length: int) -> TruncatedSequence:
    head = np.zeros(length)
    head[k - 1] = 1.0
    return TruncatedSequence(head, 0.0, math.inf)


def _row(
    name: str, quantity: str, expected: float, values: list[float]
) -> SuiteRow:
    worst = max(values, key=lambda v: abs(v - expected), default=expected)
    passed = all(v == expected for v in values)
    return SuiteRow(name, quantity, expected, worst, passed)


def counterexample_suite(length: int | None = None) -> list[SuiteRow]:
    """
    Recompute the quoted values of three sup-norm counterexamples.

    - unit vectors e_k of c_0: ‖e_k‖ − ‖e_k‖_i = 1 for every i < k
    - convex hull of y_k = e_1 + ... + e_k: ½y_{i+1} − ½y_i has sup norm ½
      and prefix-i seminorm 0
    - c_00 partial sums x_k = (1, ½, ..., 1/k): ‖x_m − x_l‖ = 1/(l+1)

    Args:
        length: Head length N. Defaults to SCHRAMM_BV_HEAD_LENGTH.

    Returns:
        Rows with expected and worst computed value; failures are rows.
    """
    n = length or get_head_length()
    units = [_unit(k, n) for k in range(1, n + 1)]
    defects = [
        lp_norm(units[k - 1]) - lp_seminorm(units[k - 1], i)
        for k in range(2, n + 1)
        for i in range(1, k)
    ]
    rows = [_row("unit vectors", "‖e_k‖ − ‖e_k‖_i, i < k", 1.0, defects)]

    partial = [np.cumsum(u.head) for u in units]
    hull_sup, hull_prefix = [], []
    for i in range(1, n):
        step = TruncatedSequence(
            0.5 * partial[i] - 0.5 * partial[i - 1], 0.0, math.inf
        )
        hull_sup.append(lp_norm(step))
        hull_prefix.append(lp_seminorm(step, i))
    rows.append(_row("convex hull", "‖½y_{i+1} − ½y_i‖", 0.5, hull_sup))
    rows.append(
        _row("convex hull", "‖½y_{i+1} − ½y_i‖_i", 0.0, hull_prefix)
    )

    harmonic = 1.0 / np.arange(1, n + 1)
    positions = np.arange(n)
    sums = [
        TruncatedSequence(np.where(positions < k, harmonic, 0.0), 0.0, math.inf)
        for k in range(1, n + 1)
    ]
    deviations = [
        abs(lp_norm(sums[m - 1] - sums[low - 1]) - 1.0 / (low + 1))
        for low in range(1, n)
        for m in range(low + 1, n + 1)
    ]
    rows.append(
        _row("c_00", "|‖x_m − x_l‖ − 1/(l+1)|, l < m", 0.0, deviations)
    )
    logger.debug("Counterexample suite: %d rows", len(rows))
    return rows
