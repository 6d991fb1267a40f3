"""Domain types shared by every other module.

Provides:
- PowerYoung / TableYoung: single Young functions (closed form or knot table)
- YoungSequence: a validated non-increasing sequence (φ_n) of Young functions
- make_young_sequence() and the jordan/wiener/young/waterman/custom builders
- young_eval() / young_inverse(): evaluate and invert φ_n
- GridFunction / make_grid_function(): functions sampled on a grid of [0, 1]
- random_grid_function(): seeded random instances
- GridInterval, IntervalFamily, IntervalSelection: interval machinery
- all_intervals() / is_nonoverlapping()
- SchrammError and the error types shared across modules

All values are immutable after construction. Function semantics are
"values at grid points only": suprema are taken over grid endpoints.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from typing import Literal, NamedTuple, Protocol

import numpy as np

from .config import (
    get_inverse_cap,
    get_inverse_tol,
    get_validation_points,
    get_validation_tmax,
)

logger = logging.getLogger(__name__)

YoungKind = Literal["jordan", "wiener", "young", "waterman", "custom"]

# Slack for the finite-difference Young checks (relative to value scale)
VALIDATION_SLACK = 1e-12


# ========== Errors ==========


class SchrammError(Exception):
    """Base class for every error raised by schramm_bv."""


class InvalidYoung(SchrammError):
    """Raised when a Young sequence fails validation."""

    def __init__(
        self, message: str, index: int | None = None, point: float | None = None
    ):
        super().__init__(message)
        self.index = index
        self.point = point


class OutOfRange(SchrammError):
    """Raised when a Young inverse target exceeds φ_n at the bracket cap."""

    def __init__(self, message: str, value: float = 0.0, cap: float = 0.0):
        super().__init__(message)
        self.value = value
        self.cap = cap


class BadGrid(SchrammError):
    """Raised for unsorted grids, wrong endpoints or non-finite values."""


class MixedGrids(SchrammError):
    """Raised when functions that must share a grid do not."""


class BudgetExceeded(SchrammError):
    """Raised when an exact search exceeds its node budget."""

    def __init__(self, message: str, nodes: int = 0, budget: int = 0):
        super().__init__(message)
        self.nodes = nodes
        self.budget = budget


# ========== Young Functions ==========


class YoungFunction(Protocol):
    """A convex non-decreasing function on [0, inf) vanishing at 0."""

    def __call__(self, t: np.ndarray | float) -> np.ndarray: ...

    def knots(self) -> tuple[float, ...]: ...

    def to_dict(self) -> dict: ...


@dataclass(frozen=True)
class PowerYoung:
    """
    The closed form ``scale * t**p``.

    With ``knee`` set, the function continues tangentially (linearly) above
    the knee, so ``PowerYoung(1, 2, knee=1)`` is t² on [0, 1] and 2t − 1
    beyond.
    """

    scale: float = 1.0
    p: float = 1.0
    knee: float | None = None

    def __call__(self, t: np.ndarray | float) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if self.knee is None:
            return self.scale * t**self.p
        k = self.knee
        base = self.scale * k**self.p
        slope = self.scale * self.p * k ** (self.p - 1)
        inside = self.scale * np.minimum(t, k) ** self.p
        return np.where(t <= k, inside, base + slope * (t - k))

    def knots(self) -> tuple[float, ...]:
        return () if self.knee is None else (self.knee,)

    def to_dict(self) -> dict:
        data: dict = {"scale": self.scale, "p": self.p}
        if self.knee is not None:
            data["knee"] = self.knee
        return data


@dataclass(frozen=True)
class TableYoung:
    """
    A Young function given by knots and values, interpolated linearly.

    Above the last knot the last segment's slope continues.
    """

    knots_: tuple[float, ...]
    values: tuple[float, ...]

    def __call__(self, t: np.ndarray | float) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        xs = np.asarray(self.knots_)
        ys = np.asarray(self.values)
        slope = (ys[-1] - ys[-2]) / (xs[-1] - xs[-2])
        inside = np.interp(t, xs, ys)
        return np.where(t <= xs[-1], inside, ys[-1] + slope * (t - xs[-1]))

    def knots(self) -> tuple[float, ...]:
        return self.knots_

    def to_dict(self) -> dict:
        return {"knots": list(self.knots_), "values": list(self.values)}


def make_table(knots: Sequence[float], values: Sequence[float]) -> TableYoung:
    """
    Build a knot table, checking its shape.

    Raises:
        InvalidYoung: Fewer than two knots, knots not strictly increasing,
            first knot not 0, or mismatched lengths.
    """
    xs = tuple(float(k) for k in knots)
    ys = tuple(float(v) for v in values)
    if len(xs) != len(ys) or len(xs) < 2:
        raise InvalidYoung("table needs matching knots/values, at least 2")
    if xs[0] != 0.0 or any(b <= a for a, b in zip(xs, xs[1:], strict=False)):
        raise InvalidYoung("table knots must start at 0 and increase")
    return TableYoung(xs, ys)


@dataclass(frozen=True)
class YoungSequence:
    """
    A validated non-increasing sequence of Young functions.

    ``functions[n-1]`` is φ_n; for n beyond ``n_effective`` the last
    function repeats. Build through make_young_sequence() or the builders,
    which validate and set ``vince_flag``.
    """

    kind: YoungKind
    functions: tuple[YoungFunction, ...]
    vince_flag: bool = False
    p: float | None = None
    weights: tuple[float, ...] | None = None
    # Divergence of sum φ_n(t) is recorded, never checked
    divergent: bool | None = field(default=None, compare=False)

    @property
    def n_effective(self) -> int:
        return len(self.functions)

    @property
    def single_function(self) -> bool:
        """True when every φ_n coincides."""
        return len(self.functions) == 1

    def phi(self, n: int) -> YoungFunction:
        """Return φ_n (1-based)."""
        if n < 1:
            raise ValueError(f"Young index must be >= 1, got {n}")
        return self.functions[min(n, len(self.functions)) - 1]

    def to_dict(self) -> dict:
        data: dict = {"kind": self.kind}
        if self.kind == "wiener":
            data["p"] = self.p
        elif self.kind == "waterman":
            data["weights"] = list(self.weights or ())
        elif self.kind == "young":
            data["phi"] = self.functions[0].to_dict()
        elif self.kind == "custom":
            data["functions"] = [f.to_dict() for f in self.functions]
        return data


def _validation_mesh(functions: Sequence[YoungFunction]) -> np.ndarray:
    mesh = np.linspace(0.0, get_validation_tmax(), get_validation_points())
    knots = [k for f in functions for k in f.knots()]
    return np.unique(np.concatenate([mesh, np.asarray(knots, dtype=float)]))


def _check_function(f: YoungFunction, index: int, mesh: np.ndarray) -> None:
    v = np.asarray(f(mesh), dtype=float)
    if not np.all(np.isfinite(v)):
        bad = int(np.argmin(np.isfinite(v)))
        raise InvalidYoung(
            f"φ_{index} is not finite at t={mesh[bad]}", index, float(mesh[bad])
        )
    scale = max(1.0, float(np.max(np.abs(v))))
    if abs(v[0]) > VALIDATION_SLACK * scale:
        raise InvalidYoung(f"φ_{index}(0) = {v[0]} != 0", index, 0.0)
    steps = np.diff(v)
    if np.any(steps < -VALIDATION_SLACK * scale):
        bad = int(np.argmin(steps))
        raise InvalidYoung(
            f"φ_{index} decreases near t={mesh[bad + 1]}",
            index,
            float(mesh[bad + 1]),
        )
    slopes = steps / np.diff(mesh)
    bends = np.diff(slopes)
    if np.any(bends < -VALIDATION_SLACK * max(1.0, float(np.max(slopes)))):
        bad = int(np.argmin(bends))
        raise InvalidYoung(
            f"φ_{index} is not convex near t={mesh[bad + 1]}",
            index,
            float(mesh[bad + 1]),
        )


def _compress(functions: list[YoungFunction]) -> tuple[YoungFunction, ...]:
    # Trailing repeats carry no information: φ_n is constant beyond them
    while len(functions) > 1 and functions[-1] == functions[-2]:
        functions.pop()
    return tuple(functions)


def make_young_sequence(
    kind: YoungKind,
    *,
    p: float | None = None,
    weights: Sequence[float] | None = None,
    phi: YoungFunction | None = None,
    functions: Sequence[YoungFunction] | None = None,
) -> YoungSequence:
    """
    Build and validate a Young sequence.

    Args:
        kind: One of jordan, wiener, young, waterman, custom.
        p: Exponent for wiener (p >= 1).
        weights: Non-increasing positive weights λ_n for waterman.
        phi: The single Young function for kind young.
        functions: Per-index functions φ_1, φ_2, ... for kind custom.

    Returns:
        A validated YoungSequence with vince_flag set by a finite-difference
        test of φ_{n+1} − φ_n on the validation mesh.

    Raises:
        InvalidYoung: A parameter is missing or invalid, or a function fails
            the φ(0) = 0, monotonicity, convexity or monotone-in-n checks.

    Example:
        >>> seq = make_young_sequence("wiener", p=2)
        >>> young_eval(seq, 1, 2.0)
        4.0
    """
    if kind == "jordan":
        funcs: list[YoungFunction] = [PowerYoung()]
    elif kind == "wiener":
        if p is None or not p >= 1:
            raise InvalidYoung(f"wiener needs p >= 1, got {p}")
        funcs = [PowerYoung(1.0, float(p))]
    elif kind == "young":
        if phi is None:
            raise InvalidYoung("kind young needs a function")
        funcs = [phi]
    elif kind == "waterman":
        lam = [float(w) for w in weights or ()]
        if not lam:
            raise InvalidYoung("waterman needs at least one weight")
        for i, w in enumerate(lam, start=1):
            if not w > 0:
                raise InvalidYoung(f"waterman weight λ_{i} = {w} <= 0", i)
            if i > 1 and w > lam[i - 2]:
                raise InvalidYoung(f"waterman weight λ_{i} increases", i)
        funcs = [PowerYoung(w, 1.0) for w in lam]
    elif kind == "custom":
        if not functions:
            raise InvalidYoung("custom needs at least one function")
        funcs = list(functions)
    else:
        raise InvalidYoung(f"unknown Young kind: {kind!r}")

    compressed = _compress(funcs)
    mesh = _validation_mesh(compressed)
    for i, f in enumerate(compressed, start=1):
        _check_function(f, i, mesh)

    positive = mesh[1:]
    vince = True
    for i in range(len(compressed) - 1):
        upper = np.asarray(compressed[i](positive), dtype=float)
        lower = np.asarray(compressed[i + 1](positive), dtype=float)
        slack = VALIDATION_SLACK * np.maximum(1.0, np.abs(upper))
        above = lower - upper > slack
        if np.any(above):
            bad = int(np.argmax(above))
            raise InvalidYoung(
                f"φ_{i + 2} exceeds φ_{i + 1} at t={positive[bad]}",
                i + 2,
                float(positive[bad]),
            )
        diff = np.asarray(compressed[i + 1](mesh) - compressed[i](mesh))
        if np.any(np.diff(diff) > VALIDATION_SLACK):
            vince = False

    logger.debug(
        "Validated %s sequence: n_effective=%d vince=%s",
        kind,
        len(compressed),
        vince,
    )
    return YoungSequence(
        kind=kind,
        functions=compressed,
        vince_flag=vince,
        p=float(p) if kind == "wiener" and p is not None else None,
        weights=tuple(float(w) for w in weights)
        if kind == "waterman" and weights is not None
        else None,
    )


def jordan() -> YoungSequence:
    """φ_n(t) = t for every n."""
    return make_young_sequence("jordan")


def wiener(p: float) -> YoungSequence:
    """φ_n(t) = t**p for every n."""
    return make_young_sequence("wiener", p=p)


def young(phi: YoungFunction) -> YoungSequence:
    """φ_n = phi for every n."""
    return make_young_sequence("young", phi=phi)


def waterman(weights: Sequence[float]) -> YoungSequence:
    """φ_n(t) = λ_n t; the last weight repeats."""
    return make_young_sequence("waterman", weights=weights)


def custom(functions: Sequence[YoungFunction]) -> YoungSequence:
    """φ_n = functions[n-1]; the last function repeats."""
    return make_young_sequence("custom", functions=functions)


def young_eval(seq: YoungSequence, n: int, t: float) -> float:
    """
    Evaluate φ_min(n, n_effective)(t).

    Raises:
        ValueError: n < 1 or t < 0.
    """
    if t < 0:
        raise ValueError(f"Young argument must be >= 0, got {t}")
    return float(seq.phi(n)(t))


def young_inverse(seq: YoungSequence, n: int, y: float) -> float:
    """
    Invert φ_n by monotone bisection.

    The bracket cap starts at 1 and doubles until φ_n(cap) >= y; bisection
    then runs until the bracket is narrower than SCHRAMM_BV_INVERSE_TOL
    relative to its upper end, or can no longer be split, returning the
    endpoint whose value is closest to y.

    Raises:
        OutOfRange: y exceeds φ_n at the largest allowed cap
            (SCHRAMM_BV_INVERSE_CAP).
    """
    if y < 0:
        raise ValueError(f"Young inverse needs y >= 0, got {y}")
    if y == 0:
        return 0.0
    f = seq.phi(n)
    limit = get_inverse_cap()
    hi = 1.0
    while float(f(hi)) < y:
        hi *= 2.0
        if hi > limit:
            raise OutOfRange(
                f"φ_{n} stays below {y} up to the cap {limit}", y, limit
            )
    lo = 0.0
    rel_tol = get_inverse_tol()
    for _ in range(2000):
        if hi - lo <= rel_tol * hi:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        value = float(f(mid))
        if value == y:
            return mid
        if value < y:
            lo = mid
        else:
            hi = mid
    if abs(float(f(lo)) - y) < abs(float(f(hi)) - y):
        return lo
    return hi


# ========== Grid Functions ==========


@dataclass(frozen=True, eq=False)
class GridFunction:
    """
    A real function sampled on 0 = t_0 < ... < t_m = 1.

    Arrays are stored read-only. Use make_grid_function() to validate
    external data; arithmetic helpers preserve the grid.
    """

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        grid = np.array(self.grid, dtype=float)
        values = np.array(self.values, dtype=float)
        grid.flags.writeable = False
        values.flags.writeable = False
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.grid)

    @property
    def cells(self) -> int:
        """Number of grid cells m."""
        return len(self.grid) - 1

    def same_grid(self, other: GridFunction) -> bool:
        return np.array_equal(self.grid, other.grid)

    def increment(self, interval: GridInterval) -> float:
        """x(I) = x(b) − x(a)."""
        return float(self.values[interval.b] - self.values[interval.a])

    def scaled(self, c: float) -> GridFunction:
        return GridFunction(self.grid, c * self.values)

    def __add__(self, other: GridFunction) -> GridFunction:
        require_common_grid([self, other])
        return GridFunction(self.grid, self.values + other.values)

    def __sub__(self, other: GridFunction) -> GridFunction:
        require_common_grid([self, other])
        return GridFunction(self.grid, self.values - other.values)

    def __neg__(self) -> GridFunction:
        return GridFunction(self.grid, -self.values)

    def to_dict(self) -> dict:
        return {"grid": self.grid.tolist(), "values": self.values.tolist()}


def validate_grid(grid: np.ndarray) -> None:
    """
    Check a grid: at least 2 points, strictly increasing, endpoints 0 and 1.

    Raises:
        BadGrid: Any of the conditions fails.
    """
    if grid.ndim != 1 or len(grid) < 2:
        raise BadGrid("grid needs at least 2 points")
    if not np.all(np.isfinite(grid)):
        raise BadGrid("grid contains non-finite entries")
    if grid[0] != 0.0 or grid[-1] != 1.0:
        raise BadGrid(f"grid must run from 0 to 1, got {grid[0]}..{grid[-1]}")
    if np.any(np.diff(grid) <= 0):
        raise BadGrid("grid must be strictly increasing")


def make_grid_function(
    grid: Iterable[float], values: Iterable[float]
) -> GridFunction:
    """
    Validate and build a GridFunction.

    Args:
        grid: Strictly increasing positions with t_0 = 0 and t_m = 1.
        values: Function values at the grid positions.

    Returns:
        The immutable sampled function.

    Raises:
        BadGrid: Length mismatch, bad grid, or non-finite values.

    Example:
        >>> x = make_grid_function([0, 0.5, 1], [0.75, 0, 0.5])
        >>> x.cells
        2
    """
    g = np.asarray(list(grid), dtype=float)
    v = np.asarray(list(values), dtype=float)
    if g.shape != v.shape:
        raise BadGrid(f"grid has {g.size} points but values has {v.size}")
    validate_grid(g)
    if not np.all(np.isfinite(v)):
        raise BadGrid("values contain NaN or Inf")
    return GridFunction(g, v)


def require_common_grid(functions: Sequence[GridFunction]) -> None:
    """
    Raises:
        MixedGrids: The functions do not all share the first one's grid.
    """
    if not functions:
        return
    first = functions[0]
    for i, x in enumerate(functions[1:], start=1):
        if not first.same_grid(x):
            raise MixedGrids(f"member {i} does not share the common grid")


def random_grid_function(
    cells: int, rng: np.random.Generator, uniform: bool = False
) -> GridFunction:
    """
    A random instance: standard normal values on a random (or uniform) grid.

    Example:
        >>> x = random_grid_function(4, np.random.default_rng(0))
        >>> x.cells
        4
    """
    if cells < 1:
        raise BadGrid(f"need at least one cell, got {cells}")
    if uniform:
        grid = np.linspace(0.0, 1.0, cells + 1)
    else:
        inner = np.sort(rng.uniform(0.0, 1.0, cells - 1))
        grid = np.concatenate([[0.0], inner, [1.0]])
        if np.any(np.diff(grid) <= 0):
            grid = np.linspace(0.0, 1.0, cells + 1)
    return GridFunction(grid, rng.standard_normal(cells + 1))


# ========== Interval Machinery ==========


class GridInterval(NamedTuple):
    """Closed interval [t_a, t_b] given by grid indices a <= b."""

    a: int
    b: int

    @property
    def degenerate(self) -> bool:
        return self.a == self.b

    def length(self, grid: np.ndarray) -> float:
        return float(grid[self.b] - grid[self.a])

    def contains_cell(self, cell: int) -> bool:
        """True when the cell [t_{cell-1}, t_cell] lies inside."""
        return self.a <= cell - 1 and self.b >= cell


def make_interval(a: int, b: int) -> GridInterval:
    if a < 0 or b < a:
        raise ValueError(f"invalid grid interval [{a}, {b}]")
    return GridInterval(int(a), int(b))


@dataclass(frozen=True)
class IntervalFamily:
    """A finite set of grid intervals, kept sorted and free of duplicates."""

    intervals: tuple[GridInterval, ...] = ()

    def __post_init__(self) -> None:
        unique = sorted({make_interval(*i) for i in self.intervals})
        object.__setattr__(self, "intervals", tuple(unique))

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, int]]) -> IntervalFamily:
        return cls(tuple(GridInterval(int(a), int(b)) for a, b in pairs))

    def __iter__(self) -> Iterator[GridInterval]:
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def __contains__(self, interval: object) -> bool:
        return interval in self.intervals

    def union(self, other: IntervalFamily) -> IntervalFamily:
        return IntervalFamily(self.intervals + other.intervals)

    def with_interval(self, interval: GridInterval) -> IntervalFamily:
        return IntervalFamily((*self.intervals, interval))

    def issubset(self, other: IntervalFamily) -> bool:
        return set(self.intervals) <= set(other.intervals)

    def check_grid(self, x: GridFunction) -> None:
        """
        Raises:
            BadGrid: An interval index lies outside x's grid.
        """
        for interval in self.intervals:
            if interval.b > x.cells:
                raise BadGrid(
                    f"interval {tuple(interval)} exceeds grid of "
                    f"{x.cells} cells"
                )

    def to_list(self) -> list[list[int]]:
        return [[i.a, i.b] for i in self.intervals]


@dataclass(frozen=True)
class IntervalSelection:
    """
    Non-overlapping grid intervals plus an optional φ-index assignment.

    Without an explicit ``assignment`` the interval at position n gets φ_n.
    """

    intervals: tuple[GridInterval, ...] = ()
    assignment: tuple[int, ...] | None = None

    def __len__(self) -> int:
        return len(self.intervals)

    def phi_indices(self) -> tuple[int, ...]:
        if self.assignment is not None:
            return self.assignment
        return tuple(range(1, len(self.intervals) + 1))

    def covers(self, cells: int) -> bool:
        """True when the union of the intervals is all of [0, 1]."""
        covered = [False] * cells
        for interval in self.intervals:
            for c in range(interval.a, interval.b):
                covered[c] = True
        return all(covered)

    def to_dict(self) -> dict:
        return {
            "intervals": [[i.a, i.b] for i in self.intervals],
            "assignment": list(self.phi_indices()),
        }


def all_intervals(
    x: GridFunction | int, include_degenerate: bool = False
) -> IntervalFamily:
    """
    Every grid interval of x's grid (or of a grid with that many points).

    Degenerate intervals are excluded unless asked for: they contribute
    φ_n(0) = 0 and never raise a variation sum.

    Example:
        >>> len(all_intervals(5))
        10
    """
    points = len(x) if isinstance(x, GridFunction) else int(x)
    offset = 0 if include_degenerate else 1
    return IntervalFamily(
        tuple(
            GridInterval(a, b)
            for a in range(points)
            for b in range(a + offset, points)
        )
    )


def is_nonoverlapping(sel: IntervalSelection | Iterable[GridInterval]) -> bool:
    """True iff, sorted by left index, each right index <= next left index."""
    intervals = sel.intervals if isinstance(sel, IntervalSelection) else sel
    ordered = sorted(intervals)
    pairs = zip(ordered, ordered[1:], strict=False)
    return all(left.b <= right.a for left, right in pairs)
