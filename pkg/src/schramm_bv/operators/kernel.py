"""Sampled kernels and the integral operator they define.

Provides:
- Kernel: k(t_i, s_j) on a product grid
- apply_operator(): (Kx)(t) = ∫ k(t,s) x(s) ds by the trapezoid rule
- primitive_field(): t ↦ ∫_0^ξ k(t,s) ds for grid ξ
- interval_field(): t ↦ ∫_a^b k(t,s) ds for grid a < b
- lower_triangular_kernel() / rank_one_kernel() / constant_kernel()
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid

from ..core import BadGrid, GridFunction, SchrammError, validate_grid

logger = logging.getLogger(__name__)

# Absolute tolerance when matching ξ against grid_s
GRID_MATCH_TOL = 1e-12


class GridMismatch(SchrammError):
    """Raised when a function is not sampled on the kernel's s-grid."""


class XiNotOnGrid(SchrammError):
    """Raised when ξ is not a point of the kernel's s-grid."""

    def __init__(self, message: str, xi: float = 0.0):
        super().__init__(message)
        self.xi = xi


@dataclass(frozen=True, eq=False)
class Kernel:
    """
    Samples k(t_i, s_j); rows follow grid_t, columns follow grid_s.

    (H1), integrability of every row, holds for any sampled kernel: the
    trapezoid rule integrates every finite row.
    """

    grid_t: np.ndarray
    grid_s: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        for name in ("grid_t", "grid_s", "values"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @cached_property
    def primitives(self) -> np.ndarray:
        """P[i, j] = ∫_0^{s_j} k(t_i, s) ds."""
        return cumulative_trapezoid(
            self.values, self.grid_s, axis=1, initial=0.0
        )

    def row_integral(self, i: int = 0) -> float:
        """∫_0^1 |k(t_i, s)| ds."""
        return float(trapezoid(np.abs(self.values[i]), self.grid_s))

    def to_dict(self) -> dict:
        return {
            "grid_t": self.grid_t.tolist(),
            "grid_s": self.grid_s.tolist(),
            "values": self.values.tolist(),
        }


def make_kernel(
    grid_t: Iterable[float],
    grid_s: Iterable[float],
    values: Iterable[Iterable[float]],
) -> Kernel:
    """
    Validate and build a Kernel.

    Raises:
        BadGrid: A grid is invalid, the matrix shape does not match the
            grids, or an entry is not finite.
    """
    t = np.asarray(list(grid_t), dtype=float)
    s = np.asarray(list(grid_s), dtype=float)
    validate_grid(t)
    validate_grid(s)
    k = np.asarray([list(row) for row in values], dtype=float)
    if k.shape != (len(t), len(s)):
        raise BadGrid(
            f"kernel matrix has shape {k.shape}, grids need "
            f"({len(t)}, {len(s)})"
        )
    if not np.all(np.isfinite(k)):
        raise BadGrid("kernel contains NaN or Inf")
    return Kernel(t, s, k)


def apply_operator(kernel: Kernel, x: GridFunction) -> GridFunction:
    """
    (Kx)(t_i) = trapezoid integral of s ↦ k(t_i, s)·x(s).

    Raises:
        GridMismatch: x is not sampled on grid_s.
    """
    if not np.array_equal(x.grid, kernel.grid_s):
        raise GridMismatch("function grid differs from the kernel's s-grid")
    integrand = kernel.values * x.values[np.newaxis, :]
    return GridFunction(kernel.grid_t, trapezoid(integrand, kernel.grid_s))


def xi_index(kernel: Kernel, xi: float) -> int:
    """
    Position of ξ in grid_s.

    Raises:
        XiNotOnGrid: No grid point within 1e-12 of ξ.
    """
    j = int(np.argmin(np.abs(kernel.grid_s - xi)))
    if abs(kernel.grid_s[j] - xi) > GRID_MATCH_TOL:
        raise XiNotOnGrid(f"ξ = {xi!r} is not on the kernel's s-grid", xi)
    return j


def primitive_field(kernel: Kernel, xi: float) -> GridFunction:
    """
    t ↦ ∫_0^ξ k(t,s) ds on grid_t.

    Example:
        >>> k = constant_kernel(1.0, [0, 0.5, 1], [0, 0.5, 1])
        >>> primitive_field(k, 0.5).values.tolist()
        [0.5, 0.5, 0.5]
    """
    j = xi_index(kernel, xi)
    return GridFunction(kernel.grid_t, kernel.primitives[:, j])


def interval_field(kernel: Kernel, a: int, b: int) -> GridFunction:
    """t ↦ ∫_{s_a}^{s_b} k(t,s) ds for grid indices a <= b."""
    p = kernel.primitives
    return GridFunction(kernel.grid_t, p[:, b] - p[:, a])


# ========== Builders ==========


def lower_triangular_kernel(grid: Iterable[float]) -> Kernel:
    """
    k(t,s) = 1 for s < t, ½ for s = t, 0 for s > t on a square grid.

    The ½ diagonal is the trapezoid reading of the jump of 1_{s≤t}.
    """
    g = np.asarray(list(grid), dtype=float)
    validate_grid(g)
    i, j = np.indices((len(g), len(g)))
    values = np.where(j < i, 1.0, np.where(j == i, 0.5, 0.0))
    return Kernel(g, g, values)


def rank_one_kernel(
    grid_t: Iterable[float], g: Iterable[float], grid_s: Iterable[float]
) -> Kernel:
    """k(t,s) = g(t), constant in s."""
    t = np.asarray(list(grid_t), dtype=float)
    s = np.asarray(list(grid_s), dtype=float)
    gv = np.asarray(list(g), dtype=float)
    validate_grid(t)
    validate_grid(s)
    if gv.shape != t.shape:
        raise BadGrid(f"g has {gv.size} samples for {t.size} grid points")
    return Kernel(t, s, np.repeat(gv[:, np.newaxis], len(s), axis=1))


def constant_kernel(
    value: float, grid_t: Iterable[float], grid_s: Iterable[float]
) -> Kernel:
    t = np.asarray(list(grid_t), dtype=float)
    s = np.asarray(list(grid_s), dtype=float)
    validate_grid(t)
    validate_grid(s)
    return Kernel(t, s, np.full((len(t), len(s)), float(value)))
