"""Diagonal extraction of a pointwise convergent subsequence."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from ..core import GridFunction, SchrammError, require_common_grid
from ..variation import jordan_variation

logger = logging.getLogger(__name__)

HELLY_TOL = 1e-9


class NotBounded(SchrammError):
    """Raised when a member exceeds the variation or sup bound."""

    def __init__(self, message: str, index: int = 0):
        super().__init__(message)
        self.index = index


@dataclass
class HellyResult:
    """
    Selected indices, the limit representative and the final spread.

    ``converged`` is False when halving stopped short of the tolerance
    because fewer than two members would have survived.
    """

    indices: list[int]
    limit: GridFunction
    spread: float
    converged: bool = True

    def to_dict(self) -> dict:
        return {
            "indices": self.indices,
            "limit": self.limit.to_dict(),
            "spread": self.spread,
            "converged": self.converged,
        }


def _bolzano(
    values: np.ndarray, keep: list[int], bound: float, tol: float
) -> list[int]:
    """Halve [−bound, bound] while the fuller half keeps two members."""
    lo, hi = -bound, bound
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        lower = [k for k in keep if values[k] < mid]
        upper = [k for k in keep if values[k] >= mid]
        chosen = lower if len(lower) >= len(upper) else upper
        if len(chosen) < 2:
            break
        keep = chosen
        lo, hi = (lo, mid) if chosen is lower else (mid, hi)
    return keep


def helly_extract(
    seqs: Sequence[GridFunction], bound: float, tol: float = HELLY_TOL
) -> HellyResult:
    """
    Select a subsequence whose values settle at every grid point.

    Grid points are processed in order; at each one the surviving members
    are narrowed by repeated halving of [−bound, bound], keeping the half
    with more members (the lower one on ties) while it holds at least two.
    The limit is the last selected member.

    Args:
        seqs: Functions on a common grid.
        bound: Bound on both the Jordan variation and the sup of each.
        tol: Target width of the per-point value bracket.

    Raises:
        NotBounded: A member's variation or sup exceeds the bound.
        MixedGrids: Members do not share a grid.
    """
    require_common_grid(seqs)
    if not seqs:
        raise ValueError("helly_extract needs at least one function")
    slack = HELLY_TOL * max(1.0, bound)
    for k, x in enumerate(seqs):
        if jordan_variation(x) > bound + slack:
            raise NotBounded(f"member {k} has variation above {bound}", k)
        if float(np.max(np.abs(x.values))) > bound + slack:
            raise NotBounded(f"member {k} has sup above {bound}", k)

    matrix = np.stack([x.values for x in seqs])
    keep = list(range(len(seqs)))
    for point in range(matrix.shape[1]):
        keep = _bolzano(matrix[:, point], keep, bound + slack, tol)
    selected = matrix[keep]
    spread = float(np.max(selected.max(axis=0) - selected.min(axis=0)))
    converged = spread <= tol
    if not converged:
        logger.warning(
            "Helly extraction stopped at spread %.3g above tol %.3g",
            spread,
            tol,
        )
    logger.debug("Helly extraction kept %d of %d", len(keep), len(seqs))
    return HellyResult(keep, seqs[keep[-1]], spread, converged)
