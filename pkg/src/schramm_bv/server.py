"""
Schramm BV MCP Server

Exposes the variation engine, seminorms and operator certificates as MCP
tools. Inputs are inline JSON arrays; heavy work runs in a worker thread.

TOOLS (6 total):
- variation(grid, values, young?, mode?) - var_Φ x with witness
- norm(grid, values, young?) - ‖x‖_Φ and |x|_Φ
- five_suprema(grid, values, young?) - α, α*, β, γ, δ on the grid
- equinorm_report(grid, members, eps, ...) - compactness witnesses
- operator_certificate(grid_t, grid_s, kernel, ...) - (H2)/(H3) checks
- reproduce_examples() - regression set of worked examples
"""

from __future__ import annotations

import asyncio
from collections.abc import Callable
from typing import Literal, TypeVar

from fastmcp import FastMCP
from typing_extensions import TypedDict

from .core import SchrammError, all_intervals, make_grid_function
from .equinorm import compactness_report
from .luxemburg import luxemburg_seminorm
from .operators import (
    continuity_bound,
    h2_certificate,
    h3_modulus,
    make_kernel,
)
from .reproduce import run_reproduction
from .serialize import parse_young
from .variation import five_suprema as compute_five_suprema
from .variation import schramm_variation

mcp = FastMCP("Schramm BV")

T = TypeVar("T")


# ========== Response Type Definitions ==========


class Witness(TypedDict):
    """Selected intervals as grid index pairs with their φ-indices."""

    intervals: list[list[int]]
    assignment: list[int]


class VariationResponse(TypedDict):
    value: float
    witness: Witness
    mode: str
    nodes_explored: int


class NormResponse(TypedDict):
    norm: float
    seminorm: float
    bracket: list[float]


class FiveSupremaResponse(TypedDict):
    """Grid surrogates; alpha_grid <= delta_grid <= alpha_star_grid."""

    alpha_grid: float
    alpha_star_grid: float
    beta_grid: float
    gamma_grid: float
    delta_grid: float
    alpha_witness: Witness
    chain_holds: bool


class EquinormRow(TypedDict):
    eps: float
    family: list[list[int]] | str
    defect: float
    cardinality: int


class EquinormResponse(TypedDict):
    rows: list[EquinormRow]
    verdict: str


class CertificateResponse(TypedDict, total=False):
    """(H2) certificate, (H3) rows and the continuity bound when certified."""

    h2: dict
    h3: list[dict]
    continuity: dict


class ReproductionRowDict(TypedDict):
    label: str
    expected: float
    computed: float
    relation: str
    passed: bool


# ========== Helper Functions ==========


async def _compute(fn: Callable[[], T]) -> T:
    """Run fn in a worker thread, reporting library errors as ValueError."""
    try:
        return await asyncio.to_thread(fn)
    except SchrammError as e:
        raise ValueError(str(e)) from e


# ========== Tools ==========


@mcp.tool
async def variation(
    grid: list[float],
    values: list[float],
    young: str = "jordan",
    mode: Literal["exact", "heuristic"] = "exact",
) -> VariationResponse:
    """
    Compute the Schramm variation var_Φ x of a sampled function.

    Args:
        grid: Strictly increasing grid from 0 to 1.
        values: Function values at the grid points.
        young: Young sequence: "jordan", "wiener:P", "young:P[:KNEE]",
            "waterman:L1,L2,..." or an inline JSON description.
        mode: "exact" (certified optimum) or "heuristic" (lower bound).

    Returns:
        Value, witness selection with its φ-assignment, and search effort.

    Example:
        >>> variation([0, 0.5, 1], [0, 1, 0])
        {"value": 2.0, "witness": {...}, "mode": "exact", ...}
    """

    def work() -> dict:
        x = make_grid_function(grid, values)
        return schramm_variation(x, parse_young(young), mode).to_dict()

    return await _compute(work)


@mcp.tool
async def norm(
    grid: list[float], values: list[float], young: str = "jordan"
) -> NormResponse:
    """
    Compute ‖x‖_Φ = |x(0)| + |x|_Φ by bisection on the Luxemburg scale.

    Args:
        grid: Strictly increasing grid from 0 to 1.
        values: Function values at the grid points.
        young: Young sequence shorthand or inline JSON.
    """

    def work() -> NormResponse:
        x = make_grid_function(grid, values)
        semi = luxemburg_seminorm(x, parse_young(young), all_intervals(x))
        return {
            "norm": abs(float(x.values[0])) + semi.value,
            "seminorm": semi.value,
            "bracket": list(semi.bracket),
        }

    return await _compute(work)


@mcp.tool
async def five_suprema(
    grid: list[float], values: list[float], young: str = "jordan"
) -> FiveSupremaResponse:
    """
    Compute the grid surrogates of the five sequence-based suprema.

    Returns:
        alpha, alpha_star, beta, gamma and delta with the alpha witness and
        whether α <= β = γ = δ <= α* holds.
    """

    def work() -> dict:
        x = make_grid_function(grid, values)
        result = compute_five_suprema(x, parse_young(young))
        return {**result.to_dict(), "chain_holds": result.chain_holds()}

    return await _compute(work)


@mcp.tool
async def equinorm_report(
    grid: list[float],
    members: list[list[float]],
    eps: list[float],
    young: str = "jordan",
    pairwise: bool = False,
) -> EquinormResponse:
    """
    Grow interval families until the equinormed defect is at most each ε.

    Args:
        grid: Common grid of the members.
        members: Function values, one list per member.
        eps: Target defects.
        young: Young sequence shorthand or inline JSON.
        pairwise: Use differences x − y instead of the members.

    Returns:
        One row per ε (family "FAIL" when the budget ran out) and the
        verdict "certified-equinormed" or "fail-at-budget".
    """

    def work() -> dict:
        functions = [make_grid_function(grid, m) for m in members]
        report = compactness_report(
            functions, parse_young(young), eps, pairwise
        )
        return report.to_dict()

    return await _compute(work)


@mcp.tool
async def operator_certificate(
    grid_t: list[float],
    grid_s: list[float],
    kernel: list[list[float]],
    young: str = "jordan",
    eps: list[float] | None = None,
) -> CertificateResponse:
    """
    Certify the integral operator (Kx)(t) = ∫ k(t,s) x(s) ds.

    Args:
        grid_t: Output grid (rows of the kernel).
        grid_s: Integration grid (columns of the kernel).
        kernel: Matrix k(t_i, s_j).
        young: Young sequence of the target space.
        eps: Tolerances for the (H3) modulus (default [1.0]).

    Returns:
        h2: largest certified μ; h3: δ(ε) rows; continuity: the bound M and
        the empirical battery ratio (only when μ exists).
    """

    def work() -> CertificateResponse:
        k = make_kernel(grid_t, grid_s, kernel)
        seq = parse_young(young)
        cert = h2_certificate(k, seq)
        response: CertificateResponse = {
            "h2": cert.to_dict(),
            "h3": h3_modulus(k, seq, eps or [1.0]).to_dict()["rows"],
        }
        if cert.mu is not None:
            response["continuity"] = continuity_bound(
                k, seq, cert.mu
            ).to_dict()
        return response

    return await _compute(work)


@mcp.tool
async def reproduce_examples() -> list[ReproductionRowDict]:
    """
    Recompute the regression set of worked examples.

    Returns:
        Rows with label, expected and computed value, and pass flag.
    """
    rows = await _compute(run_reproduction)
    return [row.to_dict() for row in rows]
