"""Regression set of worked examples with known values.

run_reproduction() recomputes every value from the shipped fixtures and
returns one row per check; `schramm-bv reproduce` prints them and the tool
server exposes them.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

from .core import (
    IntervalSelection,
    SchrammError,
    jordan,
    make_interval,
    waterman,
)
from .fixtures import fixture_path
from .operators import (
    compactness_probe,
    continuity_bound,
    h2_certificate,
    h3_implies_h2,
    h3_modulus,
    rank_one_kernel,
)
from .seqspace import counterexample_suite, lp_compactness_check
from .serialize import (
    load_grid_function,
    load_kernel,
    load_truncated_set,
    parse_young,
)
from .variation import (
    assignment_value,
    brute_force_variation,
    five_suprema,
    schramm_variation,
    selection_value,
)

logger = logging.getLogger(__name__)

EXACT_TOL = 1e-12


@dataclass
class ReproductionRow:
    """One regression check; ``relation`` is "=" or ">="."""

    label: str
    expected: float
    computed: float
    relation: str = "="
    tol: float = EXACT_TOL

    @property
    def passed(self) -> bool:
        if self.relation == ">=":
            return self.computed >= self.expected - self.tol
        return math.isclose(
            self.computed, self.expected, rel_tol=self.tol, abs_tol=self.tol
        )

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "expected": self.expected,
            "computed": self.computed,
            "relation": self.relation,
            "passed": self.passed,
        }


def _helly_rows() -> list[ReproductionRow]:
    x = load_grid_function(fixture_path("helly_remark"))
    seq = parse_young(str(fixture_path("helly_young")))
    sorted_value, _ = assignment_value(seq, [0.75, 0.5], method="sorted")
    return [
        ReproductionRow(
            "var_Φ = 17/16", 17 / 16, schramm_variation(x, seq).value
        ),
        ReproductionRow(
            "oracle var_Φ = 17/16", 17 / 16, brute_force_variation(x, seq)
        ),
        ReproductionRow("sorted assignment = 1", 1.0, sorted_value),
    ]


def _five_rows() -> list[ReproductionRow]:
    x = load_grid_function(fixture_path("five_definitions"))
    seq = waterman([10, 1])
    five = five_suprema(x, seq)
    agree = max(five.beta_grid, five.gamma_grid, five.delta_grid)
    spread = agree - min(five.beta_grid, five.gamma_grid, five.delta_grid)
    dyadic = IntervalSelection((make_interval(0, 1), make_interval(1, 2)))
    return [
        ReproductionRow("β=γ=δ=30", 30.0, agree if spread == 0 else math.nan),
        ReproductionRow("α_grid = 17.5", 17.5, five.alpha_grid),
        ReproductionRow("α* ≥ 61/2", 30.5, five.alpha_star_grid, ">="),
        ReproductionRow(
            "dyadic witness of α* = 61/2",
            30.5,
            selection_value(x, seq, dyadic, scale=2.0),
        ),
    ]


def _sequence_rows() -> list[ReproductionRow]:
    rows = [
        ReproductionRow(
            f"{r.name}: {r.quantity}",
            r.expected,
            r.computed,
            tol=1e-12,
        )
        for r in counterexample_suite()
    ]
    geometric = load_truncated_set(fixture_path("geometric"))
    witness = lp_compactness_check(geometric, 0.01).witness
    rows.append(
        ReproductionRow(
            "l^1 geometric witness n = 66",
            66,
            math.nan if witness is None else witness,
        )
    )
    return rows


def _operator_rows() -> list[ReproductionRow]:
    tri = load_kernel(fixture_path("tri"))
    tent = rank_one_kernel([0, 0.5, 1], [0, 1, 0], [0, 0.5, 1])
    seq = jordan()
    cert = h2_certificate(tent, seq)
    implied = h3_implies_h2(tent, seq)
    delta = h3_modulus(tri, seq, [0.5]).delta(0.5)
    tri_cert = h2_certificate(tri, seq)
    tri_implied = h3_implies_h2(tri, seq)
    tri_mu = tri_cert.mu or math.nan
    tri_bound = continuity_bound(tri, seq, tri_mu)
    rows = [
        ReproductionRow(
            "1_{s≤t}: δ(0.5) = 0.5", 0.5, math.nan if delta is None else delta
        ),
        # The ½ diagonal trims the last column's variation to 0.95
        ReproductionRow("1_{s≤t}: μ = 1/0.95", 1 / 0.95, tri_mu, tol=1e-9),
        ReproductionRow(
            "1_{s≤t}: H3 ⇒ H2 with μ = 1",
            1.0,
            tri_implied.mu if tri_implied.verified else math.nan,
        ),
        ReproductionRow(
            "1_{s≤t}: M = 0.025 + 2/μ = 1.925",
            1.925,
            tri_bound.bound,
            tol=1e-9,
        ),
        ReproductionRow(
            "1_{s≤t}: battery ratio ≤ M", 1.0, float(tri_bound.holds)
        ),
        ReproductionRow(
            "tent kernel: μ = 1/2", 0.5, cert.mu or math.nan, tol=1e-9
        ),
        ReproductionRow("tent kernel: H3 ⇒ H2 with n = 2", 2, implied.n),
        ReproductionRow(
            "tent kernel: M = 4",
            4.0,
            continuity_bound(tent, seq, 0.5).bound,
        ),
    ]
    probe_kernel = load_kernel(fixture_path("tent_kernel"))
    for battery in ("spikes", "shrinking_plateaus", "sawtooth"):
        report = compactness_probe(probe_kernel, seq, battery)
        rows.append(
            ReproductionRow(
                f"probe {battery}: decay-consistent",
                1.0,
                float(report.verdict == "decay-consistent"),
            )
        )
    return rows


SECTIONS: dict[str, Callable[[], list[ReproductionRow]]] = {
    "helly": _helly_rows,
    "five": _five_rows,
    "sequences": _sequence_rows,
    "operators": _operator_rows,
}


def run_reproduction(
    sections: list[str] | None = None,
) -> list[ReproductionRow]:
    """
    Recompute the regression set.

    Args:
        sections: Subset of "helly", "five", "sequences", "operators".
            Defaults to all of them.

    Returns:
        Rows in section order. A section that raises becomes one failed
        row carrying the error message.
    """
    rows: list[ReproductionRow] = []
    for name in sections or list(SECTIONS):
        try:
            rows.extend(SECTIONS[name]())
        except (SchrammError, OSError) as e:
            logger.warning("Reproduction section %s failed: %s", name, e)
            rows.append(ReproductionRow(f"{name}: {e}", math.nan, math.nan))
    failed = sum(1 for r in rows if not r.passed)
    logger.info("Reproduction: %d rows, %d failed", len(rows), failed)
    return rows
