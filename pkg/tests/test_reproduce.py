"""Tests for the regression set of worked examples."""

from __future__ import annotations

import math

import pytest

from schramm_bv.core import SchrammError
from schramm_bv.reproduce import SECTIONS, ReproductionRow, run_reproduction


class TestReproductionRow:
    """Tests for ReproductionRow.passed."""

    def test_equality_within_tolerance(self):
        assert ReproductionRow("x", 1.0, 1.0 + 1e-13).passed
        assert not ReproductionRow("x", 1.0, 1.0 + 1e-6).passed

    def test_at_least(self):
        assert ReproductionRow("x", 30.5, 31.0, ">=").passed
        assert ReproductionRow("x", 30.5, 30.5, ">=").passed
        assert not ReproductionRow("x", 30.5, 30.0, ">=").passed

    def test_nan_fails(self):
        assert not ReproductionRow("x", 66, math.nan).passed

    def test_to_dict(self):
        data = ReproductionRow("x", 2.0, 2.0).to_dict()
        assert data == {
            "label": "x",
            "expected": 2.0,
            "computed": 2.0,
            "relation": "=",
            "passed": True,
        }


class TestRunReproduction:
    """Tests for run_reproduction()."""

    @pytest.mark.parametrize("section", sorted(SECTIONS))
    def test_section_passes(self, section):
        rows = run_reproduction([section])
        assert rows
        failed = [row.label for row in rows if not row.passed]
        assert failed == []

    def test_section_order(self):
        rows = run_reproduction(["helly", "five"])
        labels = [row.label for row in rows]
        assert labels[0] == "var_Φ = 17/16"
        assert labels[3] == "β=γ=δ=30"
        assert len(labels) == 7

    def test_alpha_star_is_lower_bound(self):
        rows = run_reproduction(["five"])
        star = next(row for row in rows if row.relation == ">=")
        assert star.computed >= 30.5

    def test_indicator_kernel_rows(self):
        rows = {row.label: row for row in run_reproduction(["operators"])}
        implied = rows["1_{s≤t}: H3 ⇒ H2 with μ = 1"]
        assert implied.computed == 1.0
        bound = rows["1_{s≤t}: M = 0.025 + 2/μ = 1.925"]
        assert bound.passed
        assert rows["1_{s≤t}: battery ratio ≤ M"].computed == 1.0

    def test_failing_section_becomes_row(self, monkeypatch):
        def broken() -> list[ReproductionRow]:
            raise SchrammError("fixture unreadable")

        monkeypatch.setitem(SECTIONS, "helly", broken)
        rows = run_reproduction(["helly", "five"])
        assert rows[0].label == "helly: fixture unreadable"
        assert not rows[0].passed
        assert all(row.passed for row in rows[1:])
        assert len(rows) == 5
