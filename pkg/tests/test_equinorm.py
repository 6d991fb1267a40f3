"""Tests for equinormed defects, witness search and the axiom checks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
import pytest

from schramm_bv.core import (
    GridFunction,
    IntervalFamily,
    MixedGrids,
    all_intervals,
    jordan,
    make_grid_function,
    random_grid_function,
)
from schramm_bv.equinorm import (
    IntervalSeminormFamily,
    ScaledFamily,
    check_A1_A2,
    compactness_report,
    defect,
    witness_search,
)
from schramm_bv.seqspace import PrefixSeminormFamily, TruncatedSequence


class TestDefect:
    """Tests for defect()."""

    def test_full_family_has_no_defect(self, ramps):
        report = defect(ramps, jordan(), all_intervals(5))
        assert report.defect == 0.0

    def test_empty_family(self, ramps):
        """Against no intervals the defect is the largest seminorm."""
        report = defect(ramps, jordan(), IntervalFamily())
        # The zigzag member has Jordan variation 2
        assert report.defect == pytest.approx(2.0, abs=1e-9)
        assert report.argmax == 2
        assert report.gaps == pytest.approx([1.0, 1.0, 2.0], abs=1e-9)

    def test_pairwise(self, ramps):
        report = defect(ramps, jordan(), IntervalFamily(), pairwise=True)
        assert isinstance(report.argmax, tuple)
        assert len(report.gaps) == 3
        assert report.to_dict()["argmax"] == list(report.argmax)

    def test_mixed_grids(self, tent):
        other = make_grid_function([0, 0.25, 1], [0, 1, 1])
        with pytest.raises(MixedGrids):
            defect([tent, other], jordan(), IntervalFamily())


class TestWitnessSearch:
    """Tests for witness_search() and compactness_report()."""

    def test_large_eps_needs_no_interval(self, ramps):
        row = witness_search(ramps, jordan(), 5.0)
        assert row.success
        assert row.cardinality == 0

    def test_row_defect_is_exact(self, ramps):
        row = witness_search(ramps, jordan(), 0.3)
        assert row.success
        assert row.defect <= 0.3
        assert row.cardinality == len(row.family)
        recomputed = defect(ramps, jordan(), row.family).defect
        assert recomputed == pytest.approx(row.defect, abs=1e-12)

    def test_report_is_certified(self, ramps):
        report = compactness_report(ramps, jordan(), [0.1, 0.5])
        assert report.verdict == "certified-equinormed"
        assert [row.eps for row in report.rows] == [0.5, 0.1]

    def test_families_are_nested(self, ramps):
        report = compactness_report(ramps, jordan(), [1.0, 0.5, 0.1])
        families = [row.family for row in report.rows]
        for smaller, larger in zip(families, families[1:], strict=False):
            assert smaller.issubset(larger)

    def test_shared_path_matches_independent_runs(self, ramps):
        report = compactness_report(ramps, jordan(), [0.5, 0.1])
        for row in report.rows:
            alone = witness_search(ramps, jordan(), row.eps)
            assert alone.family == row.family

    def test_fail_at_budget(self, ramps):
        report = compactness_report(ramps, jordan(), [0.01], budget=0)
        assert report.verdict == "fail-at-budget"
        assert report.to_dict()["rows"][0]["family"] == "FAIL"

    def test_pairwise_witness(self, rng):
        members = [random_grid_function(4, rng, uniform=True) for _ in range(3)]
        row = witness_search(members, jordan(), 0.2, pairwise=True)
        assert row.success
        assert row.defect <= 0.2


def _spikes(cells: int) -> list[GridFunction]:
    """Unit spikes at every interior point of a uniform grid."""
    grid = np.linspace(0, 1, cells + 1)
    return [
        make_grid_function(grid, np.eye(cells + 1)[i])
        for i in range(1, cells)
    ]


class TestSpikeFamily:
    """Spikes at each interior grid point under the Jordan sequence."""

    def test_defect_without_adjacent_intervals(self):
        spikes = _spikes(5)
        for family in (IntervalFamily(), IntervalFamily.of([(0, 5)])):
            report = defect(spikes, jordan(), family)
            assert report.defect == pytest.approx(2.0, abs=1e-9)

    def test_witness_touches_every_spike(self):
        spikes = _spikes(5)
        row = witness_search(spikes, jordan(), 0.5)
        assert row.success
        assert row.defect <= 0.5
        assert row.cardinality >= 5 - 1

    def test_single_interval_budget_fails(self):
        report = compactness_report(_spikes(5), jordan(), [0.5], budget=1)
        assert report.verdict == "fail-at-budget"
        assert report.rows[0].defect > 0.5


class TestSetProperties:
    """Witness families under subsets, unions and scaling."""

    def test_subset_keeps_witness(self, ramps):
        row = witness_search(ramps, jordan(), 0.3)
        for size in (1, 2):
            for subset in itertools.combinations(ramps, size):
                report = defect(list(subset), jordan(), row.family)
                assert report.defect <= 0.3 + 1e-9

    def test_union_of_witnesses(self, ramps, rng):
        others = [random_grid_function(4, rng, uniform=True) for _ in range(2)]
        first = witness_search(ramps, jordan(), 0.25)
        second = witness_search(others, jordan(), 0.25)
        joint = first.family.union(second.family)
        report = defect([*ramps, *others], jordan(), joint)
        assert report.defect <= 0.25 + 1e-9

    def test_scaled_copies_share_witness(self, ramps):
        base = ramps[2]
        row = witness_search([base], jordan(), 0.2)
        copies = [base.scaled(c) for c in np.linspace(0, 1, 11)]
        assert defect(copies, jordan(), row.family).defect <= 0.2 + 1e-9
        report = compactness_report(copies, jordan(), [0.2])
        assert report.verdict == "certified-equinormed"


@dataclass
class MinJoinFamily(PrefixSeminormFamily):
    """Prefix seminorms with a join that is not an upper bound."""

    def join(self, i: int, j: int) -> int:
        return min(i, j)


class TestAxioms:
    """Tests for check_A1_A2()."""

    def test_interval_family_passes(self, ramps):
        family = IntervalSeminormFamily(jordan())
        indices = [
            IntervalFamily.of([(0, 1)]),
            IntervalFamily.of([(1, 3), (3, 4)]),
            all_intervals(5),
        ]
        report = check_A1_A2(family, ramps, indices)
        assert report.passed
        assert len(report.rows) == 2 * len(ramps)

    def test_prefix_family_passes(self):
        samples = [
            TruncatedSequence(np.array([1.0, 0.5, 0.25]), 0.0, 1.0),
            TruncatedSequence(np.array([0.0, 2.0, 1.0]), 0.0, 2.0),
        ]
        report = check_A1_A2(PrefixSeminormFamily(), samples[:1], [0, 1, 3])
        assert report.passed
        report = check_A1_A2(PrefixSeminormFamily(), samples[1:], [1, 2, 3])
        assert report.passed

    def test_scaled_family_breaks_sup_attainment(self, ramps):
        family = ScaledFamily(IntervalSeminormFamily(jordan()), 2.0)
        report = check_A1_A2(family, ramps[:1], [all_intervals(5)])
        assert not report.passed
        assert [row.check for row in report.failures()] == ["A1"]

    def test_bad_join_breaks_directedness(self):
        sample = TruncatedSequence(np.array([1.0, 1.0, 1.0]), 0.0, 1.0)
        report = check_A1_A2(MinJoinFamily(), [sample], [1, 3])
        assert report.failures("A1") == []
        assert len(report.failures("A2")) == 1
