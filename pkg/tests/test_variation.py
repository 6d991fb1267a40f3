"""Tests for the variation engine, the oracle and the five suprema."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schramm_bv.core import (
    BudgetExceeded,
    GridFunction,
    GridInterval,
    IntervalFamily,
    IntervalSelection,
    all_intervals,
    jordan,
    make_grid_function,
    random_grid_function,
    waterman,
    wiener,
)
from schramm_bv.fixtures import fixture_path
from schramm_bv.serialize import parse_young
from schramm_bv.variation import (
    TooLarge,
    assignment_value,
    brute_force_variation,
    five_suprema,
    iter_selections,
    jordan_variation,
    schramm_variation,
    selection_value,
    variation_over_family,
)

# Every Young kind the oracle comparison runs against
ORACLE_SEQUENCES = {
    "jordan": jordan(),
    "wiener-1.5": wiener(1.5),
    "wiener-2": wiener(2),
    "wiener-3": wiener(3),
    "waterman": waterman([3, 2, 1]),
    "helly": parse_young(str(fixture_path("helly_young"))),
}

samples = st.lists(
    st.floats(-3, 3, allow_nan=False, allow_infinity=False),
    min_size=2,
    max_size=8,
)

# Up to 10 cells
oracle_samples = st.lists(
    st.floats(-3, 3, allow_nan=False, allow_infinity=False),
    min_size=2,
    max_size=11,
)


def _uniform(values: list[float]) -> GridFunction:
    return make_grid_function(np.linspace(0, 1, len(values)), values)


class TestAssignment:
    """Tests for assignment_value()."""

    def test_hungarian_beats_sorting_without_vince(self, helly_seq):
        """{0.75, 0.5}: the optimum puts φ_1 on the smaller increment."""
        value, perm = assignment_value(helly_seq, [0.75, 0.5], "hungarian")
        assert value == 17 / 16
        assert perm == (2, 1)

    def test_sorted_descending(self, helly_seq):
        value, perm = assignment_value(helly_seq, [0.75, 0.5], "sorted")
        assert value == 1.0
        assert perm == (1, 2)

    def test_auto_uses_hungarian_without_vince(self, helly_seq):
        assert assignment_value(helly_seq, [0.75, 0.5])[0] == 17 / 16

    def test_empty(self):
        assert assignment_value(jordan(), []) == (0.0, ())

    @settings(max_examples=500, deadline=None)
    @given(
        st.lists(
            st.floats(0, 10, allow_nan=False, allow_infinity=False),
            min_size=1,
            max_size=6,
        )
    )
    def test_sorting_optimal_with_vince(self, increments):
        """Both strategies agree when φ_{n+1} − φ_n is non-increasing."""
        seq = waterman([5, 3, 2, 1])
        assert seq.vince_flag
        hungarian, _ = assignment_value(seq, increments, "hungarian")
        ordered, _ = assignment_value(seq, increments, "sorted")
        assert math.isclose(hungarian, ordered, rel_tol=1e-12, abs_tol=1e-12)


class TestSchrammVariation:
    """Tests for schramm_variation() and variation_over_family()."""

    def test_tent_jordan(self, tent):
        result = schramm_variation(tent, jordan())
        assert result.value == 2.0
        assert result.witness.to_dict()["intervals"] == [[0, 1], [1, 2]]

    def test_jordan_identity(self, rng):
        """The jordan kind returns the closed-form sum bit for bit."""
        x = random_grid_function(12, rng)
        assert schramm_variation(x, jordan()).value == jordan_variation(x)

    def test_helly_instance(self, helly_x, helly_seq):
        result = schramm_variation(helly_x, helly_seq)
        assert result.value == 17 / 16
        assert result.witness.to_dict() == {
            "intervals": [[0, 1], [1, 2]],
            "assignment": [2, 1],
        }

    def test_witness_attains_value(self, five_x, five_seq):
        result = schramm_variation(five_x, five_seq)
        assert result.value == 30.0
        witness_value = selection_value(five_x, five_seq, result.witness)
        assert witness_value == result.value

    def test_zero_function(self):
        x = make_grid_function([0, 0.5, 1], [1, 1, 1])
        result = schramm_variation(x, wiener(2))
        assert result.value == 0.0
        assert len(result.witness) == 0

    def test_heuristic_is_lower_bound(self, rng):
        seq = ORACLE_SEQUENCES["helly"]
        x = random_grid_function(7, rng)
        exact = schramm_variation(x, seq)
        heuristic = schramm_variation(x, seq, mode="heuristic")
        assert heuristic.mode == "heuristic"
        assert heuristic.value <= exact.value + 1e-12

    def test_heuristic_finds_helly_optimum(self, helly_x, helly_seq):
        result = schramm_variation(helly_x, helly_seq, mode="heuristic")
        assert result.value == pytest.approx(17 / 16, abs=1e-15)

    def test_single_function_path(self, rng):
        """Interval scheduling covers every sequence with one φ."""
        x = random_grid_function(8, rng)
        squares = schramm_variation(x, wiener(2)).value
        unit = schramm_variation(x, waterman([1])).value
        assert squares == pytest.approx(brute_force_variation(x, wiener(2)))
        assert unit == pytest.approx(jordan_variation(x))

    def test_restricted_family(self, tent):
        family = IntervalFamily.of([(0, 2)])
        assert variation_over_family(tent, jordan(), family).value == 0.0

    def test_budget_exceeded(self, five_x, five_seq):
        with pytest.raises(BudgetExceeded) as exc_info:
            schramm_variation(five_x, five_seq, budget=1)
        assert exc_info.value.budget == 1

    @settings(max_examples=100, deadline=None)
    @given(values=samples, data=st.data())
    def test_smaller_family_never_exceeds(self, values, data):
        x = _uniform(values)
        full = all_intervals(x)
        keep = data.draw(
            st.lists(st.booleans(), min_size=len(full), max_size=len(full))
        )
        part = IntervalFamily(
            tuple(i for i, k in zip(full, keep, strict=True) if k)
        )
        seq = ORACLE_SEQUENCES["helly"]
        small = variation_over_family(x, seq, part).value
        large = variation_over_family(x, seq, full).value
        assert small <= large * (1 + 1e-12) + 1e-12

    @pytest.mark.parametrize("name", ["jordan", "wiener-1.5", "waterman"])
    @settings(max_examples=60, deadline=None)
    @given(values=samples, scale=st.floats(1, 5))
    def test_monotone_in_scale(self, name, values, scale):
        seq = ORACLE_SEQUENCES[name]
        x = _uniform(values)
        base = schramm_variation(x, seq).value
        scaled = schramm_variation(x.scaled(scale), seq).value
        assert scaled >= base * (1 - 1e-12) - 1e-12

    def test_family_outside_grid(self, tent):
        from schramm_bv.core import BadGrid

        with pytest.raises(BadGrid):
            variation_over_family(
                tent, jordan(), IntervalFamily.of([(0, 5)])
            )


class TestOracle:
    """Tests for brute_force_variation() against the exact search."""

    def test_helly(self, helly_x, helly_seq):
        assert brute_force_variation(helly_x, helly_seq) == 17 / 16

    def test_too_large(self, rng):
        x = random_grid_function(20, rng)
        with pytest.raises(TooLarge) as exc_info:
            brute_force_variation(x, jordan())
        assert exc_info.value.limit == 16

    def test_iter_selections_count(self):
        """Non-overlapping selections of the 3 intervals of a 2-cell grid."""
        intervals = sorted(all_intervals(3))
        selections = list(iter_selections(intervals))
        assert selections[0] == []
        # {}, {[0,1]}, {[0,1],[1,2]}, {[0,2]}, {[1,2]}
        assert len(selections) == 5

    @pytest.mark.slow
    @pytest.mark.parametrize("name", sorted(ORACLE_SEQUENCES))
    @settings(max_examples=200, deadline=None)
    @given(values=oracle_samples)
    def test_exact_matches_oracle(self, name, values):
        seq = ORACLE_SEQUENCES[name]
        x = _uniform(values)
        exact = schramm_variation(x, seq).value
        oracle = brute_force_variation(x, seq)
        assert math.isclose(exact, oracle, rel_tol=1e-9, abs_tol=1e-12)


class TestFiveSuprema:
    """Tests for five_suprema() on the five-definitions instance."""

    def test_values(self, five_x, five_seq):
        five = five_suprema(five_x, five_seq)
        assert five.beta_grid == five.gamma_grid == five.delta_grid == 30.0
        assert five.alpha_grid == 17.5
        assert five.alpha_star_grid >= 30.5
        assert five.chain_holds()

    @pytest.mark.parametrize("name", ["wiener-2", "waterman", "helly"])
    @settings(max_examples=40, deadline=None)
    @given(values=samples)
    def test_chain_on_random_functions(self, name, values):
        five = five_suprema(_uniform(values), ORACLE_SEQUENCES[name])
        assert five.chain_holds(tol=1e-9 * max(1.0, five.alpha_star_grid))

    def test_alpha_witness_leaves_a_cell_uncovered(self, five_x, five_seq):
        five = five_suprema(five_x, five_seq)
        assert not five.alpha_witness.covers(five_x.cells)

    def test_dyadic_witness(self, five_x, five_seq):
        dyadic = IntervalSelection((GridInterval(0, 1), GridInterval(1, 2)))
        assert selection_value(five_x, five_seq, dyadic, scale=2.0) == 30.5

    def test_to_dict(self, five_x, five_seq):
        data = five_suprema(five_x, five_seq).to_dict()
        assert set(data) == {
            "alpha_grid",
            "alpha_star_grid",
            "beta_grid",
            "gamma_grid",
            "delta_grid",
            "alpha_witness",
        }

    def test_chain_detects_violation(self):
        from schramm_bv.variation import FiveSuprema

        broken = FiveSuprema(5.0, 4.0, 3.0, 3.0, 3.0)
        assert not broken.chain_holds()
