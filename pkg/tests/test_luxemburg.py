"""Tests for Luxemburg seminorms and norms."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schramm_bv.core import (
    IntervalFamily,
    all_intervals,
    jordan,
    make_grid_function,
    random_grid_function,
    waterman,
    wiener,
)
from schramm_bv.luxemburg import (
    luxemburg_dual_formula,
    luxemburg_norm,
    luxemburg_seminorm,
    schramm_norm,
    sup_norm_bound_constant,
)
from schramm_bv.variation import jordan_variation, schramm_variation


class TestLuxemburgSeminorm:
    """Tests for luxemburg_seminorm()."""

    def test_tent_jordan(self, tent):
        value = luxemburg_seminorm(tent, jordan(), all_intervals(tent))
        assert value.value == pytest.approx(2.0, abs=1e-9)
        lo, hi = value.bracket
        assert lo <= value.value == hi

    def test_zero_increments(self):
        x = make_grid_function([0, 0.5, 1], [3, 3, 3])
        value = luxemburg_seminorm(x, wiener(2), all_intervals(x))
        assert value.value == 0.0
        assert value.evaluations == 0

    def test_wiener_closed_form(self, tent):
        """Two unit increments: 2/λ² <= 1 at λ = √2."""
        value = luxemburg_seminorm(tent, wiener(2), all_intervals(tent))
        assert value.value == pytest.approx(math.sqrt(2), rel=1e-9)

    @pytest.mark.parametrize("p", [1.5, 2, 3])
    @pytest.mark.parametrize("seed", range(4))
    def test_wiener_is_pth_root_of_variation(self, p, seed):
        x = random_grid_function(6, np.random.default_rng(seed))
        seq = wiener(p)
        value = luxemburg_seminorm(x, seq, all_intervals(x)).value
        root = schramm_variation(x, seq).value ** (1 / p)
        assert value == pytest.approx(root, rel=1e-9)

    def test_jordan_equals_variation(self, rng):
        x = random_grid_function(9, rng)
        value = luxemburg_seminorm(x, jordan(), all_intervals(x)).value
        assert value == pytest.approx(jordan_variation(x), rel=1e-9)

    def test_value_is_feasible(self, helly_x, helly_seq):
        """The reported λ satisfies V(x/λ) <= 1."""
        value = luxemburg_seminorm(helly_x, helly_seq, all_intervals(helly_x))
        scaled = helly_x.scaled(1.0 / value.value)
        assert schramm_variation(scaled, helly_seq).value <= 1.0

    def test_homogeneous(self, helly_x, helly_seq):
        family = all_intervals(helly_x)
        base = luxemburg_seminorm(helly_x, helly_seq, family).value
        scaled = luxemburg_seminorm(helly_x.scaled(-3.0), helly_seq, family)
        assert scaled.value == pytest.approx(3.0 * base, rel=1e-9)

    def test_smaller_family_gives_smaller_seminorm(self, rng):
        x = random_grid_function(6, rng)
        seq = waterman([4, 2, 1])
        full = luxemburg_seminorm(x, seq, all_intervals(x)).value
        cells = IntervalFamily.of([(i, i + 1) for i in range(x.cells)])
        part = luxemburg_seminorm(x, seq, cells).value
        assert part <= full * (1 + 1e-9)

    def test_tolerance_controls_bracket(self, rng):
        x = random_grid_function(5, rng)
        family = all_intervals(x)
        value = luxemburg_seminorm(x, wiener(2), family, rel_tol=1e-3)
        lo, hi = value.bracket
        assert hi - lo <= 1e-3 * max(1.0, hi)

    @settings(max_examples=30, deadline=None)
    @given(
        st.lists(
            st.floats(-2, 2, allow_nan=False, allow_infinity=False),
            min_size=3,
            max_size=5,
        ),
        st.lists(
            st.floats(-2, 2, allow_nan=False, allow_infinity=False),
            min_size=3,
            max_size=5,
        ),
    )
    def test_triangle_inequality(self, a, b):
        size = min(len(a), len(b))
        grid = np.linspace(0, 1, size)
        x = make_grid_function(grid, a[:size])
        y = make_grid_function(grid, b[:size])
        seq = wiener(2)
        family = all_intervals(x)

        def semi(f):
            return luxemburg_seminorm(f, seq, family).value

        assert semi(x + y) <= semi(x) + semi(y) + 1e-8


class TestNorms:
    """Tests for luxemburg_norm() and schramm_norm()."""

    def test_schramm_norm_adds_start_value(self, helly_x):
        assert schramm_norm(helly_x, jordan()) == pytest.approx(
            0.75 + 1.25, abs=1e-9
        )

    def test_luxemburg_norm_on_family(self, tent):
        family = IntervalFamily.of([(0, 1)])
        assert luxemburg_norm(tent, jordan(), family) == pytest.approx(1.0)


class TestDualFormula:
    """Tests for luxemburg_dual_formula()."""

    def test_matches_bisection_on_helly(self, helly_x, helly_seq):
        family = all_intervals(helly_x)
        direct = luxemburg_seminorm(helly_x, helly_seq, family).value
        dual = luxemburg_dual_formula(helly_x, helly_seq, family)
        assert dual == pytest.approx(direct, rel=1e-8)

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_bisection_on_random(self, seed):
        x = random_grid_function(5, np.random.default_rng(seed))
        seq = waterman([3, 1])
        family = all_intervals(x)
        direct = luxemburg_seminorm(x, seq, family).value
        dual = luxemburg_dual_formula(x, seq, family)
        assert dual == pytest.approx(direct, rel=1e-8)

    def test_budget(self, rng):
        from schramm_bv.core import BudgetExceeded

        x = random_grid_function(6, rng)
        with pytest.raises(BudgetExceeded):
            luxemburg_dual_formula(x, jordan(), all_intervals(x), budget=3)


class TestSupNormBound:
    """Tests for sup_norm_bound_constant()."""

    def test_jordan(self):
        assert sup_norm_bound_constant(jordan()) == 1.0

    def test_small_first_weight(self):
        assert sup_norm_bound_constant(waterman([0.25])) == 4.0

    def test_bounds_sup(self, rng):
        x = random_grid_function(6, rng)
        seq = waterman([0.5, 0.25])
        c = sup_norm_bound_constant(seq)
        assert np.max(np.abs(x.values)) <= c * schramm_norm(x, seq) + 1e-9
