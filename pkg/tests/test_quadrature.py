"""Tests for Lebesgue and Riemann–Stieltjes integration on grids."""

from __future__ import annotations

import math

import numpy as np
import pytest

from schramm_bv.core import (
    GridFunction,
    MixedGrids,
    make_grid_function,
    random_grid_function,
    waterman,
    wiener,
)
from schramm_bv.quadrature import (
    PreconditionError,
    check_integration_by_parts,
    check_jensen,
    check_reduction,
    cumulative_primitive,
    lebesgue_integral,
    rs_integral,
)

T5 = np.linspace(0, 1, 5)


def _on_grid(grid: np.ndarray, values) -> GridFunction:
    return make_grid_function(grid, values)


class TestLebesgue:
    """Tests for lebesgue_integral() and cumulative_primitive()."""

    def test_linear_exact(self):
        assert lebesgue_integral(_on_grid(T5, T5)) == 0.5

    def test_primitive_of_one(self):
        primitive = cumulative_primitive(_on_grid(T5, np.ones(5)))
        assert primitive.values.tolist() == T5.tolist()

    def test_primitive_ends_at_integral(self, rng):
        f = random_grid_function(10, rng)
        primitive = cumulative_primitive(f)
        assert primitive.values[0] == 0.0
        assert primitive.values[-1] == pytest.approx(lebesgue_integral(f))


class TestStieltjes:
    """Tests for rs_integral()."""

    @pytest.mark.parametrize(
        ("conv", "expected"),
        [("right", 0.625), ("left", 0.375), ("midpoint", 0.5)],
    )
    def test_conventions(self, conv, expected):
        t = _on_grid(T5, T5)
        assert rs_integral(t, t, conv) == expected

    def test_integral_of_one_telescopes(self, rng):
        """∫1 dg equals g(1) − g(0) exactly."""
        g = random_grid_function(50, rng)
        one = GridFunction(g.grid, np.ones(len(g)))
        assert rs_integral(one, g) == g.values[-1] - g.values[0]

    def test_unknown_convention(self):
        t = _on_grid(T5, T5)
        with pytest.raises(ValueError):
            rs_integral(t, t, "trapezoid")  # type: ignore[arg-type]

    def test_mixed_grids(self, tent):
        other = _on_grid(T5, T5)
        with pytest.raises(MixedGrids):
            rs_integral(tent, other)


class TestIdentities:
    """Tests for the integration-by-parts, Jensen and reduction checks."""

    @pytest.mark.parametrize("seed", range(100))
    def test_integration_by_parts(self, seed):
        rng = np.random.default_rng(seed)
        f = random_grid_function(40, rng)
        g = GridFunction(f.grid, rng.standard_normal(len(f)))
        scale = max(1.0, float(np.sum(np.abs(f.values) * np.abs(g.values))))
        residual = check_integration_by_parts(f, g)
        assert abs(residual) <= 1e-12 * scale

    @pytest.mark.parametrize("seed", range(50))
    def test_jensen_margin(self, seed):
        rng = np.random.default_rng(seed)
        grid = np.linspace(0, 1, 21)
        f = GridFunction(grid, np.abs(rng.standard_normal(21)))
        g = GridFunction(grid, np.sort(rng.uniform(0, 1, 21)))
        for seq in (wiener(2), wiener(3.5), waterman([2, 1])):
            assert check_jensen(seq, 1, f, g) >= -1e-12

    def test_jensen_fuzz(self):
        rng = np.random.default_rng(7)
        grid = np.linspace(0, 1, 6)
        seq = wiener(2.5)
        worst = math.inf
        for _ in range(10_000):
            f = GridFunction(grid, rng.uniform(0, 4, 6))
            g = GridFunction(grid, np.sort(rng.uniform(0, 1, 6)))
            worst = min(worst, check_jensen(seq, 1, f, g))
        assert worst >= -1e-12

    def test_jensen_needs_non_negative_f(self):
        f = _on_grid(T5, -T5)
        g = _on_grid(T5, T5)
        with pytest.raises(PreconditionError):
            check_jensen(wiener(2), 1, f, g)

    def test_jensen_needs_monotone_g(self, tent):
        f = GridFunction(tent.grid, np.ones(3))
        with pytest.raises(PreconditionError):
            check_jensen(wiener(2), 1, f, tent)

    def test_jensen_needs_unit_range(self):
        f = _on_grid(T5, T5)
        g = _on_grid(T5, 2 * T5)
        with pytest.raises(PreconditionError):
            check_jensen(wiener(2), 1, f, g)

    def test_reduction_constant_integrand(self):
        """With f constant the midpoint sum matches the trapezoid rule."""
        grid = np.linspace(0, 1, 11)
        f = GridFunction(grid, np.full(11, 3.0))
        g = GridFunction(grid, np.sin(grid))
        assert abs(check_reduction(f, g)) <= 1e-12

    def test_reduction_is_second_order(self):
        """f = t, g = t² leaves exactly −h²/4; the log-log slope is 2."""
        residuals = []
        for cells in (25, 50, 100):
            grid = np.linspace(0, 1, cells + 1)
            f = GridFunction(grid, grid)
            g = GridFunction(grid, grid**2)
            residuals.append(abs(check_reduction(f, g)))
        assert residuals[0] == pytest.approx(0.25 / 25**2, rel=1e-6)
        slope = math.log(residuals[0] / residuals[2]) / math.log(4)
        assert 1.8 <= slope <= 2.2
