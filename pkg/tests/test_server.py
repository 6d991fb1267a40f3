"""Tests for MCP server tools.

Tests the 6 MCP tools exposed by server.py:
- variation
- norm
- five_suprema
- equinorm_report
- operator_certificate
- reproduce_examples
"""

from __future__ import annotations

import pytest

TRI_GRID = [0.0, 0.25, 0.5, 0.75, 1.0]


class TestVariation:
    """Tests for variation() tool."""

    @pytest.mark.asyncio
    async def test_tent(self):
        """variation returns the Jordan variation with its witness."""
        from schramm_bv.server import variation

        result = await variation([0, 0.5, 1], [0, 1, 0])

        assert result["value"] == 2.0
        assert result["witness"]["intervals"] == [[0, 1], [1, 2]]
        assert result["mode"] == "exact"

    @pytest.mark.asyncio
    async def test_inline_json_young(self):
        """variation accepts an inline JSON Young description."""
        from schramm_bv.server import variation

        young = (
            '{"kind": "custom", "functions": ['
            '{"knots": [0, 1, 2], "values": [0, 1, 3]}, '
            '{"scale": 1, "p": 2, "knee": 1}]}'
        )
        result = await variation([0, 0.5, 1], [0.75, 0, 0.5], young)

        assert result["value"] == 17 / 16

    @pytest.mark.asyncio
    async def test_bad_grid_raises_value_error(self):
        """Library errors surface as ValueError."""
        from schramm_bv.server import variation

        with pytest.raises(ValueError, match="grid"):
            await variation([0, 0.7, 0.5, 1], [0, 0, 0, 0])

    @pytest.mark.asyncio
    async def test_bad_young_raises_value_error(self):
        from schramm_bv.server import variation

        with pytest.raises(ValueError):
            await variation([0, 1], [0, 1], "wiener:0.5")


class TestNorm:
    """Tests for norm() tool."""

    @pytest.mark.asyncio
    async def test_adds_start_value(self):
        from schramm_bv.server import norm

        result = await norm([0, 0.5, 1], [1, 2, 1])

        assert result["seminorm"] == pytest.approx(2.0, abs=1e-9)
        assert result["norm"] == pytest.approx(3.0, abs=1e-9)
        lo, hi = result["bracket"]
        assert lo <= hi


class TestFiveSuprema:
    """Tests for five_suprema() tool."""

    @pytest.mark.asyncio
    async def test_five_definitions_instance(self):
        from schramm_bv.server import five_suprema

        result = await five_suprema(
            [0, 0.5, 0.75, 1], [0, 1.5, 1.75, 3], "waterman:10,1"
        )

        assert result["beta_grid"] == 30.0
        assert result["alpha_grid"] == 17.5
        assert result["chain_holds"] is True


class TestEquinormReport:
    """Tests for equinorm_report() tool."""

    @pytest.mark.asyncio
    async def test_ramps(self):
        from schramm_bv.server import equinorm_report

        result = await equinorm_report(
            [0, 0.25, 0.5, 0.75, 1],
            [[0, 0.25, 0.5, 0.75, 1], [0, 0, 0.5, 0.5, 1]],
            [0.1],
        )

        assert result["verdict"] == "certified-equinormed"
        assert result["rows"][0]["defect"] <= 0.1

    @pytest.mark.asyncio
    async def test_members_off_grid(self):
        from schramm_bv.server import equinorm_report

        with pytest.raises(ValueError):
            await equinorm_report([0, 1], [[0, 1, 2]], [0.1])


class TestOperatorCertificate:
    """Tests for operator_certificate() tool."""

    @pytest.mark.asyncio
    async def test_tent_kernel(self):
        """Rank-one tent kernel: μ = ½ and M = 4."""
        from schramm_bv.server import operator_certificate

        grid = [0, 0.5, 1]
        kernel = [[0, 0, 0], [1, 1, 1], [0, 0, 0]]
        result = await operator_certificate(grid, grid, kernel)

        assert result["h2"]["mu"] == pytest.approx(0.5, rel=1e-9)
        assert result["h3"][0]["delta"] == 0.5
        assert result["continuity"]["bound"] == pytest.approx(4.0)

    @pytest.mark.asyncio
    async def test_zero_kernel(self):
        from schramm_bv.server import operator_certificate

        kernel = [[0.0] * 5 for _ in TRI_GRID]
        result = await operator_certificate(
            TRI_GRID, TRI_GRID, kernel, eps=[0.5, 0.1]
        )

        assert result["h2"]["mu"] == 2.0**40
        assert [row["delta"] for row in result["h3"]] == [1.0, 1.0]

    @pytest.mark.asyncio
    async def test_shape_mismatch(self):
        from schramm_bv.server import operator_certificate

        with pytest.raises(ValueError, match="shape"):
            await operator_certificate([0, 1], [0, 1], [[1, 2, 3]])


class TestReproduceExamples:
    """Tests for reproduce_examples() tool."""

    @pytest.mark.asyncio
    async def test_all_rows_pass(self):
        from schramm_bv.server import reproduce_examples

        rows = await reproduce_examples()

        assert rows
        assert all(row["passed"] for row in rows)
        assert rows[0]["label"] == "var_Φ = 17/16"
