"""Shared pytest fixtures for schramm-bv tests."""

from __future__ import annotations

import os

import numpy as np
import pytest

from schramm_bv.core import (
    GridFunction,
    YoungSequence,
    make_grid_function,
    waterman,
)
from schramm_bv.fixtures import fixture_path
from schramm_bv.operators import (
    Kernel,
    lower_triangular_kernel,
    rank_one_kernel,
)
from schramm_bv.serialize import (
    load_function_set,
    load_grid_function,
    load_kernel,
    parse_young,
)


@pytest.fixture(autouse=True)
def clean_env(monkeypatch: pytest.MonkeyPatch):
    """Drop SCHRAMM_BV_* overrides from the caller's environment."""
    for name in list(os.environ):
        if name.startswith("SCHRAMM_BV_"):
            monkeypatch.delenv(name)


@pytest.fixture
def helly_x() -> GridFunction:
    """(0.75, 0, 0.5) on {0, ½, 1}."""
    return load_grid_function(fixture_path("helly_remark"))


@pytest.fixture
def helly_seq() -> YoungSequence:
    """φ_1 = t, φ_n = t² on [0, 1], both continued linearly above 1."""
    return parse_young(str(fixture_path("helly_young")))


@pytest.fixture
def five_x() -> GridFunction:
    """(0, 1.5, 1.75, 3) on {0, ½, ¾, 1}."""
    return load_grid_function(fixture_path("five_definitions"))


@pytest.fixture
def five_seq() -> YoungSequence:
    return waterman([10, 1])


@pytest.fixture
def tent() -> GridFunction:
    return make_grid_function([0, 0.5, 1], [0, 1, 0])


@pytest.fixture
def ramps() -> list[GridFunction]:
    return load_function_set(fixture_path("ramps"))


@pytest.fixture
def tri_kernel() -> Kernel:
    """1_{s≤t} on an 11-point grid, diagonal at ½."""
    return load_kernel(fixture_path("tri"))


@pytest.fixture
def tent_kernel() -> Kernel:
    """Rank-one k(t,s) = g(t) with g the (0, 1, 0) tent."""
    return rank_one_kernel([0, 0.5, 1], [0, 1, 0], [0, 0.5, 1])


@pytest.fixture
def probe_kernel() -> Kernel:
    """The tent kernel on a 129-point s-grid, for battery probes."""
    return load_kernel(fixture_path("tent_kernel"))


@pytest.fixture
def fine_tri_kernel() -> Kernel:
    return lower_triangular_kernel(np.linspace(0.0, 1.0, 21))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(0)
