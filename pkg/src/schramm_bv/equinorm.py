"""Equinormed defects and compactness reports at grid scale.

Provides:
- defect(): max over a set of |x|_Φ − |x|_J (or of differences x − y)
- witness_search(): greedy growth of an interval family until defect <= ε
- compactness_report(): witness rows for a list of ε with a verdict
- check_A1_A2(): the sup-attainment and directedness axioms of a seminorm
  family, checked on samples
- IntervalSeminormFamily / ScaledFamily: seminorm families indexed by
  interval families

At grid scale the full family is itself finite, so every set is
equinormed in principle; the diagnostic content is the size and shape of
the witness family and the decay of the defect along the search.
"""

from __future__ import annotations

import logging
from collections.abc import Hashable, Sequence
from dataclasses import dataclass, field
from typing import Any, Literal, Protocol

from .config import get_rel_tol
from .core import (
    GridFunction,
    IntervalFamily,
    YoungSequence,
    all_intervals,
    require_common_grid,
)
from .luxemburg import luxemburg_norm, luxemburg_seminorm, schramm_norm

logger = logging.getLogger(__name__)

Verdict = Literal["certified-equinormed", "fail-at-budget"]
MemberId = int | tuple[int, int]


@dataclass
class DefectReport:
    """The defect of a set against one interval family."""

    defect: float
    argmax: MemberId | None
    family: IntervalFamily
    gaps: list[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "defect": self.defect,
            "argmax": list(self.argmax)
            if isinstance(self.argmax, tuple)
            else self.argmax,
            "family": self.family.to_list(),
        }


@dataclass
class CompactnessRow:
    """One ε of a compactness report; ``family`` is None on FAIL."""

    eps: float
    family: IntervalFamily | None
    defect: float
    cardinality: int

    @property
    def success(self) -> bool:
        return self.family is not None

    def to_dict(self) -> dict:
        return {
            "eps": self.eps,
            "family": self.family.to_list() if self.family else "FAIL",
            "defect": self.defect,
            "cardinality": self.cardinality,
        }


@dataclass
class CompactnessReport:
    """Witness rows sorted by decreasing ε."""

    rows: list[CompactnessRow] = field(default_factory=list)

    @property
    def verdict(self) -> Verdict:
        if all(row.success for row in self.rows):
            return "certified-equinormed"
        return "fail-at-budget"

    def to_dict(self) -> dict:
        return {
            "rows": [row.to_dict() for row in self.rows],
            "verdict": self.verdict,
        }


# ========== Defects ==========


class _Gaps:
    """Members of a defect computation with their cached full seminorms."""

    def __init__(
        self,
        members: Sequence[GridFunction],
        seq: YoungSequence,
        pairwise: bool,
    ):
        require_common_grid(members)
        self.seq = seq
        if pairwise:
            self.ids: list[MemberId] = [
                (i, j)
                for i in range(len(members))
                for j in range(i + 1, len(members))
            ]
            self.members = [members[i] - members[j] for i, j in self.ids]
        else:
            self.ids = list(range(len(members)))
            self.members = list(members)
        self.grid_points = len(members[0]) if members else 2
        self.full_family = all_intervals(self.grid_points)
        self.full = [
            luxemburg_seminorm(x, seq, self.full_family).value
            for x in self.members
        ]

    def gaps(self, family: IntervalFamily) -> list[float]:
        if family == self.full_family:
            return [0.0] * len(self.members)
        return [
            max(0.0, full - luxemburg_seminorm(x, self.seq, family).value)
            for x, full in zip(self.members, self.full, strict=True)
        ]

    def report(self, family: IntervalFamily) -> DefectReport:
        gaps = self.gaps(family)
        if not gaps:
            return DefectReport(0.0, None, family, [])
        worst = max(range(len(gaps)), key=lambda k: (gaps[k], -k))
        return DefectReport(gaps[worst], self.ids[worst], family, gaps)


def defect(
    members: Sequence[GridFunction],
    seq: YoungSequence,
    family: IntervalFamily,
    pairwise: bool = False,
) -> DefectReport:
    """
    Equinormed defect of a set against the family J.

    Args:
        members: Functions sharing one grid.
        seq: The Young sequence.
        family: The interval family J.
        pairwise: Use differences x − y over unordered pairs instead of the
            members themselves.

    Returns:
        DefectReport with the largest gap and the member (index) or pair
        (index tuple) attaining it. The |x(0)| terms cancel, so only the
        seminorm parts are compared.

    Raises:
        MixedGrids: Members do not share a grid.
    """
    return _Gaps(members, seq, pairwise).report(family)


# ========== Witness Search ==========


def _grow(
    gaps: _Gaps,
    eps: float,
    budget: int,
    family: IntervalFamily,
    current: list[float],
) -> tuple[IntervalFamily, list[float], bool]:
    """Add intervals greedily until the defect is <= eps or budget is hit."""
    while current and max(current) > eps:
        if len(family) >= budget:
            return family, current, False
        best_key = None
        best_family = family
        best_gaps = current
        for interval in gaps.full_family:
            if interval in family:
                continue
            trial = family.with_interval(interval)
            trial_gaps = gaps.gaps(trial)
            key = (max(trial_gaps), sum(trial_gaps), interval)
            if best_key is None or key < best_key:
                best_key, best_family, best_gaps = key, trial, trial_gaps
        if best_family is family:
            return family, current, False
        family, current = best_family, best_gaps
        logger.debug(
            "Witness search: |J|=%d defect=%r", len(family), max(current)
        )
    return family, current, True


def _default_budget(gaps: _Gaps) -> int:
    return len(gaps.full_family)


def witness_search(
    members: Sequence[GridFunction],
    seq: YoungSequence,
    eps: float,
    pairwise: bool = False,
    budget: int | None = None,
) -> CompactnessRow:
    """
    Grow an interval family greedily until the defect is at most eps.

    Each step adds the grid interval giving the smallest resulting defect;
    ties go to the smallest total gap, then to the lexicographically first
    interval. The row always carries the exact defect of the returned
    family.

    Args:
        members: Functions sharing one grid.
        seq: The Young sequence.
        eps: Target defect.
        pairwise: Work with differences x − y.
        budget: Largest family size. Defaults to the number of grid
            intervals m(m+1)/2.

    Returns:
        CompactnessRow; ``family`` is None when the budget ran out.
    """
    gaps = _Gaps(members, seq, pairwise)
    empty = IntervalFamily()
    limit = budget if budget is not None else _default_budget(gaps)
    family, current, ok = _grow(gaps, eps, limit, empty, gaps.gaps(empty))
    worst = max(current, default=0.0)
    return CompactnessRow(eps, family if ok else None, worst, len(family))


def compactness_report(
    members: Sequence[GridFunction],
    seq: YoungSequence,
    eps_list: Sequence[float],
    pairwise: bool = False,
    budget: int | None = None,
) -> CompactnessReport:
    """
    Run the witness search for every ε, largest first.

    The greedy path is shared: each row continues from the family of the
    previous (larger) ε, which gives the same families as independent runs.
    """
    gaps = _Gaps(members, seq, pairwise)
    limit = budget if budget is not None else _default_budget(gaps)
    family = IntervalFamily()
    current = gaps.gaps(family)
    report = CompactnessReport()
    exhausted = False
    for eps in sorted(eps_list, reverse=True):
        if not exhausted:
            family, current, ok = _grow(gaps, eps, limit, family, current)
            exhausted = not ok
        worst = max(current, default=0.0)
        success = not exhausted and worst <= eps
        report.rows.append(
            CompactnessRow(eps, family if success else None, worst, len(family))
        )
    logger.info("Compactness verdict: %s", report.verdict)
    return report


# ========== Axiom Checks ==========


class SeminormFamily(Protocol):
    """A family of seminorms ‖·‖_i with a join on indices."""

    tolerance: float

    def norm(self, sample: Any) -> float: ...

    def seminorm(self, sample: Any, index: Hashable) -> float: ...

    def join(self, i: Hashable, j: Hashable) -> Hashable: ...


@dataclass
class IntervalSeminormFamily:
    """‖x‖_J over finite interval families; the join is the union."""

    seq: YoungSequence
    tolerance: float = field(default_factory=lambda: 2 * get_rel_tol())

    def norm(self, sample: GridFunction) -> float:
        return schramm_norm(sample, self.seq)

    def seminorm(self, sample: GridFunction, index: IntervalFamily) -> float:
        return luxemburg_norm(sample, self.seq, index)

    def join(self, i: IntervalFamily, j: IntervalFamily) -> IntervalFamily:
        return i.union(j)


@dataclass
class ScaledFamily:
    """Another family with every seminorm multiplied by ``factor``."""

    base: SeminormFamily
    factor: float
    tolerance: float = 0.0

    def norm(self, sample: Any) -> float:
        return self.base.norm(sample)

    def seminorm(self, sample: Any, index: Hashable) -> float:
        return self.factor * self.base.seminorm(sample, index)

    def join(self, i: Hashable, j: Hashable) -> Hashable:
        return self.base.join(i, j)


@dataclass
class AxiomRow:
    """One axiom check on one sample."""

    sample: int
    check: Literal["A1", "A2"]
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "sample": self.sample,
            "check": self.check,
            "passed": self.passed,
            "detail": self.detail,
        }


@dataclass
class AxiomReport:
    """Rows of check_A1_A2; violations are rows, never exceptions."""

    rows: list[AxiomRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    def failures(self, check: str | None = None) -> list[AxiomRow]:
        return [
            r
            for r in self.rows
            if not r.passed and (check is None or r.check == check)
        ]


def check_A1_A2(
    family: SeminormFamily,
    samples: Sequence[Any],
    indices: Sequence[Hashable],
) -> AxiomReport:
    """
    Check (A1) and (A2) of a seminorm family on samples.

    (A1): the largest seminorm over the given indices matches the norm,
    within 1e-10 relative (the indices should include a maximal one).
    (A2): at the join of any two indices both component seminorms are
    dominated, within 1e-12 relative or the family's own tolerance.
    """
    report = AxiomReport()
    tol_join = max(1e-12, family.tolerance)
    for k, sample in enumerate(samples):
        norm = family.norm(sample)
        values = {idx: family.seminorm(sample, idx) for idx in indices}
        top = max(values.values(), default=0.0)
        slack = max(1e-10, family.tolerance) * max(1.0, abs(norm))
        report.rows.append(
            AxiomRow(
                k,
                "A1",
                abs(top - norm) <= slack,
                f"sup={top!r} norm={norm!r}",
            )
        )

        worst = 0.0
        for a in range(len(indices)):
            for b in range(a + 1, len(indices)):
                i, j = indices[a], indices[b]
                joined = family.seminorm(sample, family.join(i, j))
                for part in (values[i], values[j]):
                    excess = part - joined
                    worst = max(worst, excess / max(1.0, abs(part)))
        report.rows.append(
            AxiomRow(k, "A2", worst <= tol_join, f"worst excess={worst!r}")
        )
    return report
