"""Continuity and compactness certificates for integral operators BV → ΦBV.

Provides:
- h2_certificate(): largest dyadic-bracket μ with
  max_ξ var_Φ(μ·∫_0^ξ k(·,s) ds) <= 1
- h3_modulus(): per ε, the largest grid length δ such that every grid
  subinterval [a,b] with b − a <= δ has var_Φ(ε⁻¹·∫_a^b k(·,s) ds) <= 1
- h3_implies_h2(): the μ = 1/n construction from δ(1)
- continuity_bound(): M = ∫|k(0,s)| ds + 2/μ with an empirical battery
  ratio

Only grid values of ξ, a and b are checked: continuum (H2) and (H3) are
approximated from inside the grid.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from ..config import get_mu_steps
from ..core import GridFunction, SchrammError, YoungSequence
from ..luxemburg import schramm_norm
from ..variation import schramm_variation
from .kernel import Kernel, apply_operator, interval_field
from .probe import battery_members, bv_norm

logger = logging.getLogger(__name__)

LOG2_MU_MIN = -40.0
LOG2_MU_MAX = 40.0
# Slack on the variation bound when verifying a certified value
BOUND_SLACK = 1e-9
# Decimals kept when grouping grid subinterval lengths
LENGTH_DECIMALS = 12


class H3Unavailable(SchrammError):
    """Raised when the (H3) modulus fails at ε = 1."""


@dataclass
class H2Certificate:
    """Result of the (H2) search; ``mu`` is None when no μ certifies."""

    mu: float | None
    sup_variation_at_mu: float | None
    xi_argmax: float | None
    evaluations: int = 0
    h1_passed: bool = True

    @property
    def certified(self) -> bool:
        return self.mu is not None

    def to_dict(self) -> dict:
        return {
            "mu": self.mu,
            "sup_variation_at_mu": self.sup_variation_at_mu,
            "xi_argmax": self.xi_argmax,
            "evaluations": self.evaluations,
            "h1_passed": self.h1_passed,
        }


@dataclass
class H3Row:
    """δ(ε), or the shortest failing subinterval when verdict is fail."""

    eps: float
    delta: float | None
    verdict: Literal["ok", "fail"]
    failing_interval: tuple[float, float] | None = None
    failing_variation: float | None = None

    def to_dict(self) -> dict:
        return {
            "eps": self.eps,
            "delta": self.delta,
            "verdict": self.verdict,
            "failing_interval": list(self.failing_interval)
            if self.failing_interval
            else None,
            "failing_variation": self.failing_variation,
        }


@dataclass
class H3Modulus:
    rows: list[H3Row] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row.verdict == "ok" for row in self.rows)

    def delta(self, eps: float) -> float | None:
        for row in self.rows:
            if row.eps == eps:
                return row.delta
        raise KeyError(eps)

    def to_dict(self) -> dict:
        return {"rows": [row.to_dict() for row in self.rows]}


@dataclass
class H3ImpliesH2:
    """μ = 1/n from δ(1), checked directly and against the (H2) search."""

    delta_at_one: float
    n: int
    mu: float
    verified: bool
    sup_variation: float
    certificate_mu: float | None

    def to_dict(self) -> dict:
        return {
            "delta_at_one": self.delta_at_one,
            "n": self.n,
            "mu": self.mu,
            "verified": self.verified,
            "sup_variation": self.sup_variation,
            "certificate_mu": self.certificate_mu,
        }


@dataclass
class ContinuityBound:
    """M with the largest ‖Kx‖_Φ / ‖x‖_BV seen on the test battery."""

    bound: float
    row_integral: float
    empirical_ratio: float
    members: int

    @property
    def holds(self) -> bool:
        return self.empirical_ratio <= self.bound + 1e-6

    def to_dict(self) -> dict:
        return {
            "bound": self.bound,
            "row_integral": self.row_integral,
            "empirical_ratio": self.empirical_ratio,
            "members": self.members,
            "holds": self.holds,
        }


# ========== (H2) ==========


def _sup_variation(
    kernel: Kernel, seq: YoungSequence, mu: float, budget: int | None
) -> tuple[float, int]:
    """max over grid ξ of var_Φ(μ·F(ξ,·)) with the attaining column."""
    best, argmax = -1.0, 0
    for j in range(len(kernel.grid_s)):
        field_ = GridFunction(kernel.grid_t, mu * kernel.primitives[:, j])
        value = schramm_variation(field_, seq, budget=budget).value
        if value > best:
            best, argmax = value, j
    return best, argmax


def h2_certificate(
    kernel: Kernel,
    seq: YoungSequence,
    budget: int | None = None,
    steps: int | None = None,
) -> H2Certificate:
    """
    Binary-search the largest μ in [2^-40, 2^40] satisfying (H2) on grid ξ.

    The search bisects log2 μ for SCHRAMM_BV_MU_STEPS steps and reports the
    feasible end of the final bracket. A kernel whose primitives all have
    zero variation is certified at the 2^40 cap.

    Raises:
        BudgetExceeded: The variation engine ran out of nodes.

    Example:
        >>> k = rank_one_kernel([0, 0.5, 1], [0, 1, 0], [0, 0.5, 1])
        >>> round(h2_certificate(k, jordan()).mu, 9)
        0.5
    """
    steps = steps if steps is not None else get_mu_steps()
    evaluations = 0

    def probe(log_mu: float) -> tuple[float, int]:
        nonlocal evaluations
        evaluations += 1
        return _sup_variation(kernel, seq, 2.0**log_mu, budget)

    cap_value, cap_arg = probe(LOG2_MU_MAX)
    if cap_value <= 1.0:
        return H2Certificate(
            2.0**LOG2_MU_MAX,
            cap_value,
            float(kernel.grid_s[cap_arg]),
            evaluations,
        )
    lo_value, lo_arg = probe(LOG2_MU_MIN)
    if lo_value > 1.0:
        logger.warning("No μ >= 2^%d certifies (H2)", int(LOG2_MU_MIN))
        return H2Certificate(None, None, None, evaluations)

    lo, hi = LOG2_MU_MIN, LOG2_MU_MAX
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        value, arg = probe(mid)
        if value <= 1.0:
            lo, lo_value, lo_arg = mid, value, arg
        else:
            hi = mid
    mu = 2.0**lo
    logger.info("(H2) certified at μ=%r after %d evaluations", mu, evaluations)
    return H2Certificate(
        mu, lo_value, float(kernel.grid_s[lo_arg]), evaluations
    )


# ========== (H3) ==========


def _length_groups(
    grid: np.ndarray,
) -> list[tuple[float, list[tuple[int, int]]]]:
    """Grid subintervals a < b grouped by length, shortest first."""
    groups: dict[float, list[tuple[int, int]]] = {}
    for a in range(len(grid)):
        for b in range(a + 1, len(grid)):
            key = round(float(grid[b] - grid[a]), LENGTH_DECIMALS)
            groups.setdefault(key, []).append((a, b))
    return sorted(groups.items())


def h3_modulus(
    kernel: Kernel,
    seq: YoungSequence,
    eps_list: Sequence[float],
    budget: int | None = None,
) -> H3Modulus:
    """
    Per ε, the largest grid length δ for which (H3) holds on grid_s.

    Lengths are scanned upward; δ(ε) is the last length before the first
    subinterval with var_Φ(ε⁻¹·∫_a^b k(·,s) ds) > 1 + 1e-9, and 1 when
    nothing fails. A failure at the shortest length gives a fail row
    carrying the offending interval.

    Raises:
        BudgetExceeded: The variation engine ran out of nodes.
    """
    groups = _length_groups(kernel.grid_s)
    modulus = H3Modulus()
    for eps in eps_list:
        delta: float | None = None
        failing = None
        for length, pairs in groups:
            for a, b in pairs:
                scaled = interval_field(kernel, a, b).scaled(1.0 / eps)
                value = schramm_variation(scaled, seq, budget=budget).value
                if value > 1.0 + BOUND_SLACK:
                    failing = (
                        (float(kernel.grid_s[a]), float(kernel.grid_s[b])),
                        value,
                    )
                    break
            if failing:
                break
            delta = length
        if failing is None:
            modulus.rows.append(H3Row(eps, 1.0, "ok"))
        elif delta is None:
            modulus.rows.append(H3Row(eps, None, "fail", *failing))
        else:
            modulus.rows.append(H3Row(eps, delta, "ok", *failing))
        logger.debug("(H3) ε=%r δ=%r", eps, modulus.rows[-1].delta)
    return modulus


def h3_implies_h2(
    kernel: Kernel, seq: YoungSequence, budget: int | None = None
) -> H3ImpliesH2:
    """
    Build μ = 1/n with n = ceil(1/δ(1)) and verify (H2) at it.

    Splitting [0, ξ] into n pieces of length <= δ(1) and using convexity
    gives var_Φ(∫_0^ξ k/n) <= 1; the check evaluates it directly.

    Raises:
        H3Unavailable: δ(1) does not exist on the grid.
    """
    row = h3_modulus(kernel, seq, [1.0], budget).rows[0]
    if row.delta is None:
        raise H3Unavailable("(H3) fails at ε = 1 on the grid")
    n = max(1, math.ceil(1.0 / row.delta - BOUND_SLACK))
    mu = 1.0 / n
    sup_var, _ = _sup_variation(kernel, seq, mu, budget)
    certificate = h2_certificate(kernel, seq, budget)
    return H3ImpliesH2(
        delta_at_one=row.delta,
        n=n,
        mu=mu,
        verified=sup_var <= 1.0 + BOUND_SLACK,
        sup_variation=sup_var,
        certificate_mu=certificate.mu,
    )


# ========== Continuity Bound ==========


def continuity_bound(
    kernel: Kernel,
    seq: YoungSequence,
    mu: float,
    v_max: int = 16,
) -> ContinuityBound:
    """
    M = ∫_0^1 |k(t_0, s)| ds + 2/μ, with ‖Kx‖_Φ / ‖x‖_BV tabulated on the
    spike, plateau and sawtooth batteries and on the constant 1.
    """
    row = kernel.row_integral(0)
    bound = row + 2.0 / mu
    members = battery_members(kernel.grid_s, v_max=v_max)
    members.append(GridFunction(kernel.grid_s, np.ones(len(kernel.grid_s))))
    ratio = 0.0
    for x in members:
        size = bv_norm(x)
        if size == 0.0:
            continue
        ratio = max(ratio, schramm_norm(apply_operator(kernel, x), seq) / size)
    if ratio > bound + 1e-6:
        logger.warning("Battery ratio %r exceeds bound %r", ratio, bound)
    return ContinuityBound(bound, row, ratio, len(members))
