"""Command-line interface for schramm-bv.

Provides commands for:
- variation / norm / oracle: var_Φ x, ‖x‖_Φ and the brute-force reference
- five: the five grid suprema of one function
- equinorm: compactness witnesses of a function set
- lp-check: the l^p tail criterion of a sequence set
- operator-h2 / operator-h3 / probe: integral operator certificates
- reproduce: the regression set of worked examples
- serve: run the MCP tool server

Exit codes: 0 success, 2 a computed FAIL verdict, 1 could not compute.

Usage:
    schramm-bv variation --input x.json --young wiener:2
    schramm-bv operator-h3 --kernel tri.json --eps 0.5
    schramm-bv reproduce
"""

import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Annotated, Any, Literal, NoReturn

import cyclopts
import numpy as np

from .config import get_log_level, get_seed
from .core import (
    GridFunction,
    SchrammError,
    all_intervals,
    random_grid_function,
)
from .equinorm import compactness_report
from .luxemburg import luxemburg_seminorm
from .operators import (
    compactness_probe,
    continuity_bound,
    h2_certificate,
    h3_modulus,
)
from .reproduce import run_reproduction
from .seqspace import lp_compactness_check
from .serialize import (
    dumps,
    load_function_set,
    load_grid_function,
    load_kernel,
    load_truncated_set,
    parse_young,
)
from .variation import brute_force_variation, five_suprema, schramm_variation

app = cyclopts.App(
    name="schramm-bv",
    help="Schramm variations, Luxemburg seminorms and operator certificates.",
)

OutputFormat = Literal["json", "table"]

EXIT_FAIL_VERDICT = 2
EXIT_ERROR = 1

# Anything here exits 1 with a diagnostic instead of a traceback
COMPUTE_ERRORS = (SchrammError, ValueError, OSError)

# ========== Shared Parameters ==========

InputOpt = Annotated[
    Path | None,
    cyclopts.Parameter(
        name=["--input", "-i"], help="Function JSON or CSV file"
    ),
]
KernelOpt = Annotated[
    Path,
    cyclopts.Parameter(name=["--kernel", "-k"], help="Kernel JSON file"),
]
YoungOpt = Annotated[
    str,
    cyclopts.Parameter(
        name=["--young", "-y"],
        help="jordan, wiener:P, young:P[:KNEE], waterman:L1,L2,... or JSON",
    ),
]
EpsOpt = Annotated[
    list[float] | None,
    cyclopts.Parameter(name=["--eps", "-e"], help="Tolerance (repeatable)"),
]
BudgetOpt = Annotated[
    int | None,
    cyclopts.Parameter(name="--budget", help="Node budget of exact searches"),
]
FormatOpt = Annotated[
    OutputFormat,
    cyclopts.Parameter(name=["--format", "-f"], help="json or table"),
]
SeedOpt = Annotated[
    int | None,
    cyclopts.Parameter(
        name="--seed", help="Seed for --random (SCHRAMM_BV_SEED)"
    ),
]
RandomOpt = Annotated[
    int | None,
    cyclopts.Parameter(
        name="--random", help="Use a random instance with this many cells"
    ),
]
VerboseOpt = Annotated[
    bool,
    cyclopts.Parameter(name=["--verbose", "-v"], help="Debug logging"),
]


# ========== Helpers ==========


def _configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else get_log_level()
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def _fail(error: Exception) -> NoReturn:
    print(f"✗ Error: {error}", file=sys.stderr)
    sys.exit(EXIT_ERROR)


def _format_value(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _render(data: dict, fmt: OutputFormat) -> None:
    """Print JSON, or one "key: value" line per scalar and one per row."""
    if fmt == "json":
        print(dumps(data))
        return
    for key, value in data.items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            print(f"{key}:")
            for row in value:
                cells = "  ".join(
                    f"{k}={_format_value(v)}" for k, v in row.items()
                )
                print(f"  {cells}")
        else:
            print(f"{key}: {_format_value(value)}")


def _function(
    input: Path | None, random: int | None, seed: int | None
) -> GridFunction:
    if input is not None:
        return load_grid_function(input)
    if random is None:
        raise SchrammError("give --input or --random")
    rng = np.random.default_rng(get_seed() if seed is None else seed)
    return random_grid_function(random, rng)


# ========== Variation Commands ==========


@app.command
def variation(
    input: InputOpt = None,
    young: YoungOpt = "jordan",
    mode: Annotated[
        Literal["exact", "heuristic"],
        cyclopts.Parameter(name=["--mode", "-m"], help="exact or heuristic"),
    ] = "exact",
    budget: BudgetOpt = None,
    random: RandomOpt = None,
    seed: SeedOpt = None,
    format: FormatOpt = "json",
    verbose: VerboseOpt = False,
) -> None:
    """Compute var_Φ x with its witness selection."""
    _configure_logging(verbose)
    try:
        x = _function(input, random, seed)
        seq = parse_young(young)
        result = schramm_variation(x, seq, mode, budget)
    except COMPUTE_ERRORS as e:
        _fail(e)
    _render({"young": seq.to_dict(), **result.to_dict()}, format)


@app.command
def norm(
    input: InputOpt = None,
    young: YoungOpt = "jordan",
    budget: BudgetOpt = None,
    random: RandomOpt = None,
    seed: SeedOpt = None,
    format: FormatOpt = "json",
    verbose: VerboseOpt = False,
) -> None:
    """Compute ‖x‖_Φ = |x(0)| + |x|_Φ."""
    _configure_logging(verbose)
    try:
        x = _function(input, random, seed)
        seq = parse_young(young)
        semi = luxemburg_seminorm(x, seq, all_intervals(x), budget=budget)
    except COMPUTE_ERRORS as e:
        _fail(e)
    _render(
        {
            "norm": abs(float(x.values[0])) + semi.value,
            "seminorm": semi.value,
            "bracket": list(semi.bracket),
            "evaluations": semi.evaluations,
        },
        format,
    )


@app.command
def oracle(
    input: InputOpt = None,
    young: YoungOpt = "jordan",
    random: RandomOpt = None,
    seed: SeedOpt = None,
    format: FormatOpt = "json",
    verbose: VerboseOpt = False,
) -> None:
    """Reference var_Φ x by full enumeration (small grids only)."""
    _configure_logging(verbose)
    try:
        x = _function(input, random, seed)
        value = brute_force_variation(x, parse_young(young))
    except COMPUTE_ERRORS as e:
        _fail(e)
    _render({"value": value}, format)


@app.command
def five(
    input: InputOpt = None,
    young: YoungOpt = "jordan",
    budget: BudgetOpt = None,
    format: FormatOpt = "json",
    verbose: VerboseOpt = False,
) -> None:
    """The five grid suprema α ≤ β = γ = δ ≤ α*."""
    _configure_logging(verbose)
    try:
        x = _function(input, None, None)
        result = five_suprema(x, parse_young(young), budget)
    except COMPUTE_ERRORS as e:
        _fail(e)
    _render(result.to_dict(), format)
    if not result.chain_holds():
        print("✗ Chain α ≤ β = γ = δ ≤ α* violated", file=sys.stderr)
        sys.exit(EXIT_FAIL_VERDICT)


@app.command
def equinorm(
    input: InputOpt = None,
    young: YoungOpt = "jordan",
    eps: EpsOpt = None,
    pairwise: Annotated[
        bool,
        cyclopts.Parameter(name="--pairwise", help="Use differences x − y"),
    ] = False,
    budget: BudgetOpt = None,
    format: FormatOpt = "json",
    verbose: VerboseOpt = False,
) -> None:
    """Greedy interval-family witnesses of an equinormed set."""
    _configure_logging(verbose)
    try:
        if input is None:
            raise SchrammError("give --input")
        members = load_function_set(input)
        report = compactness_report(
            members, parse_young(young), eps or [0.1], pairwise, budget
        )
    except COMPUTE_ERRORS as e:
        _fail(e)
    _render(report.to_dict(), format)
    if report.verdict != "certified-equinormed":
        sys.exit(EXIT_FAIL_VERDICT)


@app.command
def lp_check(
    input: InputOpt = None,
    eps: EpsOpt = None,
    format: FormatOpt = "json",
    verbose: VerboseOpt = False,
) -> None:
    """The l^p tail criterion: smallest n with uniformly small tails."""
    _configure_logging(verbose)
    try:
        if input is None:
            raise SchrammError("give --input")
        members = load_truncated_set(input)
        checks = [lp_compactness_check(members, e) for e in eps or [0.01]]
    except COMPUTE_ERRORS as e:
        _fail(e)
    _render({"rows": [c.to_dict() for c in checks]}, format)
    if not all(c.success for c in checks):
        sys.exit(EXIT_FAIL_VERDICT)


# ========== Operator Commands ==========


@app.command
def operator_h2(
    kernel: KernelOpt,
    young: YoungOpt = "jordan",
    budget: BudgetOpt = None,
    format: FormatOpt = "json",
    verbose: VerboseOpt = False,
) -> None:
    """Certify continuity BV → ΦBV through the (H2) μ-search."""
    _configure_logging(verbose)
    try:
        k = load_kernel(kernel)
        seq = parse_young(young)
        cert = h2_certificate(k, seq, budget)
        data = cert.to_dict()
        if cert.mu is not None:
            data["continuity"] = continuity_bound(k, seq, cert.mu).to_dict()
    except COMPUTE_ERRORS as e:
        _fail(e)
    _render(data, format)
    if not cert.certified:
        sys.exit(EXIT_FAIL_VERDICT)


@app.command
def operator_h3(
    kernel: KernelOpt,
    young: YoungOpt = "jordan",
    eps: EpsOpt = None,
    budget: BudgetOpt = None,
    format: FormatOpt = "json",
    verbose: VerboseOpt = False,
) -> None:
    """Per-ε grid modulus δ(ε) of the compactness condition (H3)."""
    _configure_logging(verbose)
    try:
        modulus = h3_modulus(
            load_kernel(kernel), parse_young(young), eps or [1.0], budget
        )
    except COMPUTE_ERRORS as e:
        _fail(e)
    _render(modulus.to_dict(), format)
    if not modulus.passed:
        sys.exit(EXIT_FAIL_VERDICT)


@app.command
def probe(
    kernel: KernelOpt,
    young: YoungOpt = "jordan",
    battery: Annotated[
        list[Literal["spikes", "shrinking_plateaus", "sawtooth"]] | None,
        cyclopts.Parameter(name=["--battery", "-b"], help="Battery name"),
    ] = None,
    v_max: Annotated[
        int, cyclopts.Parameter(name="--v-max", help="Last battery level")
    ] = 64,
    format: FormatOpt = "json",
    verbose: VerboseOpt = False,
) -> None:
    """Decay table of ‖Kx_v‖_Φ along test batteries (evidence only)."""
    _configure_logging(verbose)
    names = battery or ["spikes", "shrinking_plateaus", "sawtooth"]
    try:
        k = load_kernel(kernel)
        seq = parse_young(young)
        reports = [compactness_probe(k, seq, name, v_max) for name in names]
    except COMPUTE_ERRORS as e:
        _fail(e)
    _render({"batteries": [r.to_dict() for r in reports]}, format)
    if any(r.verdict != "decay-consistent" for r in reports):
        sys.exit(EXIT_FAIL_VERDICT)


# ========== Reproduction and Server ==========


@app.command
def reproduce(
    format: FormatOpt = "table",
    verbose: VerboseOpt = False,
) -> None:
    """Recompute the worked examples and print a PASS/FAIL table."""
    _configure_logging(verbose)
    try:
        rows = run_reproduction()
    except COMPUTE_ERRORS as e:
        _fail(e)
    if format == "json":
        print(dumps({"rows": [r.to_dict() for r in rows]}))
    else:
        width = max(len(r.label) for r in rows)
        for r in rows:
            status = "PASS" if r.passed else "FAIL"
            print(
                f"{r.label:<{width}}  {r.relation} {r.expected:<12.10g} "
                f"got {r.computed:<16.12g} {status}"
            )
        failed = sum(1 for r in rows if not r.passed)
        mark = "✓" if failed == 0 else "✗"
        print(f"\n{mark} {len(rows) - failed}/{len(rows)} checks passed")
    if any(not r.passed for r in rows):
        sys.exit(EXIT_FAIL_VERDICT)


@app.command
def serve(verbose: VerboseOpt = False) -> None:
    """Run the MCP tool server on stdio."""
    _configure_logging(verbose)
    from .server import mcp

    mcp.run()


def run(argv: Sequence[str] | None = None) -> int:
    """
    Run the CLI and return its exit code instead of exiting.

    Example:
        >>> run(["variation", "--input", "x.json"])
        0
    """
    try:
        app(list(argv) if argv is not None else None)
    except SystemExit as e:
        if e.code is None:
            return 0
        return e.code if isinstance(e.code, int) else EXIT_ERROR
    return 0


def main() -> None:
    """Entry point for the CLI."""
    sys.exit(run())
