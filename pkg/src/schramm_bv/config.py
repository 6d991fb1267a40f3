"""Configuration for schramm-bv.

Every setting is an environment variable read through a getter; library
functions fall back to these getters when a keyword is left as None.
"""

import os

# Default node budget of the exact selection search
DEFAULT_NODE_BUDGET = 10_000_000


def get_node_budget() -> int:
    """
    Get the node budget of the exact variation search.

    Set SCHRAMM_BV_NODE_BUDGET to customize.
    Defaults to 10,000,000 nodes.

    Returns:
        Maximum number of search nodes before BudgetExceeded.
    """
    return int(os.environ.get("SCHRAMM_BV_NODE_BUDGET", DEFAULT_NODE_BUDGET))


def get_rel_tol() -> float:
    """
    Get the relative tolerance of the Luxemburg bisection.

    Set SCHRAMM_BV_REL_TOL to customize.
    Defaults to 1e-10.

    Returns:
        Relative bracket width at which bisection stops.
    """
    return float(os.environ.get("SCHRAMM_BV_REL_TOL", "1e-10"))


def get_inverse_cap() -> float:
    """
    Get the largest bracket cap of the Young inverse.

    Set SCHRAMM_BV_INVERSE_CAP to customize.
    Defaults to 1e12.

    Returns:
        Cap beyond which young_inverse raises OutOfRange.
    """
    return float(os.environ.get("SCHRAMM_BV_INVERSE_CAP", "1e12"))


def get_inverse_tol() -> float:
    """
    Get the relative tolerance of the Young inverse.

    Set SCHRAMM_BV_INVERSE_TOL to customize.
    Defaults to 1e-12.

    Returns:
        Relative bracket width at which the inverse bisection stops.
    """
    return float(os.environ.get("SCHRAMM_BV_INVERSE_TOL", "1e-12"))


# ========== Young Validation ==========


def get_validation_points() -> int:
    """
    Get the size of the Young validation mesh.

    Set SCHRAMM_BV_VALIDATION_POINTS to customize.
    Defaults to 257 points (table knots are always added).

    Returns:
        Number of evenly spaced mesh points.
    """
    return int(os.environ.get("SCHRAMM_BV_VALIDATION_POINTS", "257"))


def get_validation_tmax() -> float:
    """
    Get the right end of the Young validation mesh.

    Set SCHRAMM_BV_VALIDATION_TMAX to customize.
    Defaults to 4.0.

    Returns:
        Largest argument sampled by the validation checks.
    """
    return float(os.environ.get("SCHRAMM_BV_VALIDATION_TMAX", "4.0"))


# ========== Operator Certificates ==========


def get_mu_steps() -> int:
    """
    Get the number of bisection steps of the (H2) mu search.

    Set SCHRAMM_BV_MU_STEPS to customize.
    Defaults to 60.

    Returns:
        Bisection steps over log2(mu) in [-40, 40].
    """
    return int(os.environ.get("SCHRAMM_BV_MU_STEPS", "60"))


def get_probe_threshold() -> float:
    """
    Get the final-norm threshold of the compactness probe.

    Set SCHRAMM_BV_PROBE_THRESHOLD to customize.
    Defaults to 2e-2.

    Returns:
        Largest final ‖Kx_v‖_Φ accepted as decay-consistent.
    """
    return float(os.environ.get("SCHRAMM_BV_PROBE_THRESHOLD", "2e-2"))


# ========== Runs ==========


def get_seed() -> int:
    """
    Get the default random seed.

    Set SCHRAMM_BV_SEED to customize.
    Defaults to 0.

    Returns:
        Seed for numpy.random.default_rng.
    """
    return int(os.environ.get("SCHRAMM_BV_SEED", "0"))


def get_head_length() -> int:
    """
    Get the truncation length of the counterexample suite.

    Set SCHRAMM_BV_HEAD_LENGTH to customize.
    Defaults to 64.

    Returns:
        Head length N of the truncated sequences.
    """
    return int(os.environ.get("SCHRAMM_BV_HEAD_LENGTH", "64"))


def get_oracle_max_cells() -> int:
    """
    Get the largest grid the brute-force oracle accepts.

    Set SCHRAMM_BV_ORACLE_MAX_CELLS to customize.
    Defaults to 16 cells.

    Returns:
        Maximum number of grid cells m.
    """
    return int(os.environ.get("SCHRAMM_BV_ORACLE_MAX_CELLS", "16"))


def get_log_level() -> str:
    """
    Get the CLI log level.

    Set SCHRAMM_BV_LOG_LEVEL to customize (DEBUG, INFO, WARNING, ...).
    Defaults to WARNING; --verbose forces DEBUG.

    Returns:
        Log level name.
    """
    return os.environ.get("SCHRAMM_BV_LOG_LEVEL", "WARNING").upper()
