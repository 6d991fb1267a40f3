"""Linear integral operators from BV into ΦBV on sampled kernels.

This package provides:
- Kernel and the trapezoid integral operator
- (H2) and (H3) certificates with the continuity bound
- The compactness probe over spike, plateau and sawtooth batteries
- Diagonal (Helly) extraction of pointwise convergent subsequences
"""

from .certificates import (
    ContinuityBound,
    H2Certificate,
    H3ImpliesH2,
    H3Modulus,
    H3Row,
    H3Unavailable,
    continuity_bound,
    h2_certificate,
    h3_implies_h2,
    h3_modulus,
)
from .helly import HellyResult, NotBounded, helly_extract
from .kernel import (
    GridMismatch,
    Kernel,
    XiNotOnGrid,
    apply_operator,
    constant_kernel,
    interval_field,
    lower_triangular_kernel,
    make_kernel,
    primitive_field,
    rank_one_kernel,
)
from .probe import (
    ProbeReport,
    battery_members,
    bv_norm,
    compactness_probe,
    plateau,
    sawtooth,
    spike,
)

__all__ = [
    "ContinuityBound",
    "GridMismatch",
    "H2Certificate",
    "H3ImpliesH2",
    "H3Modulus",
    "H3Row",
    "H3Unavailable",
    "HellyResult",
    "Kernel",
    "NotBounded",
    "ProbeReport",
    "XiNotOnGrid",
    "apply_operator",
    "battery_members",
    "bv_norm",
    "compactness_probe",
    "constant_kernel",
    "continuity_bound",
    "h2_certificate",
    "h3_implies_h2",
    "h3_modulus",
    "helly_extract",
    "interval_field",
    "lower_triangular_kernel",
    "make_kernel",
    "plateau",
    "primitive_field",
    "rank_one_kernel",
    "sawtooth",
    "spike",
]
