"""Exact run-structured integer sets, windowed density profiles, and
verified sumset constructions."""

from .errors import (
    BadLength,
    BanachsumError,
    BudgetExceeded,
    DisjointnessViolation,
    EmptySelection,
    HorizonExceeded,
    NegativeResult,
    NoSuitableRun,
    OverlapError,
    ParseError,
    PreconditionFailed,
)
from .intset import (
    AffineImage,
    Congruence,
    ExplicitWindow,
    Full,
    IntSet,
    PolyRuns,
    PowRuns,
    Run,
    RunList,
    Window,
    parse_set,
    serialize_set,
)
from .density import (
    DensityEstimate,
    RunBoundReport,
    WindowProfile,
    check_run_bound,
    check_subadditivity,
    density_estimate,
    f_naive,
    f_profile,
    fekete_qd_check,
    forced_density,
    longest_run,
)
from .sumset import (
    Status,
    Verdict,
    enumerate_subsets,
    family_sumset,
    pairwise_sumset,
    run_sum,
    verify_containment,
)
from .construct import (
    APReduction,
    BFamily,
    BSequence,
    EscapeReport,
    SweepReport,
    ap_reduce,
    build_b_sequence,
    build_family,
    escape_i0,
    verify_b_sequence,
    verify_escape,
    verify_family,
)

__version__ = "0.1.0"

__all__ = [
    "BanachsumError",
    "NegativeResult",
    "HorizonExceeded",
    "ParseError",
    "OverlapError",
    "BadLength",
    "PreconditionFailed",
    "EmptySelection",
    "BudgetExceeded",
    "NoSuitableRun",
    "DisjointnessViolation",
    "Run",
    "Window",
    "IntSet",
    "ExplicitWindow",
    "RunList",
    "PowRuns",
    "PolyRuns",
    "Congruence",
    "Full",
    "AffineImage",
    "parse_set",
    "serialize_set",
    "WindowProfile",
    "DensityEstimate",
    "RunBoundReport",
    "f_naive",
    "f_profile",
    "density_estimate",
    "check_subadditivity",
    "fekete_qd_check",
    "longest_run",
    "check_run_bound",
    "forced_density",
    "Status",
    "Verdict",
    "pairwise_sumset",
    "family_sumset",
    "run_sum",
    "enumerate_subsets",
    "verify_containment",
    "BSequence",
    "build_b_sequence",
    "SweepReport",
    "verify_b_sequence",
    "BFamily",
    "build_family",
    "verify_family",
    "APReduction",
    "ap_reduce",
    "escape_i0",
    "EscapeReport",
    "verify_escape",
    "__version__",
]
