"""Exact-rational toolkit for probabilistic automata.

Distribution evolution on finite words, the lift/twin reduction gadgets
with their exact reset-replay and pair-halving checkers, and a desk-scale
search/certificate pipeline. All probability mass is `fractions.Fraction`;
every check in the package is an exact identity.
"""

from .core import (
    CheckResult,
    Dist,
    HALF,
    InputError,
    ONE,
    Pa,
    PaError,
    ValidationError,
    ValidationReport,
    Word,
    ZERO,
    as_prob,
)
from .semantics import (
    MaxNorm,
    NormTrace,
    TraceEntry,
    acceptance_probability,
    lasso_trace,
    max_norm_from,
    norm_trace,
    outcome,
    step,
)
from .reduction import (
    LiftedPa,
    TwinPa,
    Value1Instance,
    build_witness_prefix,
    check_p1,
    check_p2,
    lift,
    twin,
)
from .analysis import (
    BudgetExceededError,
    Certificate,
    DEFAULT_BUDGET,
    ScheduleSearchResult,
    SearchResult,
    bounded_value_search,
    certificate_check,
    dollar_absorption_check,
    half_bound_check,
    matrix_oracle,
    witness_schedule_search,
)
from .paformat import (
    FormatError,
    load_pa,
    parse_pa,
    read_trace_csv,
    save_pa,
    serialize_pa,
    write_trace_csv,
)
from .fixtures import b_half, b_one

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "Certificate",
    "CheckResult",
    "DEFAULT_BUDGET",
    "Dist",
    "FormatError",
    "HALF",
    "InputError",
    "LiftedPa",
    "MaxNorm",
    "NormTrace",
    "ONE",
    "Pa",
    "PaError",
    "ScheduleSearchResult",
    "SearchResult",
    "TraceEntry",
    "TwinPa",
    "ValidationError",
    "ValidationReport",
    "Value1Instance",
    "Word",
    "ZERO",
    "acceptance_probability",
    "as_prob",
    "b_half",
    "b_one",
    "bounded_value_search",
    "build_witness_prefix",
    "certificate_check",
    "check_p1",
    "check_p2",
    "dollar_absorption_check",
    "half_bound_check",
    "lasso_trace",
    "lift",
    "load_pa",
    "matrix_oracle",
    "max_norm_from",
    "norm_trace",
    "outcome",
    "parse_pa",
    "read_trace_csv",
    "save_pa",
    "serialize_pa",
    "step",
    "twin",
    "witness_schedule_search",
    "write_trace_csv",
]
