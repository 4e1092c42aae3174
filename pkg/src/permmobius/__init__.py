"""Möbius function of the permutation containment order.

Three interchangeable engines compute mu(sigma, pi): an exhaustive oracle
over the enumerated interval, a weighted contributing-set recursion for
sum-indecomposable lower bounds, and an inequality-only fast path when the
upper bound is an increasing oscillation.  On top of the fast path sits the
principal series mu(1, W_n) with its conjecture checks.
"""

from .errors import (
    EmptyInterval,
    EmptyOperand,
    IndexOutOfRange,
    InvalidShape,
    MobiusError,
    NotAnOscillation,
    NotAPermutation,
    NotContained,
    OperandTooShort,
    Overflow,
    PreconditionViolation,
    RangeError,
    TooLarge,
)
from .perms import (
    EMPTY,
    OscillationId,
    Permutation,
    Shape,
    SumDecomposition,
    classify_oscillation,
    complement,
    contains,
    delete_point,
    direct_sum,
    family_interleave,
    family_sum,
    from_one_line,
    interleave,
    inverse,
    is_identity,
    is_increasing_oscillation,
    is_reverse_identity,
    is_simple,
    is_sum_indecomposable,
    iterated_interleave_21,
    iterated_sum,
    oscillating_sequence_prefix,
    oscillation,
    parse_permutation,
    realize_shape,
    reverse,
    skew_interleave,
    skew_sum,
    standardize,
    strictly_contains,
    sum_decompose,
)
from .poset import (
    DEFAULT_DOWNSET_CAP,
    IntervalTable,
    downset,
    interval,
    mobius_naive,
    mobius_naive_column,
)
from .engine import (
    MobiusCache,
    MobiusEngine,
    WeightedContribution,
    contributing_set,
    min_r_general,
    mobius,
    mobius_cor3,
    mobius_prop1,
    mobius_prop2,
    mobius_theorem,
    weight_general,
)
from .oscillation_fast import (
    EmbeddingBudget,
    PiClass,
    fits_in_pi,
    max_k,
    min_k,
    min_points,
    min_r_osc,
    mobius_oscillation,
    pi_class_of,
    principal_mu_series,
    raw_min_k,
    trace_oscillation,
    weight_osc,
)
from .analysis import (
    BandingReport,
    BandReport,
    SeriesRecord,
    Violation,
    banding_report,
    is_prime,
    jelinek_check,
    loglog_export,
    principal_series,
)

__version__ = "1.0.0"

__all__ = [
    "__version__",
    # errors
    "MobiusError",
    "NotAPermutation",
    "IndexOutOfRange",
    "EmptyOperand",
    "OperandTooShort",
    "InvalidShape",
    "TooLarge",
    "EmptyInterval",
    "PreconditionViolation",
    "NotAnOscillation",
    "NotContained",
    "RangeError",
    "Overflow",
    # permutation core
    "Permutation",
    "EMPTY",
    "from_one_line",
    "parse_permutation",
    "standardize",
    "contains",
    "delete_point",
    "direct_sum",
    "skew_sum",
    "interleave",
    "skew_interleave",
    "iterated_sum",
    "iterated_interleave_21",
    "Shape",
    "realize_shape",
    "OscillationId",
    "oscillation",
    "oscillating_sequence_prefix",
    "classify_oscillation",
    "is_increasing_oscillation",
    "SumDecomposition",
    "sum_decompose",
    "is_sum_indecomposable",
    "family_sum",
    "family_interleave",
    "inverse",
    "reverse",
    "complement",
    "is_simple",
    "is_identity",
    "is_reverse_identity",
    "strictly_contains",
    # poset
    "DEFAULT_DOWNSET_CAP",
    "downset",
    "IntervalTable",
    "interval",
    "mobius_naive",
    "mobius_naive_column",
    # engine
    "MobiusCache",
    "MobiusEngine",
    "WeightedContribution",
    "mobius",
    "mobius_theorem",
    "mobius_prop1",
    "mobius_prop2",
    "mobius_cor3",
    "min_r_general",
    "weight_general",
    "contributing_set",
    # oscillation fast path
    "PiClass",
    "EmbeddingBudget",
    "pi_class_of",
    "min_points",
    "fits_in_pi",
    "raw_min_k",
    "min_k",
    "max_k",
    "min_r_osc",
    "weight_osc",
    "mobius_oscillation",
    "trace_oscillation",
    "principal_mu_series",
    # analysis
    "SeriesRecord",
    "principal_series",
    "Violation",
    "jelinek_check",
    "BandReport",
    "BandingReport",
    "banding_report",
    "loglog_export",
    "is_prime",
]
