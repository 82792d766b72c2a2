"""Exact multi-index partitions, Faa di Bruno expansions, Bell polynomials,
k-statistics and polykays."""

from .bellpoly import (
    bell_number,
    complete_e_bell,
    complete_o_bell,
    cum2mom,
    e_bell_eval,
    elementary_to_powersum,
    general_partition_poly,
    mom2cum,
    partial_e_bell,
    partial_o_bell,
    partition_poly,
    stirling2,
)
from .estimators import (
    KStatistic,
    Polykay,
    SampleTooSmallError,
    k_statistic,
    multivariate_k_statistic,
    multivariate_polykay,
    polyk,
    polykay,
    power_sums,
)
from .faadibruno import FdBSpec, OrderTooLargeError, e_gc_bell, e_mfb, gc_bell, mfb, to_ordinary
from .partitions import (
    MultiIndex,
    Partition,
    compositions,
    integer_partitions,
    multi_index_partitions,
    partition_count_coefficient,
)
from .symbolic import (
    Assignments,
    Indeterminate,
    ParseError,
    Polynomial,
    UnboundIndeterminateError,
    format_expression,
    parse_assignments,
    parse_expression,
    poly_add,
    poly_eval,
    poly_mul,
)

__version__ = "0.1.0"
