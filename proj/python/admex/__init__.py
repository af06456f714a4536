"""Exact admissible-exponent engine for biquadratic smooth Weyl sums.

The heavy lifting lives in the C++ extension module; this package re-exports
its surface. All exponent arithmetic is exact rational arithmetic; decimal
output always rounds up in the last displayed place.
"""

from admex._core import (  # noqa: F401
    AdmexDomainError,
    AdmexParseError,
    BudgetError,
    ExponentRecord,
    ExponentTable,
    HypothesisError,
    Provenance,
    Rational,
    __version__,
    baseline_table,
    check_recursion_hypothesis,
    compare_direct,
    curve_value,
    decay_constant,
    decay_constant_enclosure,
    derive_at,
    difference_substitution_check,
    dyadic_pass,
    empirical_exponent,
    fixed_point,
    kz_threshold,
    moment_count,
    optimize_kz,
    parse_decimal,
    phi0,
    psi,
    psi_direct,
    recursion_infimum,
    render_ceiling,
    render_floor,
    restricted_smooth_set,
    smooth_set,
    table_json,
)
