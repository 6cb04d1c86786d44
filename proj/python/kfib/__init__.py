"""k-generalized Fibonacci toolkit.

Exact recurrence iteration, Fuss-Catalan root series, Binet-style
evaluation, companion-matrix powers, and multinomial sums, all backed by
the C++ core. Exact integers come back as Python ints, exact rationals as
fractions.Fraction, and high-precision reals as decimal strings.
"""

from ._core import (
    ConvergenceBudgetExceeded,
    NonUnitTrailingCoefficient,
    PrecisionExhausted,
    asymptotic_estimate,
    b_n,
    basis_binet_value,
    basis_sequence,
    binet_value,
    column_identity_ok,
    combine_initials,
    companion_entry,
    companion_power,
    compositions,
    dresden_du,
    fuss_catalan,
    initial_combination,
    iterate_backward,
    iterate_forward,
    iterate_via_matrix,
    kfib_multinomial,
    multinomial_sum,
    n_threshold,
    named_spec,
    narayana_sum,
    principal_root,
    root_table,
    secondary_root,
    sj_coefficients,
    sj_equivalence,
    wolfram_epsilon,
)

__all__ = [
    "ConvergenceBudgetExceeded",
    "NonUnitTrailingCoefficient",
    "PrecisionExhausted",
    "asymptotic_estimate",
    "b_n",
    "basis_binet_value",
    "basis_sequence",
    "binet_value",
    "column_identity_ok",
    "combine_initials",
    "companion_entry",
    "companion_power",
    "compositions",
    "dresden_du",
    "fuss_catalan",
    "initial_combination",
    "iterate_backward",
    "iterate_forward",
    "iterate_via_matrix",
    "kfib_multinomial",
    "multinomial_sum",
    "n_threshold",
    "named_spec",
    "narayana_sum",
    "principal_root",
    "root_table",
    "secondary_root",
    "sj_coefficients",
    "sj_equivalence",
    "wolfram_epsilon",
]
