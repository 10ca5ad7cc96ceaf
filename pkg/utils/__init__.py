"""
This module contains utility functions used throughout the application.
"""

from utils.exact_utils import (
    to_fraction,
    format_rational,
    dot,
    mat_vec,
    identity_matrix,
    row_echelon,
    rank_exact,
    invert_exact,
    solve_exact,
    determinant_exact,
    common_denominator,
    xgcd,
    integer_row_basis
)
from utils.series_utils import (
    sum_series,
    complex_stencil,
    mixed_stencil,
    central_difference,
    richardson_derivative
)
from utils.report_utils import (
    format_float,
    format_complex,
    reports_to_json,
    reports_to_text,
    write_report
)

__all__ = [
    'to_fraction',
    'format_rational',
    'dot',
    'mat_vec',
    'identity_matrix',
    'row_echelon',
    'rank_exact',
    'invert_exact',
    'solve_exact',
    'determinant_exact',
    'common_denominator',
    'xgcd',
    'integer_row_basis',
    'sum_series',
    'complex_stencil',
    'mixed_stencil',
    'central_difference',
    'richardson_derivative',
    'format_float',
    'format_complex',
    'reports_to_json',
    'reports_to_text',
    'write_report'
]
