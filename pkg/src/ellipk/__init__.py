"""Jacobi elliptic functions sn, cn, dn for complex argument and complex parameter.

Values come from exactly generated Maclaurin coefficient polynomials and carry
a rigorous truncation radius. A real-parameter AGM routine serves as an
independent oracle, and the bound/monotonicity modules check inequalities
between the two.
"""

__version__ = "0.1.0"

from .agm import jacobi_real_agm, jacobi_real_agm_array
from .bounds import (
    BoundReport,
    ChainRecord,
    EqualityCase,
    check_theorem,
    check_theorem_many,
    coarse_bounds,
    imag_transform_cn,
    imag_transform_dn,
    imag_transform_sn,
    sharp_bounds,
)
from .coeffs import (
    CoefficientTable,
    IntegerPolynomial,
    cached_table,
    differentiate_polynomial,
    eval_polynomial,
    generate_table,
)
from .errors import ConsistencyError, DomainError, EllipkError, PoleError, TableExhausted
from .monotonicity import MonotonicityReport, f_derivatives, f_values, verify_monotone
from .series import (
    EvalResult,
    cn_dm_series,
    cn_series,
    dn_dm_series,
    dn_series,
    series_many,
    sn_dm_series,
    sn_series,
)

__all__ = [
    "BoundReport", "ChainRecord", "CoefficientTable", "ConsistencyError", "DomainError",
    "EllipkError", "EqualityCase", "EvalResult", "IntegerPolynomial", "MonotonicityReport",
    "PoleError", "TableExhausted", "cached_table", "check_theorem", "check_theorem_many",
    "cn_dm_series", "cn_series", "coarse_bounds", "differentiate_polynomial", "dn_dm_series",
    "dn_series", "eval_polynomial", "f_derivatives", "f_values", "generate_table",
    "imag_transform_cn", "imag_transform_dn", "imag_transform_sn", "jacobi_real_agm",
    "jacobi_real_agm_array", "series_many", "sharp_bounds", "sn_dm_series", "sn_series",
    "verify_monotone",
]
