"""Exact L-polynomial coefficients of function fields over finite fields."""

from ._core import (
    ConsistencyError,
    InvalidArgument,
    a_n_theta,
    class_number,
    class_number_formula,
    coefficients,
    composition_count,
    compositions,
    count_signs,
    decode,
    defect2_analyze,
    encode,
    expand_traces,
    is_prime_power,
    lpoly,
    pper,
)

__all__ = [
    "ConsistencyError",
    "InvalidArgument",
    "a_n_theta",
    "class_number",
    "class_number_formula",
    "coefficients",
    "composition_count",
    "compositions",
    "count_signs",
    "decode",
    "defect2_analyze",
    "encode",
    "expand_traces",
    "is_prime_power",
    "lpoly",
    "pper",
]
