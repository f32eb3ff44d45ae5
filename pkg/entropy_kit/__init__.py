"""Entropy functions and key-length formulas for the walk-based QRNG."""

from entropy_kit.entropy import (
    binary_entropy,
    d_ary_entropy,
    extended_d_ary_entropy,
    min_entropy_from_distribution,
    relative_hamming_weight,
    sampling_delta,
    security_distance_bound,
    standard_eur_bound,
)
from entropy_kit.key_rate import (
    KeyRateInput,
    KeyRateRow,
    closeness_epsilon,
    draw_observed_weight,
    sampling_key_length,
    smoothing_epsilon,
    standard_eur_key_length,
)

__all__ = [
    "KeyRateInput",
    "KeyRateRow",
    "binary_entropy",
    "closeness_epsilon",
    "d_ary_entropy",
    "draw_observed_weight",
    "extended_d_ary_entropy",
    "min_entropy_from_distribution",
    "relative_hamming_weight",
    "sampling_delta",
    "sampling_key_length",
    "security_distance_bound",
    "smoothing_epsilon",
    "standard_eur_key_length",
]
