"""Closed-form entropy functions, sampling error and security-distance bounds.

All logarithms of key material are base 2. The 0 * log 0 = 0 convention is
applied through scipy.special.xlogy.
"""

import math
from typing import Any, Sequence, Union

import numpy as np
import numpy.typing as npt
from scipy.special import xlogy

from errors import RejectedInputError


def _check_alphabet(d: int) -> None:
    if d < 2:
        raise RejectedInputError(f"Alphabet size must be >= 2, got {d}")


def d_ary_entropy(x: float, d: int = 2) -> float:
    """h_d(x) = x log_d(d-1) - x log_d(x) - (1-x) log_d(1-x)."""
    _check_alphabet(d)
    if not 0.0 <= x <= 1.0:
        raise RejectedInputError(f"h_d needs x in [0, 1], got {x}")
    nats = xlogy(x, d - 1) - xlogy(x, x) - xlogy(1.0 - x, 1.0 - x)
    return float(nats / math.log(d))


def binary_entropy(x: float) -> float:
    return d_ary_entropy(x, 2)


def extended_d_ary_entropy(x: float, d: int = 2) -> float:
    """0 below 0, h_d on [0, 1 - 1/d], 1 above 1 - 1/d."""
    _check_alphabet(d)
    if x < 0.0:
        return 0.0
    if x > 1.0 - 1.0 / d:
        return 1.0
    return d_ary_entropy(x, d)


def relative_hamming_weight(q: Union[str, Sequence[Any]], a: Any = 0) -> float:
    """Fraction of symbols of q that differ from the reference symbol a."""
    if len(q) == 0:
        raise RejectedInputError("Relative Hamming weight of an empty string is undefined")
    ref = str(a) if isinstance(q, str) else a
    mismatches = sum(1 for symbol in q if symbol != ref)
    return mismatches / len(q)


def sampling_delta(N: int, m: int, eps: float) -> float:
    """delta = sqrt((N + 2) ln(2 / eps^2) / (m N))."""
    if not 0 < m < N:
        raise RejectedInputError(f"Sampling needs 0 < m < N, got m={m}, N={N}")
    if not 0.0 < eps < 1.0:
        raise RejectedInputError(f"eps must be in (0, 1), got {eps}")
    return math.sqrt((N + 2) * math.log(2.0 / eps**2) / (m * N))


def standard_eur_bound(eps_entropy_x: float, c: float) -> float:
    """Lower bound on the smooth min-entropy: -log2 c - H_max."""
    if c <= 0.0:
        raise RejectedInputError(f"Overlap must be > 0, got {c}")
    if c > 1.0:
        raise RejectedInputError(f"Overlap must be <= 1, got {c}")
    return -math.log2(c) - eps_entropy_x


def security_distance_bound(h_min: float, ell: float, eps: float) -> float:
    """Trace-distance bound after privacy amplification: 2^(-(h_min - ell)/2) + 2 eps."""
    if eps < 0.0:
        raise RejectedInputError(f"eps must be >= 0, got {eps}")
    return 2.0 ** (-(h_min - ell) / 2.0) + 2.0 * eps


def min_entropy_from_distribution(probs: npt.ArrayLike) -> float:
    """H_inf(S) = -log2 max_s p_s for a classical distribution."""
    p = np.asarray(probs, dtype=np.float64)
    if p.size == 0 or np.any(p < 0):
        raise RejectedInputError("Distribution must be non-empty and non-negative")
    return float(-np.log2(p.max()))
