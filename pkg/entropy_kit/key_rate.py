"""
Random-bit lengths from the standard and the sampling-based uncertainty relations.

Standard relation:   ell = n (-log2 c - 2 h2(Q))
Sampling relation:   ell_new = -eta_q log2(gamma)
                               - n * Hbar_{2P}(w_q + delta) / log_{2P}(2)
                               - 2 log2(1/eps)
with eta_q = (N - m)(1 - w_q - delta), clamped at 0.

The ell_new guarantee holds except with probability eps^(1/3), and the output
is (5 eps + 4 eps^(1/3))-close to ideal.
"""

import logging
import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from entropy_kit.entropy import binary_entropy, extended_d_ary_entropy, sampling_delta
from errors import RejectedInputError

logger = logging.getLogger(__name__)

GAMMA_ATOL = 1e-12


class KeyRateInput(BaseModel):
    """Protocol parameters for one key-rate evaluation."""

    model_config = ConfigDict(frozen=True)

    N: int = Field(gt=0, description="Total number of signals")
    m: int = Field(gt=0, description="Sample size measured in the W basis")
    w_q: float = Field(ge=0.0, le=1.0, description="Observed relative Hamming weight")
    eps: float = Field(gt=0.0, lt=1.0)
    P: int = Field(ge=2, description="Walker position dimension")
    gamma: float = Field(gt=0.0)
    overlap: float = Field(default=1.0, gt=0.0, le=1.0, description="c(W, Z) for the standard relation")

    @model_validator(mode="after")
    def _check_ranges(self) -> "KeyRateInput":
        if self.m >= self.N:
            raise ValueError(f"m must be < N, got m={self.m}, N={self.N}")
        if not (1.0 / self.P - GAMMA_ATOL <= self.gamma <= 1.0 + GAMMA_ATOL):
            raise ValueError(f"gamma must be in [1/P, 1] = [{1.0 / self.P:.6g}, 1], got {self.gamma}")
        return self

    @computed_field
    @property
    def n(self) -> int:
        return self.N - self.m


class KeyRateRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    input: KeyRateInput
    delta: float
    eta_q: float
    ell_new: float
    ell_standard: float
    rate_new: float
    eps_closeness: float
    eps_smooth: float
    failure_probability: float


def smoothing_epsilon(eps: float) -> float:
    """eps~ = 2 eps + 2 eps^(1/3)."""
    return 2.0 * eps + 2.0 * eps ** (1.0 / 3.0)


def closeness_epsilon(eps: float) -> float:
    """Distance of the final string from ideal: 5 eps + 4 eps^(1/3)."""
    return 5.0 * eps + 4.0 * eps ** (1.0 / 3.0)


def standard_eur_key_length(n: int, c: float, Q: float) -> float:
    """n (-log2 c - 2 h2(Q)); never positive when c = 1."""
    if n < 1:
        raise RejectedInputError(f"n must be >= 1, got {n}")
    if c <= 0.0 or c > 1.0:
        raise RejectedInputError(f"Overlap must be in (0, 1], got {c}")
    if not 0.0 <= Q <= 0.5:
        raise RejectedInputError(f"Q must be in [0, 0.5], got {Q}")
    theta = -math.log2(c) + 0.0
    return n * (theta - 2.0 * binary_entropy(Q))


def sampling_key_length(inp: KeyRateInput) -> KeyRateRow:
    """Evaluate ell_new and the epsilon accounting for one parameter point."""
    delta = sampling_delta(inp.N, inp.m, inp.eps)
    n = inp.n
    eta_q = max(n * (1.0 - inp.w_q - delta), 0.0)
    if eta_q == 0.0:
        logger.debug(f"eta_q clamped to 0 at N={inp.N}, w_q={inp.w_q:.6g}, delta={delta:.6g}")

    d = 2 * inp.P
    # Hbar_d(x) / log_d(2) == Hbar_d(x) * log2(d)
    entropy_bits = n * extended_d_ary_entropy(inp.w_q + delta, d) / math.log(2, d)
    ell_new = -eta_q * math.log2(inp.gamma) - entropy_bits - 2.0 * math.log2(1.0 / inp.eps)

    ell_standard = standard_eur_key_length(n, inp.overlap, min(inp.w_q, 0.5))

    return KeyRateRow(
        input=inp,
        delta=delta,
        eta_q=eta_q,
        ell_new=ell_new,
        ell_standard=ell_standard,
        rate_new=ell_new / inp.N,
        eps_closeness=closeness_epsilon(inp.eps),
        eps_smooth=smoothing_epsilon(inp.eps),
        failure_probability=inp.eps ** (1.0 / 3.0),
    )


def draw_observed_weight(Q: float, m: int, rng: Optional[np.random.Generator] = None) -> float:
    """Monte Carlo w(q): Binomial(m, Q) mismatches out of m sampled signals."""
    if not 0.0 <= Q <= 1.0:
        raise RejectedInputError(f"Q must be in [0, 1], got {Q}")
    if m < 1:
        raise RejectedInputError(f"Sample size must be >= 1, got {m}")
    rng = rng if rng is not None else np.random.default_rng()
    return int(rng.binomial(m, Q)) / m
