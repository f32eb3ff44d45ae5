"""
Overlap of the walk POVM W against the position POVM Z.

For every position b:
  A_b = sqrt(W_0) sqrt(Z_b), with ||A_b||^2 = lambda_0(b) = |alpha_b|^2 + |beta_b|^2
  B_b = sqrt(W_1) sqrt(Z_b), with spectrum of B_b* B_b = {1, 1 - lambda_0(b)}
so delta_1 is always 1 and the overlap c(W, Z) = max(delta_0, delta_1) = 1.
"""

import logging

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict

from errors import ConsistencyError
from linalg_core import operator_norm
from povm_lab.povm import build_w_povm, sqrt_effects, z_povm_roots
from walk_engine import WalkState, evolve, require_normalized

logger = logging.getLogger(__name__)

CONSISTENCY_TOL = 1e-6
TIE_ATOL = 1e-12


class PositionNorms(BaseModel):
    model_config = ConfigDict(frozen=True)

    b: int
    w0_norm_sq: float
    w1_norm_sq: float


class PositionEigenvalues(BaseModel):
    model_config = ConfigDict(frozen=True)

    b: int
    lambda0: float
    lambda1: tuple[float, float]


class OverlapReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    P: int
    T: int
    c0: int = 0
    x0: int = 0
    delta0: float
    delta1: float
    overlap_c: float
    argmax_delta0: int
    argmax_delta1: int
    per_b_numeric: list[PositionNorms]
    per_b_analytic: list[PositionEigenvalues]
    max_abs_disagreement: float


def first_argmax(values: npt.ArrayLike, atol: float = TIE_ATOL) -> int:
    """Lowest index whose value is within ``atol`` of the maximum."""
    v = np.asarray(values, dtype=np.float64)
    return int(np.flatnonzero(v >= v.max() - atol)[0])


def position_norms(s: WalkState) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    """Per-position ||sqrt(W_a) sqrt(Z_b)||_op^2 for a = 0 and a = 1."""
    root_w0, root_w1 = sqrt_effects(build_w_povm(s))
    z_roots = z_povm_roots(s.P)
    w0 = np.array([operator_norm(root_w0 @ rz) ** 2 for rz in z_roots])
    w1 = np.array([operator_norm(root_w1 @ rz) ** 2 for rz in z_roots])
    return w0, w1


def delta0(s: WalkState) -> float:
    """max_b ||sqrt(W_0) sqrt(Z_b)||_op^2."""
    return float(position_norms(s)[0].max())


def delta1(s: WalkState) -> float:
    """max_b ||sqrt(W_1) sqrt(Z_b)||_op^2."""
    return float(position_norms(s)[1].max())


def analytic_eigenvalues(s: WalkState) -> list[PositionEigenvalues]:
    """Closed-form spectra: lambda_0(b) for A_b*A_b and {1, 1 - lambda_0(b)} for B_b*B_b."""
    require_normalized(s)
    lam0 = np.abs(s.alpha) ** 2 + np.abs(s.beta) ** 2
    return [
        PositionEigenvalues(b=b, lambda0=float(l0), lambda1=(1.0, float(1.0 - l0)))
        for b, l0 in enumerate(lam0)
    ]


def overlap_report(P: int, T: int, c0: int = 0, x0: int = 0) -> OverlapReport:
    """Evolve |c0, x0>, compare numeric overlaps with the analytic spectrum."""
    s = evolve(c0, x0, P, T)
    w0, w1 = position_norms(s)
    analytic = analytic_eigenvalues(s)

    lam0 = np.array([a.lambda0 for a in analytic])
    lam1_max = np.array([max(a.lambda1) for a in analytic])
    disagreement = float(max(np.max(np.abs(w0 - lam0)), np.max(np.abs(w1 - lam1_max))))

    if disagreement > CONSISTENCY_TOL:
        raise ConsistencyError(
            f"Numeric overlaps disagree with analytic eigenvalues at P={P}, T={T} "
            f"(max |diff| = {disagreement:.3e})"
        )
    if disagreement > 1e-9:
        logger.warning(f"Overlap disagreement {disagreement:.3e} at P={P}, T={T} exceeds 1e-9")

    d0, d1 = float(w0.max()), float(w1.max())
    return OverlapReport(
        P=P,
        T=T,
        c0=c0,
        x0=x0,
        delta0=d0,
        delta1=d1,
        overlap_c=max(d0, d1),
        argmax_delta0=first_argmax(w0),
        argmax_delta1=first_argmax(w1),
        per_b_numeric=[
            PositionNorms(b=b, w0_norm_sq=float(a), w1_norm_sq=float(c)) for b, (a, c) in enumerate(zip(w0, w1))
        ],
        per_b_analytic=analytic,
        max_abs_disagreement=disagreement,
    )
