"""
Discrete-time Hadamard walk on a P-cycle.

Basis layout is fixed for the whole lab: flat index = c * P + x, with coin
c in {0, 1} and position x in {0..P-1}. Coin 0 steps to x + 1, coin 1 to x - 1.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import numpy.typing as npt

from errors import RejectedInputError
from linalg_core import ComplexMatrix, identity, kron, matmul, outer

logger = logging.getLogger(__name__)

NORM_ATOL = 1e-10

HADAMARD: ComplexMatrix = np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2)
COIN_UP: ComplexMatrix = np.array([[1, 0], [0, 0]], dtype=np.complex128)
COIN_DOWN: ComplexMatrix = np.array([[0, 0], [0, 1]], dtype=np.complex128)


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class WalkState:
    """Amplitude vector of length 2P plus the (c0, x0, T) it was built from."""

    P: int
    amplitudes: npt.NDArray[np.complex128]
    c0: int = 0
    x0: int = 0
    T: int = 0

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=np.complex128).ravel()
        if amps.shape != (2 * self.P,):
            raise RejectedInputError(
                f"WalkState for P={self.P} needs {2 * self.P} amplitudes, got {amps.shape[0]}"
            )
        object.__setattr__(self, "amplitudes", _readonly(amps))

    @property
    def dim(self) -> int:
        return 2 * self.P

    @property
    def alpha(self) -> npt.NDArray[np.complex128]:
        """Coin-0 amplitudes, indexed by position."""
        return self.amplitudes[: self.P]

    @property
    def beta(self) -> npt.NDArray[np.complex128]:
        """Coin-1 amplitudes, indexed by position."""
        return self.amplitudes[self.P :]

    @property
    def norm_residual(self) -> float:
        return abs(float(np.vdot(self.amplitudes, self.amplitudes).real) - 1.0)

    @property
    def is_normalized(self) -> bool:
        return self.norm_residual <= NORM_ATOL

    def projector(self) -> ComplexMatrix:
        """|w><w|."""
        return outer(self.amplitudes)


def require_normalized(s: WalkState) -> None:
    if not s.is_normalized:
        raise RejectedInputError(f"WalkState is not normalized (| ||w||^2 - 1 | = {s.norm_residual:.3e})")


@dataclass(frozen=True, eq=False)
class PositionDistribution:
    P: int
    probs: npt.NDArray[np.float64]

    @property
    def gamma(self) -> float:
        return float(np.max(self.probs))

    @property
    def entropy_bits(self) -> float:
        """Shannon entropy of the position outcome, in bits."""
        p = self.probs[self.probs > 0]
        return float(-np.sum(p * np.log2(p)))

    @property
    def min_entropy_bits(self) -> float:
        """-log2 max_z p(z)."""
        return float(-np.log2(self.gamma))


def _check_dimension(P: int) -> None:
    if P < 2:
        raise RejectedInputError(f"Cycle needs P >= 2 positions, got {P}")


def shift_operator(P: int) -> ComplexMatrix:
    """S|0,x> = |0,x+1 mod P>, S|1,x> = |1,x-1 mod P>."""
    _check_dimension(P)
    step_up = np.roll(np.eye(P, dtype=np.complex128), 1, axis=0)
    step_down = np.roll(np.eye(P, dtype=np.complex128), -1, axis=0)
    return kron(COIN_UP, step_up) + kron(COIN_DOWN, step_down)


def walk_operator(P: int) -> ComplexMatrix:
    """W = S (H ⊗ I_P)."""
    return matmul(shift_operator(P), kron(HADAMARD, identity(P)))


@lru_cache(maxsize=128)
def _cached_walk_operator(P: int) -> ComplexMatrix:
    logger.debug(f"Building walk operator for P={P}")
    return _readonly(walk_operator(P))


def basis_state(c: int, x: int, P: int) -> npt.NDArray[np.complex128]:
    _check_dimension(P)
    if c not in (0, 1):
        raise RejectedInputError(f"Coin must be 0 or 1, got {c}")
    if not 0 <= x < P:
        raise RejectedInputError(f"Position must be in [0, {P - 1}], got {x}")
    v = np.zeros(2 * P, dtype=np.complex128)
    v[c * P + x] = 1.0
    return v


def evolve(c0: int, x0: int, P: int, T: int) -> WalkState:
    """W^T |c0, x0>, by T repeated matrix-vector products."""
    if T < 0:
        raise RejectedInputError(f"Walk time must be >= 0, got {T}")
    state = basis_state(c0, x0, P)
    if T:
        w = _cached_walk_operator(P)
        for _ in range(T):
            state = w @ state
    return WalkState(P=P, amplitudes=state, c0=c0, x0=x0, T=T)


def position_distribution(s: WalkState) -> PositionDistribution:
    """probs[z] = |alpha_z|^2 + |beta_z|^2."""
    require_normalized(s)
    probs = np.abs(s.alpha) ** 2 + np.abs(s.beta) ** 2
    return PositionDistribution(P=s.P, probs=_readonly(probs))


def gamma(s: WalkState) -> float:
    """Largest position probability of the state, in [1/P, 1]."""
    return position_distribution(s).gamma
