"""POVM construction, validation and pairwise overlap."""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Literal, Optional, Sequence

import numpy as np

from errors import RejectedInputError
from linalg_core import (
    ComplexMatrix,
    as_matrix,
    hermitian_eig,
    hermitian_residual,
    identity,
    kron,
    operator_norm,
    outer,
    psd_sqrt,
    unitarity_residual,
)
from walk_engine import HADAMARD, WalkState, require_normalized

logger = logging.getLogger(__name__)

HERMITIAN_ATOL = 1e-10
PSD_ATOL = 1e-9
COMPLETENESS_ATOL = 1e-9

ViolationKind = Literal["non-hermitian", "non-psd", "incomplete"]


@dataclass(frozen=True, eq=False)
class Povm:
    """Ordered effects on a ``dim``-dimensional space.

    Construction checks shapes only; call :func:`povm_validate` for the
    Hermitian / PSD / completeness invariants.
    """

    dim: int
    effects: tuple[ComplexMatrix, ...]
    label: str = ""

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise RejectedInputError(f"POVM dimension must be >= 1, got {self.dim}")
        if not self.effects:
            raise RejectedInputError("POVM needs at least one effect")
        effects = []
        for i, e in enumerate(self.effects):
            m = as_matrix(e)
            if m.shape != (self.dim, self.dim):
                raise RejectedInputError(
                    f"Effect {i} has shape {m.shape}, expected ({self.dim}, {self.dim})"
                )
            m = m.copy()
            m.setflags(write=False)
            effects.append(m)
        object.__setattr__(self, "effects", tuple(effects))

    def __len__(self) -> int:
        return len(self.effects)

    def __iter__(self) -> Iterator[ComplexMatrix]:
        return iter(self.effects)

    def __getitem__(self, i: int) -> ComplexMatrix:
        return self.effects[i]


@dataclass(frozen=True)
class PovmViolation:
    kind: ViolationKind
    effect_index: Optional[int]
    magnitude: float

    def describe(self) -> str:
        where = f"effect {self.effect_index}" if self.effect_index is not None else "sum of effects"
        return f"{self.kind} at {where} (magnitude {self.magnitude:.3e})"


@dataclass(frozen=True)
class PovmVerdict:
    violations: tuple[PovmViolation, ...] = field(default_factory=tuple)

    @property
    def valid(self) -> bool:
        return not self.violations

    @property
    def worst_magnitude(self) -> float:
        return max((v.magnitude for v in self.violations), default=0.0)


def povm_validate(
    p: Povm,
    hermitian_atol: float = HERMITIAN_ATOL,
    psd_atol: float = PSD_ATOL,
    completeness_atol: float = COMPLETENESS_ATOL,
) -> PovmVerdict:
    """Collect every violated POVM invariant instead of stopping at the first."""
    violations: list[PovmViolation] = []
    for i, e in enumerate(p.effects):
        herm = hermitian_residual(e)
        if herm > hermitian_atol:
            violations.append(PovmViolation("non-hermitian", i, herm))
            continue
        min_eig = float(hermitian_eig(e).eigenvalues[-1])
        if min_eig < -psd_atol:
            violations.append(PovmViolation("non-psd", i, -min_eig))

    total = np.sum(np.stack(p.effects), axis=0)
    gap = float(np.max(np.abs(total - identity(p.dim))))
    if gap > completeness_atol:
        violations.append(PovmViolation("incomplete", None, gap))

    verdict = PovmVerdict(tuple(violations))
    if not verdict.valid:
        logger.debug(f"POVM {p.label or '<unnamed>'} invalid: {[v.describe() for v in violations]}")
    return verdict


def build_w_povm(s: WalkState) -> Povm:
    """{|w><w|, I - |w><w|} for the given walk state."""
    require_normalized(s)
    w0 = s.projector()
    return Povm(dim=s.dim, effects=(w0, identity(s.dim) - w0), label=f"W(P={s.P},T={s.T})")


def build_z_povm(P: int) -> Povm:
    """{I_C ⊗ |j><j|} for j = 0..P-1, in the c * P + x layout."""
    if P < 2:
        raise RejectedInputError(f"Position POVM needs P >= 2, got {P}")
    effects = []
    for j in range(P):
        ket = np.zeros(P, dtype=np.complex128)
        ket[j] = 1.0
        effects.append(kron(identity(2), outer(ket)))
    return Povm(dim=2 * P, effects=tuple(effects), label=f"Z(P={P})")


def projective_povm(basis: ComplexMatrix, label: str = "") -> Povm:
    """Rank-1 projectors onto the columns of a unitary."""
    u = as_matrix(basis)
    residual = unitarity_residual(u)
    if residual > 1e-9:
        raise RejectedInputError(f"Basis columns are not orthonormal (residual {residual:.3e})")
    return Povm(dim=u.shape[0], effects=tuple(outer(u[:, k]) for k in range(u.shape[1])), label=label)


def computational_basis(d: int) -> ComplexMatrix:
    return identity(d)


def hadamard_basis() -> ComplexMatrix:
    return HADAMARD.copy()


def sqrt_effects(p: Povm) -> tuple[ComplexMatrix, ...]:
    return tuple(psd_sqrt(e) for e in p.effects)


@lru_cache(maxsize=32)
def z_povm_roots(P: int) -> tuple[ComplexMatrix, ...]:
    """Square roots of the position POVM effects, cached per P."""
    return sqrt_effects(build_z_povm(P))


def overlap_from_roots(
    roots_a: Sequence[ComplexMatrix], roots_b: Sequence[ComplexMatrix]
) -> float:
    return max(operator_norm(sa @ sb) ** 2 for sa in roots_a for sb in roots_b)


def pair_overlap(a: Povm, b: Povm) -> float:
    """c(A, B) = max_{a,b} ||sqrt(A_a) sqrt(B_b)||_op^2."""
    if a.dim != b.dim:
        raise RejectedInputError(f"POVM dimension mismatch: {a.dim} vs {b.dim}")
    return overlap_from_roots(sqrt_effects(a), sqrt_effects(b))


def projector_shortcut_overlap(a: Povm, b: Povm) -> float:
    """max ||A_a B_b||_op^2, valid only when every effect is a projector."""
    if a.dim != b.dim:
        raise RejectedInputError(f"POVM dimension mismatch: {a.dim} vs {b.dim}")
    for e in (*a.effects, *b.effects):
        if float(np.max(np.abs(e @ e - e))) > 1e-9:
            raise RejectedInputError("Projector shortcut needs idempotent effects")
    return max(operator_norm(ea @ eb) ** 2 for ea in a.effects for eb in b.effects)


def basis_overlap(u: ComplexMatrix, v: ComplexMatrix) -> float:
    """max_{x,z} |<x|z>|^2 for two orthonormal bases given as columns."""
    gram = np.abs(as_matrix(u).conj().T @ as_matrix(v)) ** 2
    return float(gram.max())
