"""POVMs of the walk-based QRNG and their overlaps."""

from povm_lab.overlap import (
    OverlapReport,
    PositionEigenvalues,
    PositionNorms,
    analytic_eigenvalues,
    delta0,
    delta1,
    first_argmax,
    overlap_report,
    position_norms,
)
from povm_lab.povm import (
    Povm,
    PovmVerdict,
    PovmViolation,
    basis_overlap,
    build_w_povm,
    build_z_povm,
    computational_basis,
    hadamard_basis,
    pair_overlap,
    povm_validate,
    projective_povm,
    projector_shortcut_overlap,
    sqrt_effects,
)

__all__ = [
    "OverlapReport",
    "PositionEigenvalues",
    "PositionNorms",
    "Povm",
    "PovmVerdict",
    "PovmViolation",
    "analytic_eigenvalues",
    "basis_overlap",
    "build_w_povm",
    "build_z_povm",
    "computational_basis",
    "delta0",
    "delta1",
    "first_argmax",
    "hadamard_basis",
    "overlap_report",
    "pair_overlap",
    "position_norms",
    "povm_validate",
    "projective_povm",
    "projector_shortcut_overlap",
    "sqrt_effects",
]
