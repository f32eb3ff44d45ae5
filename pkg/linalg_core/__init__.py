"""Dense complex linear algebra for the lab."""

from linalg_core.eigen import EigenResult, hermitian_eig, jacobi_eigh, psd_sqrt
from linalg_core.matrix import (
    ComplexMatrix,
    adjoint,
    as_matrix,
    hermitian_residual,
    identity,
    is_hermitian,
    kron,
    matmul,
    outer,
    unitarity_residual,
)
from linalg_core.norms import operator_norm

__all__ = [
    "ComplexMatrix",
    "EigenResult",
    "adjoint",
    "as_matrix",
    "hermitian_eig",
    "hermitian_residual",
    "identity",
    "is_hermitian",
    "jacobi_eigh",
    "kron",
    "matmul",
    "operator_norm",
    "outer",
    "psd_sqrt",
    "unitarity_residual",
]
