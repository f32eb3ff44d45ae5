"""Dense complex matrices: construction, adjoint, products and Kronecker products.

A ``ComplexMatrix`` is a 2-D complex128 numpy array. All functions here are
pure and never mutate their arguments.
"""

from typing import Any

import numpy as np
import numpy.typing as npt

from errors import RejectedInputError

ComplexMatrix = npt.NDArray[np.complex128]

HERMITIAN_ATOL = 1e-10


def as_matrix(data: Any) -> ComplexMatrix:
    """Coerce array-like data into a ComplexMatrix with rows, cols >= 1."""
    m = np.asarray(data, dtype=np.complex128)
    if m.ndim != 2:
        raise RejectedInputError(f"Expected a 2-D matrix, got {m.ndim}-D input")
    if m.shape[0] < 1 or m.shape[1] < 1:
        raise RejectedInputError(f"Matrix must have rows, cols >= 1, got shape {m.shape}")
    return m


def identity(n: int) -> ComplexMatrix:
    if n < 1:
        raise RejectedInputError(f"Identity dimension must be >= 1, got {n}")
    return np.eye(n, dtype=np.complex128)


def adjoint(a: ComplexMatrix) -> ComplexMatrix:
    """Conjugate transpose A*."""
    return as_matrix(a).conj().T


def matmul(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise RejectedInputError(
            f"Dimension mismatch: {a.shape[0]}x{a.shape[1]} times {b.shape[0]}x{b.shape[1]}"
        )
    return a @ b


def kron(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Kronecker product, A-index major and B-index minor."""
    return np.kron(as_matrix(a), as_matrix(b))


def outer(v: npt.ArrayLike) -> ComplexMatrix:
    """Rank-1 operator |v><v|."""
    vec = np.asarray(v, dtype=np.complex128).ravel()
    return np.outer(vec, vec.conj())


def is_square(m: ComplexMatrix) -> bool:
    return m.shape[0] == m.shape[1]


def hermitian_residual(m: ComplexMatrix) -> float:
    """Largest entrywise deviation |M - M*|."""
    m = as_matrix(m)
    if not is_square(m):
        return float("inf")
    return float(np.max(np.abs(m - m.conj().T)))


def is_hermitian(m: ComplexMatrix, atol: float = HERMITIAN_ATOL) -> bool:
    return hermitian_residual(m) <= atol


def unitarity_residual(u: ComplexMatrix) -> float:
    """Largest entrywise deviation of U*U from the identity."""
    u = as_matrix(u)
    return float(np.max(np.abs(adjoint(u) @ u - identity(u.shape[1]))))
