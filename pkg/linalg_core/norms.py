"""Operator norm as the largest singular value."""

import numpy as np

from linalg_core.matrix import ComplexMatrix, adjoint, as_matrix


def operator_norm(a: ComplexMatrix) -> float:
    """sqrt(lambda_max(A*A)).

    Non-square input goes through A*A (cols x cols), never AA*. The matrix is
    rescaled by its largest entry first so tiny non-zero inputs never underflow
    to a zero norm.
    """
    a = as_matrix(a)
    scale = float(np.max(np.abs(a)))
    if scale == 0.0:
        return 0.0
    # per-part division: complex division by a subnormal scale overflows
    scaled = a.real / scale + 1j * (a.imag / scale)
    gram = adjoint(scaled) @ scaled
    gram = (gram + adjoint(gram)) / 2
    top = float(np.linalg.eigvalsh(gram)[-1])
    return scale * float(np.sqrt(max(top, 0.0)))
