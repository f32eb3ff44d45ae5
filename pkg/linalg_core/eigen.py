"""Hermitian eigendecomposition and PSD square roots.

Two solvers are available:
  - "lapack": numpy.linalg.eigh (default)
  - "jacobi": cyclic complex Jacobi rotations, used as an independent cross-check
"""

import logging
from dataclasses import dataclass
from typing import Literal

import numpy as np
import numpy.typing as npt

from errors import RejectedInputError
from linalg_core.matrix import (
    HERMITIAN_ATOL,
    ComplexMatrix,
    adjoint,
    as_matrix,
    hermitian_residual,
    is_square,
)

logger = logging.getLogger(__name__)

EigenMethod = Literal["lapack", "jacobi"]

JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
PSD_CLAMP_TOL = 1e-9


@dataclass(frozen=True)
class EigenResult:
    """Eigenvalues in descending order with orthonormal eigenvector columns."""

    eigenvalues: npt.NDArray[np.float64]
    eigenvectors: ComplexMatrix

    def reconstruct(self) -> ComplexMatrix:
        """U Λ U*."""
        u = self.eigenvectors
        return (u * self.eigenvalues) @ adjoint(u)


def _symmetrized(m: ComplexMatrix) -> ComplexMatrix:
    m = as_matrix(m)
    if not is_square(m):
        raise RejectedInputError(f"Expected a square matrix, got shape {m.shape}")
    residual = hermitian_residual(m)
    if residual > HERMITIAN_ATOL:
        raise RejectedInputError(f"Matrix is not Hermitian (max |M - M*| = {residual:.3e})")
    return (m + m.conj().T) / 2


def jacobi_eigh(
    m: ComplexMatrix,
    tol: float = JACOBI_TOL,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> tuple[npt.NDArray[np.float64], ComplexMatrix]:
    """Cyclic Jacobi eigensolver for a complex Hermitian matrix.

    Each rotation first removes the phase of a_pq, then applies the real
    symmetric Jacobi rotation. Returns (eigenvalues, eigenvectors) unsorted.
    """
    a = np.array(as_matrix(m), dtype=np.complex128, copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    scale = max(float(np.linalg.norm(a)), 1.0)

    for sweep in range(max_sweeps):
        off = np.sqrt(max(np.sum(np.abs(a) ** 2) - np.sum(np.abs(np.diag(a)) ** 2), 0.0))
        if off < tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                phase = apq / mag
                app, aqq = a[p, p].real, a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0)) if theta != 0 else 1.0
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # J = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                j = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]], dtype=np.complex128)
                idx = [p, q]
                a[:, idx] = a[:, idx] @ j
                a[idx, :] = j.conj().T @ a[idx, :]
                v[:, idx] = v[:, idx] @ j
    else:
        logger.warning(f"Jacobi eigensolver hit {max_sweeps} sweeps without converging")

    return np.real(np.diag(a)).copy(), v


def hermitian_eig(m: ComplexMatrix, method: EigenMethod = "lapack") -> EigenResult:
    """Full spectrum of a Hermitian matrix, eigenvalues descending."""
    sym = _symmetrized(m)
    if method == "jacobi":
        w, u = jacobi_eigh(sym)
    elif method == "lapack":
        w, u = np.linalg.eigh(sym)
    else:
        raise RejectedInputError(f"Unknown eigen method: {method}")
    order = np.argsort(-w, kind="stable")
    return EigenResult(eigenvalues=np.asarray(w[order], dtype=np.float64), eigenvectors=u[:, order])


def psd_sqrt(m: ComplexMatrix, clamp_tol: float = PSD_CLAMP_TOL) -> ComplexMatrix:
    """Square root of a PSD matrix via spectral decomposition.

    Eigenvalues in [-clamp_tol, 0) are roundoff and clamp to 0. Eigenvalues
    at or below the rank tolerance ``10 * n * eps * max(max|lambda|, 1)`` (the
    numpy.linalg.matrix_rank cut, scaled by 10) also count as 0, positive ones
    included: diag(1, 1e-15) has root diag(1, 0). Above the cut roots are exact.
    """
    eig = hermitian_eig(m)
    w = eig.eigenvalues
    if w.min() < -clamp_tol:
        raise RejectedInputError(f"Matrix is not PSD (min eigenvalue {w.min():.3e})")
    rank_tol = 10 * w.size * np.finfo(np.float64).eps * max(float(np.max(np.abs(w))), 1.0)
    root = np.sqrt(np.where(w > rank_tol, w, 0.0))
    u = eig.eigenvectors
    return (u * root) @ adjoint(u)
