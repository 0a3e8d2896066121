"""Dense complex matrix helpers for two-qubit operators.

Matrices are plain ``numpy`` complex128 arrays. The basis is fixed as
|00>, |01>, |10>, |11> with the first label belonging to subsystem R.
"""
from typing import NamedTuple

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, NotHermitian, NotPSD

HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-10

SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
I2 = np.eye(2, dtype=np.complex128)


class HermitianEigenResult(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(a) -> np.ndarray:
    m = np.asarray(getattr(a, "matrix", a), dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d matrix, got shape {m.shape}")
    return m


def _require_shape(a: np.ndarray, shape: tuple, what: str) -> None:
    if a.shape != shape:
        raise DimensionMismatch(f"{what} must have shape {shape}, got {a.shape}")


def hermitian_deviation(a: np.ndarray) -> float:
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def _require_hermitian(a: np.ndarray) -> None:
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"matrix must be square, got {a.shape}")
    dev = hermitian_deviation(a)
    if dev > HERMITIAN_TOL:
        raise NotHermitian(f"max |A - A^H| = {dev:.3e} exceeds {HERMITIAN_TOL:g}")


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def hermitian_eig(a) -> HermitianEigenResult:
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Eigenvalues are returned in non-increasing order with the matching
    eigenvectors as columns of a unitary matrix.
    """
    m = as_matrix(a)
    _require_hermitian(m)
    # symmetrize so rounding-level asymmetry does not leak into the rotations
    h = 0.5 * (m + m.conj().T)
    w, v = _kernels.herm_eig(h)
    return HermitianEigenResult(w, v)


def matrix_sqrt_psd(a) -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian matrix.

    Eigenvalues in [-1e-10, 0) are treated as zero; anything more negative
    raises ``NotPSD``.
    """
    w, v = hermitian_eig(a)
    if w[-1] < -PSD_TOL:
        raise NotPSD(f"smallest eigenvalue {w[-1]:.3e} below -{PSD_TOL:g}")
    root = np.sqrt(np.clip(w, 0.0, None))
    return (v * root) @ v.conj().T


def partial_trace_r(rho) -> np.ndarray:
    """Trace out subsystem R (the first qubit) of a 4x4 operator."""
    m = as_matrix(rho)
    _require_shape(m, (4, 4), "rho")
    return m[:2, :2] + m[2:, 2:]


def partial_transpose_r(rho) -> np.ndarray:
    """Transpose on subsystem R: <ij|rho^T_R|kl> = <kj|rho|il>."""
    m = as_matrix(rho)
    _require_shape(m, (4, 4), "rho")
    return m.reshape(2, 2, 2, 2).transpose(2, 1, 0, 3).reshape(4, 4).copy()


def trace_norm_hermitian(a) -> float:
    w, _ = hermitian_eig(a)
    return float(np.sum(np.abs(w)))


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product Tr(a^H b)."""
    ma, mb = as_matrix(a), as_matrix(b)
    if ma.shape != mb.shape:
        raise DimensionMismatch(f"shapes {ma.shape} and {mb.shape} differ")
    return complex(np.sum(ma.conj() * mb))
