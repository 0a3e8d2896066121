"""Two-qubit entanglement measures: concurrence, entanglement of formation
and negativity, plus the von Neumann entropy of a reduced state."""
import numpy as np

from . import _kernels
from .errors import NotPSD, OutOfRange
from .linalg import (
    PSD_TOL,
    SIGMA_Y,
    hermitian_eig,
    matrix_sqrt_psd,
    partial_transpose_r,
)
from .states import PureState, pure_to_density, validate_density

YY = np.kron(SIGMA_Y, SIGMA_Y)

_RANGE_SLACK = 1e-12


def _rho(rho) -> np.ndarray:
    return validate_density(rho).matrix


def spin_flip(rho) -> np.ndarray:
    """(sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y)."""
    m = _rho(rho)
    return YY @ m.conj() @ YY


def wootters_spectrum(rho) -> np.ndarray:
    """The four lambdas of the concurrence formula, sorted descending.

    They are the eigenvalues of sqrt(sqrt(rho) rho~ sqrt(rho)), obtained here
    as the singular values of A = sqrt(rho) sqrt(rho~), i.e. the top half of
    the spectrum of the Hermitian dilation [[0, A], [A^H, 0]]. This avoids
    square-rooting near-zero eigenvalues of the product, which would blow
    rounding noise up to ~1e-8.
    """
    m = _rho(rho)
    s = matrix_sqrt_psd(m)
    a = s @ (YY @ s.conj() @ YY)
    h = np.zeros((8, 8), dtype=np.complex128)
    h[:4, 4:] = a
    h[4:, :4] = a.conj().T
    lam = hermitian_eig(h).eigenvalues[:4]
    if lam[-1] < -PSD_TOL:
        raise NotPSD(f"Wootters eigenvalue {lam[-1]:.3e} below -{PSD_TOL:g}")
    return np.clip(lam, 0.0, None)


def concurrence(rho) -> float:
    lam = wootters_spectrum(rho)
    return float(np.clip(lam[0] - lam[1] - lam[2] - lam[3], 0.0, 1.0))


def concurrence_pure(psi: PureState) -> float:
    """2 |alpha delta - beta gamma|."""
    if not isinstance(psi, PureState):
        psi = PureState(psi)
    a, b, c, d = psi.amplitudes
    return float(min(2.0 * abs(a * d - b * c), 1.0))


def eof_from_concurrence(c: float) -> float:
    """Binary entropy of xi = (1 + sqrt(1 - c^2)) / 2, in ebits."""
    c = float(c)
    if not -_RANGE_SLACK <= c <= 1.0 + _RANGE_SLACK:
        raise OutOfRange(f"concurrence must lie in [0, 1], got {c}")
    return _kernels.eof_from_concurrence(min(max(c, 0.0), 1.0))


def entanglement_of_formation(rho) -> float:
    return eof_from_concurrence(concurrence(rho))


def von_neumann_entropy(rho) -> float:
    """-sum(lambda log2 lambda) for a 2x2 density matrix, 0 log 0 = 0."""
    m = validate_density(rho, size=2).matrix
    w = hermitian_eig(m).eigenvalues
    w = w[w > 0.0]
    return float(min(max(-np.sum(w * np.log2(w)), 0.0), 1.0))


def partial_transpose_spectrum(rho) -> np.ndarray:
    return hermitian_eig(partial_transpose_r(_rho(rho))).eigenvalues


def negativity(rho) -> float:
    """Trace norm of the partial transpose minus one.

    This is twice the Vidal-Werner negativity, so a Bell state scores 1.
    """
    w = partial_transpose_spectrum(rho)
    return float(np.clip(np.sum(np.abs(w)) - 1.0, 0.0, 1.0))


def negativity_from_negative_eigenvalues(rho) -> float:
    w = partial_transpose_spectrum(rho)
    return float(np.clip(2.0 * np.sum(np.abs(w[w < 0.0])), 0.0, 1.0))


def measure_report(rho) -> dict:
    """Concurrence, EoF, negativity and purity of a state."""
    if isinstance(rho, PureState):
        rho = pure_to_density(rho)
    m = validate_density(rho)
    c = concurrence(m)
    return {
        "concurrence": c,
        "eof": eof_from_concurrence(c),
        "negativity": negativity(m),
        "purity": float(np.real(np.trace(m.matrix @ m.matrix))),
    }

