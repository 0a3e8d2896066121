"""Two-qubit pure and mixed states."""
from dataclasses import dataclass, field

import numpy as np

from . import rng
from .errors import DimensionMismatch, NotHermitian, NotNormalized, NotPSD, TraceNotOne, ZeroVector
from .linalg import HERMITIAN_TOL, PSD_TOL, as_matrix, hermitian_deviation, hermitian_eig

NORM_TOL = 1e-12
TRACE_TOL = 1e-10

_S = 1.0 / np.sqrt(2.0)
BELL_AMPLITUDES = {
    "phi+": (_S, 0.0, 0.0, _S),
    "phi-": (_S, 0.0, 0.0, -_S),
    "psi+": (0.0, _S, _S, 0.0),
    "psi-": (0.0, _S, -_S, 0.0),
}
_BELL_ALIASES = {"Φ+": "phi+", "Φ-": "phi-", "Φ−": "phi-", "Ψ+": "psi+", "Ψ-": "psi-", "Ψ−": "psi-"}


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized amplitudes (alpha, beta, gamma, delta) on |00>,|01>,|10>,|11>."""

    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.shape != (4,):
            raise DimensionMismatch(f"a two-qubit pure state needs 4 amplitudes, got {amps.shape[0]}")
        dev = abs(float(np.vdot(amps, amps).real) - 1.0)
        if dev > NORM_TOL:
            raise NotNormalized(f"squared norm deviates from 1 by {dev:.3e}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_unnormalized(cls, amplitudes) -> "PureState":
        amps = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        norm = np.linalg.norm(amps)
        if norm == 0.0:
            raise ZeroVector("cannot normalize the zero vector")
        return cls(amps / norm)

    def __repr__(self):
        return f"PureState({np.array2string(self.amplitudes, precision=6)})"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated density matrix (4x4 joint or 2x2 reduced). Build with ``validate_density``."""

    matrix: np.ndarray = field(repr=False)

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)


def pure_to_density(psi: PureState) -> DensityMatrix:
    if not isinstance(psi, PureState):
        psi = PureState(psi)
    a = psi.amplitudes
    m = np.outer(a, a.conj())
    m.setflags(write=False)
    return DensityMatrix(m)


def bell_state(kind: str) -> PureState:
    key = _BELL_ALIASES.get(kind, kind).lower().replace("−", "-")
    try:
        return PureState(BELL_AMPLITUDES[key])
    except KeyError:
        raise ValueError(f"unknown Bell state {kind!r}; use one of {sorted(BELL_AMPLITUDES)}") from None


def validate_density(m, size: int = 4) -> DensityMatrix:
    """Check Hermiticity, unit trace and positivity, in that order."""
    if isinstance(m, DensityMatrix) and m.matrix.shape == (size, size):
        return m
    a = as_matrix(m)
    if a.shape != (size, size):
        raise DimensionMismatch(f"density matrix must be {size}x{size}, got {a.shape}")
    dev = hermitian_deviation(a)
    if dev > HERMITIAN_TOL:
        raise NotHermitian(f"max |rho - rho^H| = {dev:.3e} exceeds {HERMITIAN_TOL:g}")
    tr = complex(np.trace(a))
    if abs(tr - 1.0) > TRACE_TOL:
        raise TraceNotOne(f"trace is {tr.real:.12g}, off by {abs(tr - 1.0):.3e}")
    w = hermitian_eig(a).eigenvalues
    if w[-1] < -PSD_TOL:
        raise NotPSD(f"smallest eigenvalue {w[-1]:.3e} below -{PSD_TOL:g}")
    a = a.copy()
    a.setflags(write=False)
    return DensityMatrix(a)


@dataclass(frozen=True)
class StateSampler:
    """Haar-random pure states addressed by ``(master_seed, index)``.

    Each state uses eight uniforms from its own SplitMix64 substream, turned
    into complex standard-normal amplitudes by Box-Muller and normalized.
    """

    master_seed: int

    def __post_init__(self):
        rng.check_seed(self.master_seed)

    def amplitudes(self, indices) -> np.ndarray:
        """Normalized amplitudes for each index, shape (len(indices), 4)."""
        idx = np.atleast_1d(np.asarray(indices, dtype=np.int64))
        if idx.size and idx.min() < 0:
            raise ValueError("state indices must be nonnegative")
        z = self._gaussian(idx, 0)
        norms = np.linalg.norm(z, axis=1)
        offset = 8
        # probability ~0: redraw from the next block of the same substream
        while np.any(norms == 0.0):
            bad = norms == 0.0
            z[bad] = self._gaussian(idx[bad], offset)
            norms[bad] = np.linalg.norm(z[bad], axis=1)
            offset += 8
        return z / norms[:, None]

    def _gaussian(self, idx, offset):
        g = rng.box_muller(rng.uniforms(self.master_seed, rng.STREAM_STATES, idx, 8, offset))
        return g[:, 0::2] + 1j * g[:, 1::2]

    def sample(self, index: int) -> PureState:
        return PureState(self.amplitudes([index])[0])


def random_pure_state(sampler: StateSampler, index: int) -> PureState:
    return sampler.sample(index)
