"""Single-qubit Kraus channels acting on subsystem Q of a two-qubit state."""
from dataclasses import dataclass, field

import numpy as np

from .errors import POutOfRange, UnknownChannel
from .linalg import I2, SIGMA_Y, partial_trace_r
from .states import DensityMatrix, PureState, pure_to_density, validate_density

COMPLETENESS_TOL = 1e-10

_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


def _amplitude_damping(p):
    return [
        np.array([[1, 0], [0, np.sqrt(1 - p)]], dtype=np.complex128),
        np.array([[0, np.sqrt(p)], [0, 0]], dtype=np.complex128),
    ]


def _bit_flip(p):
    return [np.sqrt(1 - p) * I2, np.sqrt(p) * _X]


def _phase_flip(p):
    return [np.sqrt(1 - p) * I2, np.sqrt(p) * _Z]


def _bit_phase_flip(p):
    return [SIGMA_Y.copy()]


def _identity(p):
    return [I2.copy()]


CHANNEL_FAMILIES = {
    "amplitude-damping": _amplitude_damping,
    "bit-flip": _bit_flip,
    "phase-flip": _phase_flip,
    "bit-phase-flip": _bit_phase_flip,
    "identity": _identity,
}
NOISE_FAMILIES = ("amplitude-damping", "bit-flip", "phase-flip")


def canonical_family(family_id: str) -> str:
    name = family_id.strip().lower().replace("_", "-")
    if name == "bit-phase-flip-unitary":
        name = "bit-phase-flip"
    if name not in CHANNEL_FAMILIES:
        raise UnknownChannel(f"unknown channel family {family_id!r}; choose from {', '.join(CHANNEL_FAMILIES)}")
    return name


def completeness_deviation(elements) -> float:
    total = sum(k.conj().T @ k for k in elements)
    return float(np.max(np.abs(total - I2)))


@dataclass(frozen=True, eq=False)
class KrausChannel:
    elements: tuple = field(repr=False)
    family: str = "custom"
    p: float = 0.0

    def __post_init__(self):
        elements = tuple(np.array(k, dtype=np.complex128) for k in self.elements)
        if not elements:
            raise ValueError("a channel needs at least one Kraus element")
        for k in elements:
            if k.shape != (2, 2):
                raise ValueError(f"Kraus elements must be 2x2, got {k.shape}")
            k.setflags(write=False)
        dev = completeness_deviation(elements)
        if dev > COMPLETENESS_TOL:
            raise ValueError(f"Kraus elements are not complete: deviation {dev:.3e}")
        object.__setattr__(self, "elements", elements)

    def stack(self) -> np.ndarray:
        return np.stack(self.elements)


def _check_p(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise POutOfRange(f"p must lie in [0, 1], got {p}")
    return p


def make_channel(family_id: str, p: float = 0.0) -> KrausChannel:
    name = canonical_family(family_id)
    p = _check_p(p)
    return KrausChannel(tuple(CHANNEL_FAMILIES[name](p)), family=name, p=p)


def kraus_stack(family_id: str, ps) -> np.ndarray:
    """Kraus elements for every p, shaped (len(ps), m, 2, 2)."""
    name = canonical_family(family_id)
    builder = CHANNEL_FAMILIES[name]
    return np.array([builder(_check_p(p)) for p in ps], dtype=np.complex128).reshape(len(ps), -1, 2, 2)


def apply_local(channel: KrausChannel, rho) -> DensityMatrix:
    """rho_f = sum_k (I x K_k) rho (I x K_k)^H."""
    m = validate_density(rho).matrix
    out = np.zeros((4, 4), dtype=np.complex128)
    for k in channel.elements:
        big = np.kron(I2, k)
        out += big @ m @ big.conj().T
    return validate_density(out)


def reduced_output_fidelity_pair(channel: KrausChannel, psi: PureState):
    """Reduced states of Q before and after the channel."""
    rho_i = pure_to_density(psi)
    rho_f = apply_local(channel, rho_i)
    return (
        validate_density(partial_trace_r(rho_i), size=2),
        validate_density(partial_trace_r(rho_f), size=2),
    )
