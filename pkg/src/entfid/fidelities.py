"""Fidelity-type quantities for a pure state sent through I x E.

f_e   overlap <psi| rho_f |psi> (the usual entanglement fidelity)
f_ef  1 - |E(rho_i) - E(rho_f)|   entanglement of formation
f_c   1 - |C(rho_i) - C(rho_f)|   concurrence
f_n   1 - |N(rho_i) - N(rho_f)|   negativity
"""
from typing import NamedTuple

import numpy as np

from . import _kernels
from .channels import KrausChannel, apply_local, reduced_output_fidelity_pair
from .linalg import hs_inner
from .measures import concurrence, entanglement_of_formation, negativity
from .states import PureState, pure_to_density


class FidelityQuadruple(NamedTuple):
    f_e: float
    f_ef: float
    f_c: float
    f_n: float


def _clip01(x: float) -> float:
    return float(min(max(x, 0.0), 1.0))


def _evolve(psi, channel):
    if not isinstance(psi, PureState):
        psi = PureState(psi)
    rho_i = pure_to_density(psi)
    return psi, rho_i, apply_local(channel, rho_i)


def entanglement_fidelity(psi: PureState, channel: KrausChannel) -> float:
    psi, _, rho_f = _evolve(psi, channel)
    a = psi.amplitudes
    return _clip01(np.real(a.conj() @ rho_f.matrix @ a))


def reduced_state_fidelity(psi: PureState, channel: KrausChannel) -> float:
    """Tr(rho_i^Q rho_f^Q).

    This overlap can fall below the entanglement fidelity when rho_i^Q is
    mixed; the identity channel on a Bell state gives 1/2 against F_e = 1.
    """
    rq_i, rq_f = reduced_output_fidelity_pair(channel, psi)
    return _clip01(hs_inner(rq_i.matrix, rq_f.matrix).real)


def fidelity_of_concurrence(psi: PureState, channel: KrausChannel) -> float:
    _, rho_i, rho_f = _evolve(psi, channel)
    return _clip01(1.0 - abs(concurrence(rho_i) - concurrence(rho_f)))


def fidelity_of_eof(psi: PureState, channel: KrausChannel) -> float:
    _, rho_i, rho_f = _evolve(psi, channel)
    return _clip01(1.0 - abs(entanglement_of_formation(rho_i) - entanglement_of_formation(rho_f)))


def fidelity_of_negativity(psi: PureState, channel: KrausChannel) -> float:
    _, rho_i, rho_f = _evolve(psi, channel)
    return _clip01(1.0 - abs(negativity(rho_i) - negativity(rho_f)))


def fidelity_quadruple(psi: PureState, channel: KrausChannel) -> FidelityQuadruple:
    """All four fidelities from a single evaluation of the output state."""
    if not isinstance(psi, PureState):
        psi = PureState(psi)
    row = _kernels.sweep(psi.amplitudes, channel.stack()[None])[0]
    return FidelityQuadruple(*(float(x) for x in row))
