"""Entanglement fidelity versus concurrence, entanglement of formation and
negativity for two-qubit states sent through single-qubit noise channels."""

__version__ = "0.1.0"
