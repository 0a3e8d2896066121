"""Numerical kernels with a compiled core and a pure-Python fallback.

The compiled extension ``_ckernels`` is used when it was built; otherwise the
pure-Python twin ``_pykernels`` is loaded. Set ``ENTFID_BACKEND=python`` to
force the fallback.

Both backends expose:

herm_eig(a, want_vectors=True)
    Cyclic Jacobi eigensolver for complex Hermitian matrices (n <= 8),
    eigenvalues sorted descending.
wootters_lambdas(rho), concurrence(rho), negativity(rho), pt_eigvals(rho)
    Two-qubit measures on a 4x4 density matrix.
eof_from_concurrence(c)
sweep(psi, kraus)
    Fused (f_e, f_ef, f_c, f_n) evaluation over a (P, m, 2, 2) Kraus stack.
tau_numerator(x, y)
    Integer Kendall numerator by merge-sort pair counting.
"""
import importlib
import os

from . import _pykernels

KERNEL_NAMES = (
    "herm_eig",
    "wootters_lambdas",
    "concurrence",
    "negativity",
    "pt_eigvals",
    "eof_from_concurrence",
    "sweep",
    "tau_numerator",
)


def available_backends():
    names = ["python"]
    try:
        importlib.import_module("entfid._kernels._ckernels")
    except ImportError:
        pass
    else:
        names.insert(0, "compiled")
    return names


def get_backend(name):
    """Return the kernel module for ``name`` ('compiled' or 'python')."""
    if name == "python":
        return _pykernels
    if name == "compiled":
        return importlib.import_module("entfid._kernels._ckernels")
    raise ValueError(f"unknown backend {name!r}")


def _select():
    wanted = os.environ.get("ENTFID_BACKEND", "").strip().lower()
    if wanted == "python":
        return "python", _pykernels
    try:
        return "compiled", get_backend("compiled")
    except ImportError:
        if wanted == "compiled":
            raise
        return "python", _pykernels


BACKEND, _impl = _select()

herm_eig = _impl.herm_eig
wootters_lambdas = _impl.wootters_lambdas
concurrence = _impl.concurrence
negativity = _impl.negativity
pt_eigvals = _impl.pt_eigvals
eof_from_concurrence = _impl.eof_from_concurrence
sweep = _impl.sweep
tau_numerator = _impl.tau_numerator
