"""Kendall's tau-a rank correlation.

    tau = 2 / (n (n - 1)) * sum_{i<j} sgn(x_i - x_j) sgn(y_i - y_j)

Ties contribute zero and there is no tie correction in the denominator.
"""
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, TooFewPoints


@dataclass(frozen=True, eq=False)
class PairedSample:
    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=np.float64).reshape(-1)
        ys = np.asarray(self.ys, dtype=np.float64).reshape(-1)
        if xs.shape != ys.shape:
            raise DimensionMismatch(f"paired sample lengths differ: {xs.size} vs {ys.size}")
        if xs.size < 2:
            raise TooFewPoints(f"Kendall tau needs at least 2 observations, got {xs.size}")
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
            raise ValueError("paired sample contains non-finite values")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    @property
    def n(self) -> int:
        return self.xs.size


def _normalize(numerator: int, n: int) -> float:
    return 2.0 * numerator / (n * (n - 1))


def kendall_tau(xs, ys=None, tie_tol: float = 0.0) -> float:
    """Tau-a by merge-sort pair counting.

    ``xs`` may be a ``PairedSample``. A positive ``tie_tol`` treats
    differences with ``|d| <= tie_tol`` as ties; that relation is not
    transitive, so it is evaluated pairwise.
    """
    sample = xs if isinstance(xs, PairedSample) else PairedSample(xs, ys)
    if tie_tol < 0:
        raise ValueError("tie_tol must be nonnegative")
    if tie_tol > 0:
        return _normalize(_pairwise_numerator(sample.xs, sample.ys, tie_tol), sample.n)
    return _normalize(int(_kernels.tau_numerator(sample.xs, sample.ys)), sample.n)


def _pairwise_numerator(x, y, tol):
    dx = x[:, None] - x[None, :]
    dy = y[:, None] - y[None, :]
    sx = np.where(np.abs(dx) <= tol, 0, np.sign(dx)).astype(np.int64)
    sy = np.where(np.abs(dy) <= tol, 0, np.sign(dy)).astype(np.int64)
    return int(np.triu(sx * sy, k=1).sum())


def kendall_tau_oracle(xs, ys=None, tie_tol: float = 0.0) -> float:
    """Direct double loop over all pairs; the reference for ``kendall_tau``."""
    sample = xs if isinstance(xs, PairedSample) else PairedSample(xs, ys)
    x = sample.xs.tolist()
    y = sample.ys.tolist()

    def sgn(d):
        if abs(d) <= tie_tol:
            return 0
        return 1 if d > 0 else -1

    total = 0
    n = len(x)
    for i in range(n):
        for j in range(i + 1, n):
            total += sgn(x[i] - x[j]) * sgn(y[i] - y[j])
    return _normalize(total, n)
