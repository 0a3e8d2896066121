"""Counter-based SplitMix64 substreams.

A draw is a pure function of ``(seed, stream, index, counter)``:

    key    = mix64(mix64(seed XOR stream) + GOLDEN * (index + 1))
    word_k = mix64(key + GOLDEN * (k + 1))
    u_k    = ((word_k >> 11) + 0.5) * 2**-53          in (0, 1)

with the SplitMix64 finalizer

    mix64(z): z ^= z >> 30; z *= 0xBF58476D1CE4E5B9
              z ^= z >> 27; z *= 0x94D049BB133111EB
              z ^= z >> 31

All arithmetic is modulo 2**64, so results do not depend on the platform,
on call order or on how indices are distributed across workers.
"""
import math

import numpy as np

GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB

STREAM_STATES = 0x53544154455F5053  # initial pure states
STREAM_PGRID = 0x505F56414C554553  # random-uniform p values

_U64 = np.uint64


def check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def mix64(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=_U64)
    z = (z ^ (z >> _U64(30))) * _U64(_M1)
    z = (z ^ (z >> _U64(27))) * _U64(_M2)
    return z ^ (z >> _U64(31))


def substream_keys(seed: int, stream: int, indices) -> np.ndarray:
    idx = np.atleast_1d(np.asarray(indices, dtype=_U64))
    base = mix64(np.array([check_seed(seed) ^ stream], dtype=_U64))
    return mix64(base + _U64(GOLDEN) * (idx + _U64(1)))


def uniforms(seed: int, stream: int, indices, count: int, offset: int = 0) -> np.ndarray:
    """Uniform draws in (0, 1), shape (len(indices), count)."""
    keys = substream_keys(seed, stream, indices)
    k = np.arange(offset + 1, offset + count + 1, dtype=_U64)
    words = mix64(keys[:, None] + _U64(GOLDEN) * k[None, :])
    return ((words >> _U64(11)).astype(np.float64) + 0.5) * 2.0**-53


def box_muller(u: np.ndarray) -> np.ndarray:
    """Standard normals from uniforms paired along the last axis.

    Evaluated element by element with ``math`` so a draw never depends on
    the batch it was computed in.
    """
    flat = np.asarray(u, dtype=np.float64).reshape(-1, 2)
    out = np.empty(flat.shape, dtype=np.float64)
    for k, (u1, u2) in enumerate(flat.tolist()):
        r = math.sqrt(-2.0 * math.log(u1))
        out[k, 0] = r * math.cos(2.0 * math.pi * u2)
        out[k, 1] = r * math.sin(2.0 * math.pi * u2)
    return out.reshape(u.shape)
