import numpy as np
import pytest

from entfid._kernels import available_backends, get_backend

BACKENDS = available_backends()
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture(params=BACKENDS)
def kernels(request):
    return get_backend(request.param)


@pytest.fixture
def np_rng():
    # independent of the package's own SplitMix64 sampler
    return np.random.default_rng(12345)


def random_amplitudes(gen, n=None):
    shape = (4,) if n is None else (n, 4)
    z = gen.standard_normal(shape) + 1j * gen.standard_normal(shape)
    return z / np.linalg.norm(z, axis=-1, keepdims=True)


def random_hermitian(gen, n):
    x = gen.standard_normal((n, n)) + 1j * gen.standard_normal((n, n))
    return x + x.conj().T


def random_density(gen, rank=None):
    rank = rank or gen.integers(1, 5)
    x = gen.standard_normal((4, rank)) + 1j * gen.standard_normal((4, rank))
    rho = x @ x.conj().T
    return rho / np.trace(rho).real


def bell_projector(kind="phi+"):
    s = 1 / np.sqrt(2)
    vecs = {
        "phi+": [s, 0, 0, s],
        "phi-": [s, 0, 0, -s],
        "psi+": [0, s, s, 0],
        "psi-": [0, s, -s, 0],
    }
    v = np.array(vecs[kind], dtype=complex)
    return np.outer(v, v.conj())


def ad_kraus_branches(p):
    """Amplitude-damping Kraus pair written out by hand for oracles."""
    return (
        np.array([[1, 0], [0, np.sqrt(1 - p)]], dtype=complex),
        np.array([[0, np.sqrt(p)], [0, 0]], dtype=complex),
    )


def brute_apply(kraus, rho):
    """sum_k (I x K) rho (I x K)^H via explicit index contraction."""
    r = rho.reshape(2, 2, 2, 2)
    out = np.zeros((2, 2, 2, 2), dtype=complex)
    for k in kraus:
        out += np.einsum("bj,ajcl,dl->abcd", k, r, k.conj())
    return out.reshape(4, 4)


@pytest.fixture(scope="session")
def haar_mean_concurrence_oracle():
    """Mean of 2|ad - bc| over 1e7 Haar states from numpy's own generator."""
    gen = np.random.default_rng(2024)
    total, n, chunk = 0.0, 10**7, 10**6
    for _ in range(n // chunk):
        z = gen.standard_normal((chunk, 8)).view(complex)
        z /= np.linalg.norm(z, axis=1)[:, None]
        total += float(np.sum(2 * np.abs(z[:, 0] * z[:, 3] - z[:, 1] * z[:, 2])))
    return total / n
