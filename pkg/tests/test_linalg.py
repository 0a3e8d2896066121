import numpy as np
import pytest

from entfid import linalg
from entfid.errors import DimensionMismatch, NotHermitian, NotPSD

from .conftest import bell_projector, random_density, random_hermitian

I2 = np.eye(2, dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])


def test_kron_examples():
    np.testing.assert_array_equal(linalg.kron(I2, I2), np.eye(4))
    # hand expansion of the 2x2 blocks
    expected = np.zeros((4, 4))
    expected[0, 3], expected[1, 2], expected[2, 1], expected[3, 0] = -1, 1, 1, -1
    np.testing.assert_array_equal(linalg.kron(SY, SY), expected)
    np.testing.assert_array_equal(linalg.kron(np.diag([1, 2]), np.diag([3, 4])), np.diag([3, 4, 6, 8]))


def test_hermitian_eig_examples():
    np.testing.assert_allclose(linalg.hermitian_eig(np.diag([3.0, 1.0, 2.0])).eigenvalues, [3, 2, 1])
    np.testing.assert_allclose(linalg.hermitian_eig(SY).eigenvalues, [1, -1], atol=1e-14)
    np.testing.assert_allclose(linalg.hermitian_eig(bell_projector()).eigenvalues, [1, 0, 0, 0], atol=1e-14)


def test_hermitian_eig_rejects_non_hermitian_and_nonsquare():
    with pytest.raises(NotHermitian):
        linalg.hermitian_eig(np.array([[0, 1], [0, 0]], dtype=complex))
    with pytest.raises(DimensionMismatch):
        linalg.hermitian_eig(np.zeros((2, 3)))


def test_hermitian_eig_random(np_rng):
    for n in (2, 4):
        a = random_hermitian(np_rng, n)
        res = linalg.hermitian_eig(a)
        np.testing.assert_allclose(res.eigenvectors @ np.diag(res.eigenvalues) @ res.eigenvectors.conj().T, a, atol=1e-10)


def test_matrix_sqrt_examples():
    np.testing.assert_allclose(linalg.matrix_sqrt_psd(np.eye(4)), np.eye(4), atol=1e-14)
    np.testing.assert_allclose(linalg.matrix_sqrt_psd(np.diag([4.0, 1, 0, 0])), np.diag([2.0, 1, 0, 0]), atol=1e-14)
    np.testing.assert_allclose(linalg.matrix_sqrt_psd(bell_projector()), bell_projector(), atol=1e-12)
    with pytest.raises(NotPSD):
        linalg.matrix_sqrt_psd(np.diag([1.0, -0.5]))


def test_matrix_sqrt_squares_back(np_rng):
    rho = random_density(np_rng, rank=4)
    s = linalg.matrix_sqrt_psd(rho)
    np.testing.assert_allclose(s @ s, rho, atol=1e-12)


def test_partial_trace_examples(np_rng):
    np.testing.assert_allclose(linalg.partial_trace_r(bell_projector()), I2 / 2, atol=1e-15)
    ket01 = np.zeros(4)
    ket01[1] = 1
    np.testing.assert_array_equal(linalg.partial_trace_r(np.outer(ket01, ket01)), np.diag([0, 1]))
    a, b = random_hermitian(np_rng, 2), random_hermitian(np_rng, 2)
    np.testing.assert_allclose(linalg.partial_trace_r(np.kron(a, b)), np.trace(a) * b, atol=1e-12)


def test_partial_transpose_examples(np_rng):
    a, b = random_hermitian(np_rng, 2), random_hermitian(np_rng, 2)
    np.testing.assert_allclose(linalg.partial_transpose_r(np.kron(a, b)), np.kron(a.T, b), atol=1e-14)
    rho = random_density(np_rng)
    np.testing.assert_array_equal(linalg.partial_transpose_r(linalg.partial_transpose_r(rho)), rho)
    # hand-built transpose of the R index, then numpy's eigensolver
    phi = bell_projector()
    hand = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    hand[2 * i + j, 2 * k + l] = phi[2 * k + j, 2 * i + l]
    np.testing.assert_allclose(linalg.partial_transpose_r(phi), hand)
    np.testing.assert_allclose(np.linalg.eigvalsh(hand), [-0.5, 0.5, 0.5, 0.5], atol=1e-14)


def test_trace_norm_examples(np_rng):
    assert abs(linalg.trace_norm_hermitian(random_density(np_rng)) - 1) < 1e-12
    assert abs(linalg.trace_norm_hermitian(np.diag([1.0, -2.0])) - 3) < 1e-14
    assert abs(linalg.trace_norm_hermitian(linalg.partial_transpose_r(bell_projector())) - 2) < 1e-12


def test_hs_inner_examples():
    assert abs(linalg.hs_inner(bell_projector(), bell_projector()) - 1) < 1e-14
    assert abs(linalg.hs_inner(np.eye(4) / 4, np.eye(4) / 4) - 0.25) < 1e-15
    assert abs(linalg.hs_inner(bell_projector("phi+"), bell_projector("psi+"))) < 1e-15
    with pytest.raises(DimensionMismatch):
        linalg.hs_inner(np.eye(2), np.eye(4))
