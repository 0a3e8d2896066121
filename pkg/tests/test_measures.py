import mpmath
import numpy as np
import pytest

from entfid import measures
from entfid.channels import apply_local, make_channel
from entfid.errors import OutOfRange
from entfid.states import PureState, bell_state, pure_to_density

from .conftest import bell_projector, random_amplitudes, random_density

YY = np.fliplr(np.diag([-1.0, 1.0, 1.0, -1.0]))


def _h2_mp(x):
    with mpmath.workdps(60):
        x = mpmath.mpf(x)
        return float(-x * mpmath.log(x, 2) - (1 - x) * mpmath.log(1 - x, 2))


def _xi_mp(c):
    with mpmath.workdps(60):
        return (1 + mpmath.sqrt(1 - mpmath.mpf(c) ** 2)) / 2


def _x_state_concurrence(rho):
    return 2 * max(0.0, abs(rho[0, 3]) - np.sqrt(rho[1, 1].real * rho[2, 2].real), abs(rho[1, 2]) - np.sqrt(rho[0, 0].real * rho[3, 3].real))


def _rho_tilde_route(rho):
    """Eigenvalues of the non-Hermitian product rho * rho~, square-rooted."""
    mu = np.linalg.eigvals(rho @ YY @ rho.conj() @ YY)
    return np.sort(np.sqrt(np.abs(mu.real)))[::-1]


def test_spin_flip_examples():
    np.testing.assert_allclose(measures.spin_flip(bell_projector()), bell_projector(), atol=1e-15)
    np.testing.assert_allclose(measures.spin_flip(np.diag([1.0, 0, 0, 0])), np.diag([0, 0, 0, 1.0]), atol=1e-15)
    np.testing.assert_allclose(measures.spin_flip(np.eye(4) / 4), np.eye(4) / 4, atol=1e-15)


def test_wootters_spectrum_examples(np_rng):
    np.testing.assert_allclose(measures.wootters_spectrum(np.eye(4) / 4), [0.25] * 4, atol=1e-14)
    np.testing.assert_allclose(measures.wootters_spectrum(np.diag([1.0, 0, 0, 0])), [0] * 4, atol=1e-14)
    for a in random_amplitudes(np_rng, 50):
        c = 2 * abs(a[0] * a[3] - a[1] * a[2])
        lam = measures.wootters_spectrum(np.outer(a, a.conj()))
        np.testing.assert_allclose(lam, [c, 0, 0, 0], atol=1e-12)


def test_wootters_spectrum_mixed_against_eigvals_route(np_rng):
    for _ in range(100):
        rho = random_density(np_rng, rank=4)
        np.testing.assert_allclose(measures.wootters_spectrum(rho), _rho_tilde_route(rho), atol=1e-9)


def test_concurrence_examples():
    assert abs(measures.concurrence(bell_projector()) - 1) < 1e-12
    assert measures.concurrence(np.diag([1.0, 0, 0, 0])) < 1e-14
    for p in np.linspace(0, 1, 21):
        rho = apply_local(make_channel("amplitude-damping", p), bell_projector()).matrix
        c = measures.concurrence(rho)
        assert abs(c - np.sqrt(1 - p)) < 1e-10
        assert abs(c - _x_state_concurrence(rho)) < 1e-10


def test_concurrence_pure_examples():
    assert measures.concurrence_pure(PureState([1, 0, 0, 0])) == 0
    assert abs(measures.concurrence_pure(bell_state("phi+")) - 1) < 1e-15
    assert abs(measures.concurrence_pure(PureState([np.sqrt(0.8), 0, 0, np.sqrt(0.2)])) - 0.8) < 1e-15


def test_eof_from_concurrence_examples():
    assert measures.eof_from_concurrence(0) == 0
    assert measures.eof_from_concurrence(1) == 1
    oracle = _h2_mp(mpmath.mpf("0.9"))
    assert abs(oracle - 0.468996) < 1e-6
    assert abs(measures.eof_from_concurrence(0.6) - oracle) < 1e-12
    with pytest.raises(OutOfRange):
        measures.eof_from_concurrence(1.1)


def test_eof_matches_mpmath_across_range():
    for c in np.linspace(0.001, 0.999, 97):
        assert abs(measures.eof_from_concurrence(c) - _h2_mp(_xi_mp(c))) < 1e-13
    # tiny c: the naive form loses everything to cancellation
    c = 1e-9
    oracle = _h2_mp(_xi_mp(c))
    assert abs(measures.eof_from_concurrence(c) - oracle) < 1e-6 * oracle


def test_eof_examples(np_rng):
    assert abs(measures.entanglement_of_formation(bell_projector()) - 1) < 1e-12
    assert measures.entanglement_of_formation(np.eye(4) / 4) == 0


def test_von_neumann_examples():
    assert abs(measures.von_neumann_entropy(np.eye(2) / 2) - 1) < 1e-15
    assert measures.von_neumann_entropy(np.diag([1.0, 0])) == 0
    assert abs(measures.von_neumann_entropy(np.diag([0.9, 0.1])) - 0.468996) < 1e-6


def test_negativity_examples(np_rng):
    assert abs(measures.negativity(bell_projector()) - 1) < 1e-12
    for _ in range(20):
        a, b = random_density(np_rng), random_density(np_rng)
        prod = np.kron(a[:2, :2] / np.trace(a[:2, :2]), b[:2, :2] / np.trace(b[:2, :2]))
        assert measures.negativity(prod) < 1e-12
    for p in np.linspace(0, 1, 21):
        rho = apply_local(make_channel("amplitude-damping", p), bell_projector()).matrix
        closed = np.sqrt(p * p / 4 + 1 - p) - p / 2
        assert abs(measures.negativity(rho) - closed) < 1e-10
        # independent route: numpy eigensolver on the hand transposed matrix
        w = np.linalg.eigvalsh(rho.reshape(2, 2, 2, 2).transpose(2, 1, 0, 3).reshape(4, 4))
        assert abs(np.abs(w).sum() - 1 - closed) < 1e-10


def test_negativity_two_routes_agree(np_rng):
    for _ in range(100):
        rho = random_density(np_rng)
        assert abs(measures.negativity(rho) - measures.negativity_from_negative_eigenvalues(rho)) < 1e-12


def test_measures_bounded_and_ppt_implies_zero_concurrence(np_rng):
    for _ in range(200):
        rho = random_density(np_rng)
        c, n = measures.concurrence(rho), measures.negativity(rho)
        assert 0 <= c <= 1 and 0 <= n <= 1
        # two qubits: PPT <=> separable, and N <= C always
        assert n <= c + 1e-10
        if n == 0:
            assert c < 1e-9


def test_measure_report_keys():
    rep = measures.measure_report(pure_to_density(bell_state("phi+")))
    assert set(rep) == {"concurrence", "eof", "negativity", "purity"}
    assert abs(rep["purity"] - 1) < 1e-14
