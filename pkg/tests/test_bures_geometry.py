import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import solve_sylvester

from spinkin import bures_geometry as bg
from spinkin import fs_kinematics as fk
from spinkin.errors import DegenerateStateError, ValidationError
from spinkin.spin_algebra import spin_matrices
from spinkin.states import random_pure

seeds = st.integers(0, 2**32 - 1)


def _herm(rng, d):
    m = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (m + m.conj().T) / 2


def _hs_state(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


@given(seeds, st.integers(2, 5))
@settings(max_examples=40, deadline=None)
def test_solve_G_against_sylvester(seed, d):
    rng = np.random.default_rng(seed)
    rho, x = _hs_state(rng, d), _herm(rng, d)
    x -= np.trace(x) / d * np.eye(d)
    g = bg.solve_G(rho, x)
    assert np.allclose(g.matrix, solve_sylvester(rho, rho, x), atol=1e-8 * np.abs(g.matrix).max())
    assert g.residual(x) < 1e-10
    assert abs(np.trace(g.matrix @ rho)) < 1e-10


def test_inverse_R():
    rho = _hs_state(np.random.default_rng(1), 3)
    assert np.allclose(bg.superoperator_R(rho) @ bg.eigen_inverse_R(rho), np.eye(9), atol=1e-10)


def test_fs_limit():
    rng = np.random.default_rng(2)
    psi = random_pure(1, rng)
    eps = 3e-6
    rho = (1 - eps) * np.outer(psi, psi.conj()) + eps * np.eye(3) / 3
    assert np.linalg.eigvalsh(rho).min() == pytest.approx(1e-6)
    for h in spin_matrices(1):
        assert bg.mixed_speed_sq(rho, h) == pytest.approx(fk.speed_sq(psi, h), rel=1e-5)


def test_qubit_rotation_kinematics():
    # Bures ball ds^2 = (dr^2/(1-r^2) + r^2 dOmega^2)/4: an equatorial circle
    # has |v|^2 = r^2/4 and |a|^2 = r^2 (1-r^2)/4.
    h = spin_matrices(0.5)[2]
    for r in (0.1, 0.5, 0.9):
        rho = (np.eye(2) + r * np.array([[0, 1], [1, 0]])) / 2
        assert bg.mixed_speed_sq(rho, h) == pytest.approx(r * r / 4)
        assert bg.mixed_acc_norm_sq(rho, h) == pytest.approx(r * r * (1 - r * r) / 4)


def test_dittmann_char_poly_and_inverse():
    rng = np.random.default_rng(3)
    rho = _hs_state(rng, 4)
    k = bg.char_poly_coefficients(rho)
    assert np.allclose(k, np.poly(np.linalg.eigvalsh(rho))[1:])
    data = bg.dittmann_data(rho)
    for lam in np.linalg.eigvalsh(rho):
        assert abs(data.char_poly(lam)) < 1e-14
    assert np.allclose(bg.dittmann_inverse(rho), bg.eigen_inverse_R(rho), atol=1e-8)


def test_dittmann_relative_agreement_on_raw_ensemble():
    rng = np.random.default_rng(4)
    worst = 0.0
    for _ in range(300):
        rho, x = _hs_state(rng, 4), _herm(rng, 4)
        x -= np.trace(x) / 4 * np.eye(4)
        a, b = bg.metric_sq(rho, x, "eigen"), bg.metric_sq(rho, x, "dittmann")
        worst = max(worst, abs(a - b) / a)
    assert worst < 1e-8


def test_degenerate_and_invalid_inputs():
    with pytest.raises(DegenerateStateError) as info:
        bg.solve_G(np.diag([1.0, 0.0]), np.diag([1.0, -1.0]))
    assert info.value.min_eigenvalue == pytest.approx(0.0)
    with pytest.raises(ValidationError):
        bg.solve_G(np.eye(2) / 2, np.eye(3))
    with pytest.raises(ValidationError):
        bg.metric_sq(np.eye(4) / 4, np.zeros((4, 4)), backend="nope")
    with pytest.raises(ValidationError):
        bg.dittmann_data(np.eye(3) / 3)


def test_metric_tensor_symmetric_positive():
    rng = np.random.default_rng(6)
    base = _hs_state(rng, 3)
    dirs = [_herm(rng, 3) for _ in range(3)]
    dirs = [d - np.trace(d) / 3 * np.eye(3) for d in dirs]
    fam = lambda mu: base + sum(m * d for m, d in zip(mu, dirs)) * 0.01  # noqa: E731
    rho, d1, _ = bg.chart_derivatives(fam, np.zeros(3))
    g = bg.bures_metric_tensor(rho, d1)
    assert np.allclose(g, g.T)
    assert np.linalg.eigvalsh(g).min() > 0
