import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinkin.errors import ValidationError
from spinkin.matrix_kernel import partial_trace
from spinkin.spin_algebra import axis_hamiltonian
from spinkin.states import (
    SYMMETRIC_ISOMETRY,
    StateSpec,
    SymmetricMixedParams,
    bloch_decompose,
    build_mixed,
    check_density,
    check_ket,
    coherent_state,
    constellation_from_pairwise_angles,
    constellation_to_state,
    is_pure,
    ket_to_dm,
    load_state,
    random_mixed_symmetric,
    random_pure,
    save_state,
    state_from_dict,
    state_to_constellation,
    symmetric_embed,
    symmetric_restrict,
)


def fidelity(a, b):
    return abs(np.vdot(a, b)) ** 2


@given(st.integers(1, 6), st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_constellation_round_trip(n, seed):
    psi = random_pure(Fraction(n, 2), seed)
    back = constellation_to_state(state_to_constellation(psi))
    assert fidelity(psi, back) == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("s", [Fraction(1, 2), Fraction(1), Fraction(2)])
def test_coherent_state_is_top_eigenvector(s):
    n = np.array([1.0, -2.0, 2.0]) / 3
    psi = coherent_state(s, n)
    h = axis_hamiltonian(n, s)
    assert np.allclose(h @ psi, float(s) * psi, atol=1e-12)


def test_south_pole_stars_survive_round_trip():
    stars = np.array([[0, 0, -1.0], [0, 0, -1.0], [1.0, 0, 0]])
    back = state_to_constellation(constellation_to_state(stars))
    assert sum(np.allclose(b, [0, 0, -1]) for b in back) == 2


def test_antipodal_equatorial_stars():
    psi = constellation_to_state([[1.0, 0, 0], [-1.0, 0, 0]])
    want = np.array([1, 0, -1]) / math.sqrt(2)
    assert fidelity(psi, want) == pytest.approx(1.0)
    psi4 = symmetric_embed(psi)
    assert fidelity(psi4, np.array([1, 0, 0, -1]) / math.sqrt(2)) == pytest.approx(1.0)


def test_pairwise_angles_are_realized():
    a, b, g = 0.7, 1.1, 1.5
    stars = constellation_from_pairwise_angles((a, b, g))
    assert math.acos(stars[0] @ stars[1]) == pytest.approx(a)
    assert math.acos(stars[0] @ stars[2]) == pytest.approx(b)
    assert math.acos(stars[1] @ stars[2]) == pytest.approx(g)
    with pytest.raises(ValidationError):
        constellation_from_pairwise_angles((0.1, 0.1, 2.0))


def test_symmetric_embedding():
    assert np.allclose(SYMMETRIC_ISOMETRY.conj().T @ SYMMETRIC_ISOMETRY, np.eye(3))
    rho3 = random_mixed_symmetric(4)
    rho4 = symmetric_embed(rho3)
    assert np.allclose(symmetric_restrict(rho4), rho3)
    swap = np.eye(4)[[0, 2, 1, 3]]
    assert np.allclose(swap @ rho4 @ swap, rho4)


def test_bloch_decomposition():
    rng = np.random.default_rng(2)
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    rho = g @ g.conj().T
    rho /= np.trace(rho)
    assert np.allclose(bloch_decompose(rho).reconstruct(), rho)
    # product pure state: T = x y^T
    p = np.kron(random_pure(Fraction(1, 2), 1), random_pure(Fraction(1, 2), 2))
    b = bloch_decompose(ket_to_dm(p))
    assert np.allclose(b.T, np.outer(b.x, b.y))


def test_mixed_parametrization():
    r = 0.2
    rho = build_mixed(SymmetricMixedParams([0, 0, r], np.zeros((3, 3))))
    assert np.allclose(np.linalg.eigvalsh(rho), [0.25 - r, 0.25, 0.25, 0.25 + r])
    r1 = partial_trace(rho, (2, 2), keep=1)
    assert np.allclose(r1, np.eye(2) / 2 + r * np.diag([1, -1]))
    with pytest.raises(ValidationError):
        build_mixed(SymmetricMixedParams([0, 0, 0.3], np.zeros((3, 3))))
    with pytest.raises(ValidationError):
        SymmetricMixedParams(np.zeros(3), [[0, 1, 0], [0, 0, 0], [0, 0, 0]])


def test_random_states_are_seeded():
    assert np.array_equal(random_pure(1, 7), random_pure(1, 7))
    rho = random_mixed_symmetric(11)
    check_density(rho)
    assert not is_pure(rho)
    assert is_pure(random_mixed_symmetric(11, k=1))


def test_validation():
    with pytest.raises(ValidationError):
        check_ket([1, 1])
    with pytest.raises(ValidationError):
        check_density(np.diag([1.5, -0.5]))


def test_json_round_trip(tmp_path):
    psi = random_pure(Fraction(3, 2), 3)
    spec = StateSpec("ket", 1.5, psi)
    path = tmp_path / "psi.json"
    save_state(spec, path)
    back = load_state(path)
    assert np.allclose(back.data, psi)
    dm = state_from_dict({"kind": "density", "spin": 0.5, "data": [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]})
    assert np.allclose(dm.density(), np.eye(2) / 2)
    stars = state_from_dict({"kind": "constellation", "spin": 1, "data": [[math.pi / 2, 0], [math.pi / 2, math.pi]]})
    assert fidelity(stars.data, np.array([1, 0, -1]) / math.sqrt(2)) == pytest.approx(1.0)
    for bad in ({"kind": "ket"}, {"kind": "nope", "spin": 1, "data": []}, {"kind": "ket", "spin": 1, "data": [1, 0]}):
        with pytest.raises(ValidationError):
            state_from_dict(bad)
    (tmp_path / "bad.json").write_text("{")
    with pytest.raises(ValidationError):
        load_state(tmp_path / "bad.json")
