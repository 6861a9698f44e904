import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinkin import rotational_averages as ra
from spinkin.errors import ValidationError
from spinkin.spin_algebra import multipole_vector
from spinkin.states import (
    SYMMETRIC_ISOMETRY,
    SymmetricMixedParams,
    build_mixed,
    coherent_state,
    collective_generators,
    ket_to_dm,
    random_mixed_symmetric,
    random_pure,
)

SPINS = [Fraction(n, 2) for n in range(1, 7)]


def test_monomial_sphere_averages():
    assert ra.monomial_sphere_average((4, 0, 0)) == Fraction(1, 5)
    assert ra.monomial_sphere_average((2, 2, 0)) == Fraction(1, 15)
    assert ra.monomial_sphere_average((2, 0, 0)) == Fraction(1, 3)
    assert ra.monomial_sphere_average((3, 1, 0)) == 0
    assert ra.monomial_sphere_average((2, 2, 2)) == Fraction(1, 105)
    m = ra.quartic_moment_tensor()
    assert m[0, 0, 0, 0] == pytest.approx(0.2)
    assert m[0, 0, 1, 1] == pytest.approx(1 / 15)


def test_design_points():
    assert ra.DESIGN_22.shape == (6, 3)
    assert np.allclose(np.linalg.norm(ra.DESIGN_22, axis=1), 1)
    rot = ra.random_rotation(0)
    assert np.allclose(rot @ rot.T, np.eye(3))
    assert np.linalg.det(rot) == pytest.approx(1.0)


@pytest.mark.parametrize("s", SPINS)
def test_lambda_routes_agree(s):
    closed, appendix = ra.lambda_coefficients(s), ra.lambda_coefficients(s, "appendix")
    assert np.allclose(closed.values, appendix.values, atol=1e-11 * max(1, abs(closed[5])))
    with pytest.raises(IndexError):
        closed[0]


@given(st.sampled_from(SPINS[:5]), st.integers(0, 2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_acceleration_routes_agree(s, seed):
    psi = random_pure(s, seed)
    exact = ra.total_acceleration(psi, s, "exact")
    assert ra.total_acceleration(psi, s, "design") == pytest.approx(exact, abs=1e-10)
    assert ra.total_acceleration(psi, s, "closed") == pytest.approx(exact, abs=1e-10)
    assert ra.total_acceleration(psi, s, "appendix") == pytest.approx(exact, abs=1e-10)
    assert ra.total_acceleration_mixed(psi) == pytest.approx(exact, abs=1e-10)


@pytest.mark.parametrize("s", SPINS)
def test_coherent_acceleration(s):
    routes = [ra.total_acceleration(coherent_state(s, (1, 1, 0)), s, r) for r in ("exact", "design", "closed")]
    assert routes == pytest.approx([ra.coherent_acceleration(s)] * 3, abs=1e-12)


def test_printed_coherent_formula_only_agrees_at_spin_one():
    assert ra.coherent_acceleration_printed(1) == pytest.approx(ra.coherent_acceleration(1))
    assert ra.coherent_acceleration_printed(Fraction(1, 2)) == pytest.approx(-1 / 45)
    assert ra.coherent_acceleration_printed(Fraction(3, 2)) != pytest.approx(ra.coherent_acceleration(Fraction(3, 2)))


def test_spin1_curve_parametrizations():
    for a in np.linspace(0.01, np.pi / 2, 7):
        big_a = math.atan(math.tan(a / 2) ** 2)
        assert ra.spin1_case_A(big_a) == pytest.approx(ra.spin1_two_star(a), abs=1e-12)


def test_anticoherent_constant_acceleration():
    # spin-2 tetrahedral state: vanishing dipole and quadrupole, so the total
    # acceleration is lambda_1 and the total variance is maximal
    s = Fraction(2)
    tetra = np.array([math.sqrt(1 / 3), 0, 0, math.sqrt(2 / 3), 0], dtype=complex)
    assert np.allclose(multipole_vector(tetra, s, 1), 0, atol=1e-14)
    assert np.allclose(multipole_vector(tetra, s, 2), 0, atol=1e-14)
    assert ra.total_acceleration(tetra, s, "exact") == pytest.approx(ra.lambda_coefficients(s)[1])
    assert ra.total_variance_pure(tetra) == pytest.approx(float(s * (s + 1)))


def test_total_variance_extremes():
    for s in SPINS:
        assert ra.total_variance_pure(coherent_state(s)) == pytest.approx(float(s))


def test_symmetric_two_qubit_identities():
    plus = coherent_state(Fraction(1, 2), (1, 0, 0))
    rho = ket_to_dm(np.kron(plus, plus))
    assert ra.total_variance(rho, collective_generators()) == pytest.approx(1.0)
    assert ra.reduced_total_variances(rho) == pytest.approx((0.5, 0.5))
    assert ra.sum_identity_check(np.kron(plus, plus)) == pytest.approx(2.0)
    assert ra.total_speed_excess(rho) == pytest.approx(0.0, abs=1e-12)


def test_spin1_and_embedded_variance_agree():
    psi = random_pure(1, 3)
    d3 = ra.total_variance_pure(psi)
    d4 = ra.total_variance(ket_to_dm(SYMMETRIC_ISOMETRY @ psi), collective_generators())
    assert d4 == pytest.approx(d3)


def test_mixed_n_state_variance_and_excess():
    for r in (0.05, 0.1, 0.15, 0.2):
        rho = build_mixed(SymmetricMixedParams([r, 0, 0], np.zeros((3, 3))))
        d = ra.total_variance_mixed(rho)
        assert d == pytest.approx(ra.total_variance_mixed_n(r), abs=1e-12)
        assert ra.total_variance_mixed_dittmann(rho) == pytest.approx(d, abs=1e-10)
        d1, d2 = ra.reduced_total_variances(rho)
        assert d1 == pytest.approx(2 * r * r) and d2 == pytest.approx(2 * r * r)
        # the printed excess is D - D1 - D2, three times the axis average
        assert d - d1 - d2 == pytest.approx(ra.speed_excess_mixed_n(r), abs=1e-12)
        assert 3 * ra.total_speed_excess(rho) == pytest.approx(ra.speed_excess_mixed_n(r), abs=1e-12)


def test_mixed_total_acceleration_design_matches_rotated_design():
    rho3 = random_mixed_symmetric(5)
    base = ra.total_acceleration_mixed(rho3)
    rotated = ra.total_acceleration_mixed(rho3, points=ra.DESIGN_22 @ ra.random_rotation(1).T)
    assert rotated == pytest.approx(base, rel=1e-9)


def test_speed_excess_requires_two_qubits():
    with pytest.raises(ValidationError):
        ra.speed_excess(np.eye(3) / 3, (0, 0, 1))
    with pytest.raises(ValidationError):
        ra.total_acceleration(coherent_state(1), 1, "bogus")
    with pytest.raises(ValidationError):
        ra.total_acceleration(np.eye(3) / 3, 1, "exact")
