from fractions import Fraction

import numpy as np
import pytest
from sympy import Rational
from sympy.physics.wigner import clebsch_gordan, wigner_6j

from spinkin.errors import ValidationError
from spinkin.spin_algebra import (
    axis_hamiltonian,
    axis_to_multipole,
    cg,
    chi,
    m_values,
    multipole_normalization,
    six_j,
    spin_dim,
    spin_matrices,
    tensor_operator,
)

SPINS = [Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(5, 2)]


@pytest.mark.parametrize("s", SPINS)
def test_su2_algebra(s):
    sx, sy, sz = spin_matrices(s)
    assert np.allclose(sx @ sy - sy @ sx, 1j * sz)
    casimir = sx @ sx + sy @ sy + sz @ sz
    assert np.allclose(casimir, float(s * (s + 1)) * np.eye(spin_dim(s)))
    assert np.allclose(np.diag(sz), m_values(s))


def test_axis_hamiltonian():
    sx, _, sz = spin_matrices(1)
    n = np.array([0.6, 0.0, 0.8])
    assert np.allclose(axis_hamiltonian(n, 1), 0.6 * sx + 0.8 * sz)


def _half(x):
    return Rational(int(2 * x), 2)


def test_cg_against_sympy():
    for j1 in (Fraction(1, 2), Fraction(1), Fraction(3, 2)):
        for j2 in (Fraction(1), Fraction(2)):
            for J in np.arange(abs(j1 - j2), j1 + j2 + 1):
                J = Fraction(J)
                for m1 in np.arange(-j1, j1 + 1):
                    for m2 in np.arange(-j2, j2 + 1):
                        M = Fraction(m1) + Fraction(m2)
                        if abs(M) > J:
                            continue
                        want = float(clebsch_gordan(_half(j1), _half(j2), _half(J), _half(m1), _half(m2), _half(M)))
                        assert cg(j1, Fraction(m1), j2, Fraction(m2), J, M) == pytest.approx(want, abs=1e-14)


def test_six_j_against_sympy():
    rng = np.random.default_rng(3)
    for _ in range(200):
        args = [Fraction(int(x), 2) for x in rng.integers(0, 7, size=6)]
        try:
            want = float(wigner_6j(*[_half(a) for a in args]))
        except ValueError:
            want = 0.0  # sympy rejects non-triangular triads; the symbol vanishes there
        assert six_j(*args) == pytest.approx(want, abs=1e-14)


@pytest.mark.parametrize("s", [Fraction(1), Fraction(3, 2), Fraction(2)])
def test_tensor_product_rule(s):
    # T_{l1 m1} T_{l2 m2} = sum_l chi <l1 m1; l2 m2|l m> T_{lm}
    for l1, m1, l2, m2 in [(1, 0, 1, 1), (1, -1, 2, 1), (2, 2, 1, -1)]:
        if max(l1, l2) > 2 * s:
            continue
        lhs = tensor_operator(s, l1, m1) @ tensor_operator(s, l2, m2)
        rhs = np.zeros_like(lhs)
        for l in range(abs(l1 - l2), min(l1 + l2, int(2 * s)) + 1):
            if abs(m1 + m2) <= l:
                rhs += chi(l1, l2, l, s) * cg(l1, m1, l2, m2, l, m1 + m2) * tensor_operator(s, l, m1 + m2)
        assert np.allclose(lhs, rhs, atol=1e-13)


@pytest.mark.parametrize("s", SPINS)
def test_dipole_normalization_and_axis(s):
    a = multipole_normalization(s)
    sz = spin_matrices(s)[2]
    assert np.allclose(tensor_operator(s, 1, 0), a * sz)
    n = np.array([1.0, 2.0, -2.0]) / 3
    r = axis_to_multipole(n, s)
    h = sum(r[m] * tensor_operator(s, 1, m) for m in (1, 0, -1))
    assert np.allclose(h, axis_hamiltonian(n, s), atol=1e-13)


def test_tensor_operator_rejects_bad_indices():
    with pytest.raises(ValidationError):
        tensor_operator(Fraction(1, 2), 2, 0)
    with pytest.raises(ValidationError):
        tensor_operator(1, 1, 2)
