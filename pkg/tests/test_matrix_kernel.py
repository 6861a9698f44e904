import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinkin.errors import ValidationError
from spinkin.matrix_kernel import (
    check_hermitian,
    commutator,
    half_trace_sq,
    hs_inner,
    is_hermitian,
    kron,
    partial_trace,
    partial_transpose,
    psd_sqrt,
    unvec,
    vec,
)

seeds = st.integers(0, 2**32 - 1)


def _cmat(rng, n, m=None):
    m = n if m is None else m
    return rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))


@given(seeds)
@settings(max_examples=50, deadline=None)
def test_row_major_vec_identity(seed):
    rng = np.random.default_rng(seed)
    a, b, c = _cmat(rng, 3), _cmat(rng, 3), _cmat(rng, 3)
    assert np.allclose(kron(a, b.T) @ vec(c), vec(a @ c @ b), atol=1e-12)
    assert np.allclose(unvec(vec(c)), c)


@given(seeds)
@settings(max_examples=50, deadline=None)
def test_partial_trace_of_product(seed):
    rng = np.random.default_rng(seed)
    a, b = _cmat(rng, 2), _cmat(rng, 3)
    ab = np.kron(a, b)
    assert np.allclose(partial_trace(ab, (2, 3), keep=1), a * np.trace(b))
    assert np.allclose(partial_trace(ab, (2, 3), keep=2), b * np.trace(a))


def test_partial_transpose_of_product():
    rng = np.random.default_rng(0)
    a, b = _cmat(rng, 2), _cmat(rng, 2)
    assert np.allclose(partial_transpose(np.kron(a, b), (2, 2), 1), np.kron(a.T, b))
    assert np.allclose(partial_transpose(np.kron(a, b), (2, 2), 2), np.kron(a, b.T))


def test_hermitian_checks():
    h = np.array([[1, 1j], [-1j, 2]])
    assert is_hermitian(h)
    check_hermitian(h)
    with pytest.raises(ValidationError):
        check_hermitian(np.array([[0, 1], [0, 0]]))


def test_psd_sqrt_squares_back():
    rng = np.random.default_rng(1)
    g = _cmat(rng, 4)
    p = g @ g.conj().T
    r = psd_sqrt(p)
    assert np.allclose(r @ r, p, atol=1e-12)
    assert np.allclose(r, r.conj().T)


def test_inner_products_and_commutator():
    x = np.diag([1.0, -1.0])
    assert half_trace_sq(x) == pytest.approx(1.0)
    assert hs_inner(x, x) == pytest.approx(1.0)
    sx = np.array([[0, 1], [1, 0]])
    sy = np.array([[0, -1j], [1j, 0]])
    assert np.allclose(commutator(sx, sy), 2j * np.diag([1, -1]))
