"""Dense complex-matrix helpers used by every other module.

Vectorization is row-major throughout: ``vec(A) = (A11, A12, ..., Ann)``.
With that convention ``kron(A, B.T) @ vec(C) == vec(A @ C @ B)``, which the
Bures super-operator ``R = rho (x) I + I (x) rho^T`` relies on.
"""

from __future__ import annotations

import numpy as np

from .errors import ValidationError

HERMITIAN_ATOL = 1e-12


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValidationError(f"expected a 2-d matrix, got shape {m.shape}")
    return m


def is_hermitian(h, atol: float = HERMITIAN_ATOL) -> bool:
    h = np.asarray(h)
    return h.ndim == 2 and h.shape[0] == h.shape[1] and np.allclose(h, h.conj().T, rtol=0, atol=atol)


def check_hermitian(h, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    """Return ``h`` as a complex array, rejecting non-hermitian input.

    Inputs are never symmetrized; an asymmetric matrix almost always means
    a bug upstream.
    """
    m = as_matrix(h)
    if m.shape[0] != m.shape[1]:
        raise ValidationError(f"hermitian matrix must be square, got {m.shape}")
    dev = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if dev > atol:
        raise ValidationError(f"matrix is not hermitian (max |H - H^dag| = {dev:.3e})")
    return m


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def vec(a) -> np.ndarray:
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise ValidationError(f"vec expects a square matrix, got {m.shape}")
    return m.reshape(-1).copy()


def unvec(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex).reshape(-1)
    n = int(round(np.sqrt(v.size)))
    if n * n != v.size:
        raise ValidationError(f"length {v.size} is not a perfect square")
    return v.reshape(n, n).copy()


def eigh(h) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvector columns of ``h``."""
    m = check_hermitian(h)
    w, v = np.linalg.eigh(m)
    return w, v


def partial_trace(rho, dims: tuple[int, int], keep: int) -> np.ndarray:
    """Reduced matrix of a bipartite operator.

    ``keep=1`` traces out the second factor, ``keep=2`` the first.
    """
    m = as_matrix(rho)
    d1, d2 = (int(d) for d in dims)
    if m.shape != (d1 * d2, d1 * d2):
        raise ValidationError(f"matrix of shape {m.shape} does not match dims {dims}")
    t = m.reshape(d1, d2, d1, d2)
    if keep == 1:
        return np.einsum("ikjk->ij", t)
    if keep == 2:
        return np.einsum("kikj->ij", t)
    raise ValidationError(f"keep must be 1 or 2, got {keep!r}")


def partial_transpose(rho, dims: tuple[int, int], subsystem: int = 1) -> np.ndarray:
    m = as_matrix(rho)
    d1, d2 = dims
    t = m.reshape(d1, d2, d1, d2)
    if subsystem == 1:
        t = t.transpose(2, 1, 0, 3)
    elif subsystem == 2:
        t = t.transpose(0, 3, 2, 1)
    else:
        raise ValidationError(f"subsystem must be 1 or 2, got {subsystem!r}")
    return t.reshape(d1 * d2, d1 * d2)


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt product ``Tr(A^dag B) / 2``."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ValidationError(f"shape mismatch {a.shape} vs {b.shape}")
    return 0.5 * np.vdot(a, b)


def hs_metric(a, b) -> float:
    """Real Hilbert-Schmidt metric ``Tr(A^dag B + B A^dag) / 2``."""
    return float(2.0 * hs_inner(a, b).real)


def commutator(a, b) -> np.ndarray:
    return a @ b - b @ a


def half_trace_sq(x) -> float:
    """Squared norm ``Tr(X^2) / 2`` of a hermitian matrix (no hermiticity check)."""
    x = np.asarray(x)
    return 0.5 * float(np.real(np.vdot(x.conj().T, x)))


def psd_sqrt(h, clamp_tol: float = 1e-12) -> np.ndarray:
    """Square root of a positive semidefinite matrix.

    Eigenvalues in ``[-clamp_tol, 0)`` are roundoff and get clamped to zero;
    anything more negative is rejected.
    """
    w, v = np.linalg.eigh(check_hermitian(h, atol=1e-10))
    if w.min() < -clamp_tol:
        raise ValidationError(f"matrix is not positive semidefinite (min eigenvalue {w.min():.3e})")
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T
