"""Bures geometry of full-rank density matrices.

Two independent ways of evaluating the metric are provided:

* the eigenbasis solver: with ``rho = U diag(l) U^dag``, the hermitian ``G``
  solving ``X = rho G + G rho`` has ``G_ij = X_ij / (l_i + l_j)`` in that basis;
* the Dittmann polynomial inverse (dimension 4 only), which writes
  ``R^{-1}`` for ``R = rho (x) I + I (x) rho^T`` as a polynomial in ``rho``
  built from its characteristic polynomial.

Neither regularizes: a state whose smallest eigenvalue is below ``EPS_POS``
raises :class:`DegenerateStateError`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DegenerateStateError, ValidationError
from .matrix_kernel import as_matrix, check_hermitian, commutator, half_trace_sq, unvec, vec

EPS_POS = 1e-9


def _spectrum(rho, eps_pos: float) -> tuple[np.ndarray, np.ndarray]:
    w, u = np.linalg.eigh(check_hermitian(rho, atol=1e-10))
    if w[0] <= eps_pos:
        raise DegenerateStateError(
            f"state is not safely positive (min eigenvalue {w[0]:.3e} <= {eps_pos:g})",
            min_eigenvalue=float(w[0]),
        )
    return w, u


@dataclass(frozen=True)
class GOperator:
    base: np.ndarray
    matrix: np.ndarray

    def residual(self, x) -> float:
        g = self.matrix
        return float(np.abs(self.base @ g + g @ self.base - np.asarray(x)).max())


def solve_G(rho, x, eps_pos: float = EPS_POS) -> GOperator:
    """Hermitian ``G`` with ``rho G + G rho = X``."""
    rho = as_matrix(rho)
    x = as_matrix(x)
    if x.shape != rho.shape:
        raise ValidationError(f"tangent {x.shape} does not match state {rho.shape}")
    w, u = _spectrum(rho, eps_pos)
    xt = u.conj().T @ x @ u
    gt = xt / (w[:, None] + w[None, :])
    g = u @ gt @ u.conj().T
    return GOperator(rho, (g + g.conj().T) / 2)


def bures_inner(rho, x1, x2, eps_pos: float = EPS_POS) -> float:
    """``g(X1, X2) = Tr(G1 X2) / 2``."""
    g1 = solve_G(rho, x1, eps_pos).matrix
    return 0.5 * float(np.trace(g1 @ as_matrix(x2)).real)


def bures_sq(rho, x, eps_pos: float = EPS_POS) -> float:
    return bures_inner(rho, x, x, eps_pos)


def bures_inner_sym(rho, g1, g2) -> float:
    """``Tr(rho (G1 G2 + G2 G1)) / 2`` from already-solved G operators."""
    return 0.5 * float(np.trace(rho @ (g1 @ g2 + g2 @ g1)).real)


def superoperator_R(rho) -> np.ndarray:
    """``R = rho (x) I + I (x) rho^T`` acting on row-major ``vec``."""
    rho = as_matrix(rho)
    eye = np.eye(rho.shape[0])
    return np.kron(rho, eye) + np.kron(eye, rho.T)


def eigen_inverse_R(rho, eps_pos: float = EPS_POS) -> np.ndarray:
    """``R^{-1}`` assembled column by column from the eigenbasis solver."""
    rho = as_matrix(rho)
    n = rho.shape[0]
    w, u = _spectrum(rho, eps_pos)
    cols = []
    for k in range(n * n):
        e = np.zeros(n * n, dtype=complex)
        e[k] = 1.0
        xt = u.conj().T @ unvec(e) @ u
        cols.append(vec(u @ (xt / (w[:, None] + w[None, :])) @ u.conj().T))
    return np.array(cols).T


# --- Dittmann closed form (dimension 4) --------------------------------------

@dataclass(frozen=True)
class DittmannData:
    """Characteristic-polynomial coefficients ``k1..k4`` and coefficient matrix ``A``.

    ``det(lambda I - rho) = lambda^4 + k1 lambda^3 + k2 lambda^2 + k3 lambda + k4``
    and ``R^{-1} = sum_{ij} A[i, j] rho^i (x) (rho^T)^j`` (``i, j = 0..3``).
    """

    k: np.ndarray
    A: np.ndarray
    powers: tuple[np.ndarray, ...]

    def char_poly(self, lam):
        k1, k2, k3, k4 = self.k
        return lam**4 + k1 * lam**3 + k2 * lam**2 + k3 * lam + k4


def char_poly_coefficients(rho) -> np.ndarray:
    """``(k1, k2, k3, k4)`` of the monic characteristic polynomial of a 4x4 matrix."""
    rho = as_matrix(rho)
    p = [np.trace(np.linalg.matrix_power(rho, m)).real for m in range(1, 5)]
    # Newton's identities
    e1 = p[0]
    e2 = (e1 * p[0] - p[1]) / 2
    e3 = (e2 * p[0] - e1 * p[1] + p[2]) / 3
    e4 = (e3 * p[0] - e2 * p[1] + e1 * p[2] - p[3]) / 4
    return np.array([-e1, e2, -e3, e4])


def dittmann_data(rho, eps_pos: float = EPS_POS) -> DittmannData:
    rho = check_hermitian(rho, atol=1e-10)
    if rho.shape != (4, 4):
        raise ValidationError(f"the Dittmann inverse is implemented for dimension 4 only, got {rho.shape}")
    _spectrum(rho, eps_pos)
    k1, k2, k3, k4 = k = char_poly_coefficients(rho)
    K = np.array(
        [
            [0, 1, 0, 0],
            [0, 0, 1, 0],
            [0, 0, 0, 1],
            [-k4, -k3, -k2, -k1],
        ],
        dtype=float,
    )
    N = np.array(
        [
            [k3, k2, k1, 1],
            [-k2, -k1, -1, 0],
            [k1, 1, 0, 0],
            [-1, 0, 0, 0],
        ],
        dtype=float,
    )
    mk = -K.T
    eye = np.eye(4)
    mk2 = mk @ mk
    chi_mk = mk2 @ mk2 + k1 * mk2 @ mk + k2 * mk2 + k3 * mk + k4 * eye
    if abs(np.linalg.det(chi_mk)) < 1e-300:
        raise DegenerateStateError("chi(-K^T) is singular", min_eigenvalue=None)
    A = -np.linalg.solve(chi_mk, N)
    powers = tuple(np.linalg.matrix_power(rho, m) for m in range(4))
    return DittmannData(k, A, powers)


def dittmann_inverse(rho, eps_pos: float = EPS_POS) -> np.ndarray:
    """16x16 ``R^{-1}`` as ``sum_ij A_ij rho^(i-1) (x) (rho^T)^(j-1)``."""
    d = dittmann_data(rho, eps_pos)
    out = np.zeros((16, 16), dtype=complex)
    for i in range(4):
        for j in range(4):
            out += d.A[i, j] * np.kron(d.powers[i], d.powers[j].T)
    return out


def dittmann_bures_sq(rho, x, eps_pos: float = EPS_POS, data: DittmannData | None = None) -> float:
    """``g(X, X) = (1/2) sum_ij A_ij Tr(X rho^(i-1) X rho^(j-1))``."""
    d = data if data is not None else dittmann_data(rho, eps_pos)
    x = as_matrix(x)
    total = 0.0
    for i in range(4):
        xi = x @ d.powers[i]
        for j in range(4):
            total += d.A[i, j] * np.trace(xi @ x @ d.powers[j]).real
    return 0.5 * total


def metric_sq(rho, x, backend: str = "eigen", eps_pos: float = EPS_POS) -> float:
    if backend == "eigen":
        return bures_sq(rho, x, eps_pos)
    if backend == "dittmann":
        return dittmann_bures_sq(rho, x, eps_pos)
    raise ValidationError(f"unknown Bures backend {backend!r}")


# --- covariant acceleration and connection -----------------------------------

def mixed_acceleration(rho, h, eps_pos: float = EPS_POS) -> np.ndarray:
    """``a = rho'' - 2 G rho G + 2 Tr(G rho G) rho`` for ``rho' = -i[H, rho]``."""
    rho = as_matrix(rho)
    h = check_hermitian(h)
    v = -1j * commutator(h, rho)
    g = solve_G(rho, v, eps_pos).matrix
    grg = g @ rho @ g
    return -commutator(h, commutator(h, rho)) - 2 * grg + 2 * np.trace(grg).real * rho


def mixed_speed_sq(rho, h, eps_pos: float = EPS_POS) -> float:
    return bures_sq(rho, -1j * commutator(check_hermitian(h), as_matrix(rho)), eps_pos)


def mixed_acc_norm_sq(rho, h, eps_pos: float = EPS_POS) -> float:
    return bures_sq(rho, mixed_acceleration(rho, h, eps_pos), eps_pos)


def bures_christoffel(rho, d1: Sequence[np.ndarray], d2, eps_pos: float = EPS_POS) -> np.ndarray:
    """First-kind Christoffel symbols ``Gamma[b, m, n] = Gamma_{b m n}``.

    ``Gamma_{bmn} = Tr(G_b [rho_mn - G_m rho G_n - G_n rho G_m]) / 2`` where
    ``rho_m = G_m rho + rho G_m``.  ``d1[m]`` is ``rho_m`` and ``d2[m][n]`` is
    ``rho_mn`` at the chart point.
    """
    rho = as_matrix(rho)
    gs = [solve_G(rho, dm, eps_pos).matrix for dm in d1]
    k = len(gs)
    out = np.empty((k, k, k))
    for m in range(k):
        for n in range(m, k):
            bracket = np.asarray(d2[m][n]) - gs[m] @ rho @ gs[n] - gs[n] @ rho @ gs[m]
            for b in range(k):
                out[b, m, n] = out[b, n, m] = 0.5 * np.trace(gs[b] @ bracket).real
    return out


def bures_metric_tensor(rho, d1: Sequence[np.ndarray], eps_pos: float = EPS_POS) -> np.ndarray:
    gs = [solve_G(rho, dm, eps_pos).matrix for dm in d1]
    k = len(gs)
    out = np.empty((k, k))
    for a in range(k):
        for b in range(a, k):
            out[a, b] = out[b, a] = 0.5 * np.trace(gs[a] @ np.asarray(d1[b])).real
    return out


def chart_derivatives(
    family: Callable[[np.ndarray], np.ndarray], mu, step: float = 1e-4
) -> tuple[np.ndarray, list[np.ndarray], list[list[np.ndarray]]]:
    """``rho``, first and second partial derivatives of a chart by central differences."""
    mu = np.asarray(mu, dtype=float)
    k = mu.size
    rho0 = np.asarray(family(mu), dtype=complex)
    eye = np.eye(k) * step
    plus = [np.asarray(family(mu + eye[i]), dtype=complex) for i in range(k)]
    minus = [np.asarray(family(mu - eye[i]), dtype=complex) for i in range(k)]
    d1 = [(plus[i] - minus[i]) / (2 * step) for i in range(k)]
    d2 = [[None] * k for _ in range(k)]
    for i in range(k):
        d2[i][i] = (plus[i] - 2 * rho0 + minus[i]) / step**2
        for j in range(i + 1, k):
            pp = family(mu + eye[i] + eye[j])
            pm = family(mu + eye[i] - eye[j])
            mp = family(mu - eye[i] + eye[j])
            mm = family(mu - eye[i] - eye[j])
            d2[i][j] = d2[j][i] = (pp - pm - mp + mm) / (4 * step**2)
    return rho0, d1, d2


def raise_index(metric: np.ndarray, gamma_lower: np.ndarray) -> np.ndarray:
    """Second-kind symbols ``Gamma^a_{mn}`` from first-kind ``Gamma_{b mn}``."""
    return np.einsum("ab,bmn->amn", np.linalg.inv(metric), gamma_lower)


def tangent_norm_trace(x) -> float:
    """Flat trace-metric alternative ``Tr(X^2)/2`` used for sensitivity checks."""
    return half_trace_sq(x)


def christoffel_from_metric_fd(
    family: Callable[[np.ndarray], np.ndarray], mu, step: float = 1e-4, eps_pos: float = EPS_POS
) -> np.ndarray:
    """First-kind symbols ``(d_m g_bn + d_n g_bm - d_b g_mn) / 2`` by differencing the metric."""
    mu = np.asarray(mu, dtype=float)
    k = mu.size
    dg = np.empty((k, k, k))
    for i in range(k):
        e = np.zeros(k)
        e[i] = step
        rp, d1p, _ = chart_derivatives(family, mu + e, step)
        rm, d1m, _ = chart_derivatives(family, mu - e, step)
        dg[i] = (bures_metric_tensor(rp, d1p, eps_pos) - bures_metric_tensor(rm, d1m, eps_pos)) / (2 * step)
    return 0.5 * (np.einsum("mbn->bmn", dg) + np.einsum("nbm->bmn", dg) - dg)
