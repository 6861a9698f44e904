"""Pure-state kinematics under the Fubini-Study metric.

Norms follow ``|X|^2 = Tr(X^2) / 2`` for hermitian tangent matrices.  The
physics-facing functions take a density matrix and a Hamiltonian; the chart
functions (``fs_metric_chart`` and friends) exist only to cross-check the
matrix picture against the coordinate formulas of the U0 chart.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .matrix_kernel import as_matrix, check_hermitian, commutator, half_trace_sq
from .states import ket_to_dm

TANGENT_ATOL = 1e-10


def _as_dm(rho) -> np.ndarray:
    a = np.asarray(rho, dtype=complex)
    return ket_to_dm(a) if a.ndim == 1 else as_matrix(a)


def _pair(rho, h) -> tuple[np.ndarray, np.ndarray]:
    rho = _as_dm(rho)
    h = check_hermitian(h)
    if rho.shape != h.shape:
        raise ValidationError(f"state is {rho.shape} but Hamiltonian is {h.shape}")
    return rho, h


@dataclass(frozen=True)
class HamiltonianMoments:
    h1: float
    h2: float
    h3: float
    h4: float

    @classmethod
    def of(cls, rho, h) -> "HamiltonianMoments":
        rho, h = _pair(rho, h)
        hm = np.eye(h.shape[0], dtype=complex)
        out = []
        for _ in range(4):
            hm = hm @ h
            out.append(float(np.trace(rho @ hm).real))
        return cls(*out)


def velocity(rho, h) -> np.ndarray:
    """``v = -i [H, rho]``."""
    rho, h = _pair(rho, h)
    return -1j * commutator(h, rho)


def second_derivative(rho, h) -> np.ndarray:
    """``rho'' = -[H, [H, rho]]`` for Schrodinger evolution."""
    rho, h = _pair(rho, h)
    return -commutator(h, commutator(h, rho))


def speed_sq(rho, h) -> float:
    """``|v|^2 = Tr(v^2)/2``; for pure states this is the variance of ``H``."""
    return half_trace_sq(velocity(rho, h))


def speed_sq_variance(rho, h) -> float:
    m = HamiltonianMoments.of(rho, h)
    return m.h2 - m.h1**2


def acceleration(rho, h) -> np.ndarray:
    """Covariant acceleration: ``rho'' `` projected onto the tangent space at a pure ``rho``."""
    rho, h = _pair(rho, h)
    dd = second_derivative(rho, h)
    comp = np.eye(rho.shape[0]) - rho
    return rho @ dd @ comp + comp @ dd @ rho


def acc_norm_sq(rho, h) -> float:
    return half_trace_sq(acceleration(rho, h))


def acc_norm_sq_closed(rho, h) -> float:
    """``h4 - 4 h3 h1 - h2^2 + 8 h2 h1^2 - 4 h1^4`` with ``h_m = Tr(rho H^m)``."""
    m = HamiltonianMoments.of(rho, h)
    return m.h4 - 4 * m.h3 * m.h1 - m.h2**2 + 8 * m.h2 * m.h1**2 - 4 * m.h1**4


def is_tangent(rho, x, atol: float = TANGENT_ATOL) -> bool:
    """Hermitian, traceless and ``rho x + x rho = x``."""
    rho, x = _as_dm(rho), as_matrix(x)
    return (
        np.allclose(x, x.conj().T, rtol=0, atol=atol)
        and abs(np.trace(x)) <= atol
        and np.allclose(rho @ x + x @ rho, x, rtol=0, atol=atol)
    )


# --- U0 chart ---------------------------------------------------------------

def chart_point(psi) -> np.ndarray:
    """Coordinates ``z^i = psi^i / psi^0``; requires ``psi^0 != 0``."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if abs(psi[0]) < 1e-14:
        raise ValidationError("state lies outside the U0 chart (psi^0 = 0)")
    return psi[1:] / psi[0]


def chart_density(z) -> np.ndarray:
    zmu = np.concatenate([[1.0 + 0j], np.asarray(z, dtype=complex)])
    delta = 1.0 + np.vdot(zmu[1:], zmu[1:]).real
    return np.outer(zmu, zmu.conj()) / delta


def _delta(z) -> float:
    z = np.asarray(z, dtype=complex)
    return 1.0 + float(np.vdot(z, z).real)


def fs_metric_chart(z) -> tuple[np.ndarray, np.ndarray]:
    """Hermitian components ``g[a, b] = g_{a bbar}`` and inverse ``ginv[a, b] = g^{a bbar}``.

    ``g_{a bbar} g^{c bbar} = delta_a^c``, and a real tangent vector with
    holomorphic components ``zdot`` has squared length ``2 Re(zdot^T g conj(zdot))``.
    """
    z = np.asarray(z, dtype=complex)
    w = z.conj()
    d = _delta(z)
    n = z.size
    g = 0.5 * (d * np.eye(n) - np.outer(w, z)) / d**2
    ginv = 2.0 * d * (np.eye(n) + np.outer(z, w))
    return g, ginv


def fs_christoffel(z) -> tuple[np.ndarray, np.ndarray]:
    """``gamma[c, a, b] = Gamma^c_{ab}`` and its conjugate-index partner ``Gamma^cbar_{abar bbar}``."""
    z = np.asarray(z, dtype=complex)
    w = z.conj()
    d = _delta(z)
    eye = np.eye(z.size)
    gam = -(np.einsum("cb,a->cab", eye, w) + np.einsum("ca,b->cab", eye, w)) / d
    gam_bar = -(np.einsum("cb,a->cab", eye, z) + np.einsum("ca,b->cab", eye, z)) / d
    return gam, gam_bar


def fs_riemann(z) -> np.ndarray:
    """``R[a, b, c, d] = R_{a bbar c dbar} = (g_{a bbar} g_{c dbar} + g_{a dbar} g_{c bbar}) / 2``."""
    g, _ = fs_metric_chart(z)
    return 0.5 * (np.einsum("ab,cd->abcd", g, g) + np.einsum("ad,cb->abcd", g, g))


def fs_riemann_from_metric(z, step: float = 1e-4) -> np.ndarray:
    """Curvature of the chart metric itself, by central differences.

    Uses the Kahler form ``R_{a bbar c dbar} = -d_c d_dbar g_{a bbar}
    + g^{p qbar} (d_c g_{a qbar}) (d_dbar g_{p bbar})`` with Wirtinger
    derivatives.  With the metric normalization of :func:`fs_metric_chart`
    this is four times :func:`fs_riemann`.
    """
    z = np.asarray(z, dtype=complex)
    n = z.size
    gfun = lambda p: fs_metric_chart(p)[0]  # noqa: E731
    eye = np.eye(n)

    def d_re(f, p, k):
        return (f(p + step * eye[k]) - f(p - step * eye[k])) / (2 * step)

    def d_im(f, p, k):
        return (f(p + 1j * step * eye[k]) - f(p - 1j * step * eye[k])) / (2 * step)

    dz = [0.5 * (d_re(gfun, z, k) - 1j * d_im(gfun, z, k)) for k in range(n)]
    dzb = [0.5 * (d_re(gfun, z, k) + 1j * d_im(gfun, z, k)) for k in range(n)]
    _, ginv = fs_metric_chart(z)
    out = np.empty((n, n, n, n), dtype=complex)
    for c in range(n):
        for d in range(n):
            # nested Wirtinger differences: d_c of d_dbar g
            f_dbar = lambda p, d=d: 0.5 * (d_re(gfun, p, d) + 1j * d_im(gfun, p, d))  # noqa: E731
            ddg = 0.5 * (d_re(f_dbar, z, c) - 1j * d_im(f_dbar, z, c))
            quad = np.einsum("pq,aq,pb->ab", ginv, dz[c], dzb[d])
            out[:, :, c, d] = -ddg + quad
    return out


def holomorphic_sectional_curvature(riemann: np.ndarray, g: np.ndarray, xi) -> float:
    """``R(xi, xibar, xi, xibar) / g(xi, xibar)^2`` for a holomorphic direction ``xi``."""
    xi = np.asarray(xi, dtype=complex)
    num = np.einsum("abcd,a,b,c,d->", riemann, xi, xi.conj(), xi, xi.conj())
    den = np.einsum("ab,a,b->", g, xi, xi.conj())
    return float((num / den**2).real)
