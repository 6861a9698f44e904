"""Two-qubit correlation and mixedness measures.

Entropies use the natural logarithm.  The geometric discord is returned in
the normalized form ``2 D_G`` so that a Bell state scores 1.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import ValidationError
from .matrix_kernel import partial_trace, partial_transpose
from .states import PAULI, bloch_decompose, check_density

SIGMA_YY = np.kron(PAULI[1], PAULI[1])
CLAMP_TOL = 1e-12


def _two_qubit(rho) -> np.ndarray:
    rho = check_density(rho)
    if rho.shape != (4, 4):
        raise ValidationError(f"expected a two-qubit density matrix, got shape {rho.shape}")
    return rho


def spin_flip(rho) -> np.ndarray:
    """``mu(rho) = (sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y)``."""
    return SIGMA_YY @ np.asarray(rho).conj() @ SIGMA_YY


def concurrence(rho, clamp_tol: float = CLAMP_TOL) -> float:
    """``max(0, l1 - l2 - l3 - l4)`` over eigenvalues of ``sqrt(sqrt(rho) mu(rho) sqrt(rho))``.

    The ``l_i`` are computed as singular values of ``W^T (sigma_y (x) sigma_y) W``
    with ``rho = W W^dag``; eigenvalues of ``rho`` below ``clamp_tol`` are
    dropped so that pure states carry no square-root roundoff.
    """
    rho = _two_qubit(rho)
    w, v = np.linalg.eigh(rho)
    keep = w > clamp_tol
    f = v[:, keep] * np.sqrt(w[keep])
    lam = np.zeros(4)
    sv = np.linalg.svd(f.T @ SIGMA_YY @ f, compute_uv=False)
    lam[: sv.size] = sv
    return max(0.0, float(lam[0] - lam[1:].sum()))


def _first_bloch(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    rho = np.outer(psi, psi.conj()) / np.vdot(psi, psi).real
    return bloch_decompose(rho).x


def concurrence_pure(psi) -> float:
    """Pure-state shortcut ``sqrt(2 (1 - Tr rho_1^2)) = sqrt(1 - |x|^2)``.

    ``x_i = Tr(rho sigma_i (x) I)`` is the Bloch vector of the first qubit.
    """
    x = _first_bloch(psi)
    return math.sqrt(max(0.0, 1 - float(x @ x)))


def concurrence_pure_printed(psi) -> float:
    """``sqrt(2 (1 - |x|^2))`` as printed; ``sqrt(2)`` times the concurrence."""
    x = _first_bloch(psi)
    return math.sqrt(max(0.0, 2 * (1 - float(x @ x))))


def negativity(rho) -> float:
    """``(|rho^{T_A}|_1 - 1) / 2``."""
    rho = _two_qubit(rho)
    pt = partial_transpose(rho, (2, 2), subsystem=1)
    return float((np.linalg.svd(pt, compute_uv=False).sum() - 1) / 2)


def von_neumann_entropy(rho) -> float:
    w = np.linalg.eigvalsh(check_density(rho))
    w = w[w > 1e-15]
    return float(-(w * np.log(w)).sum())


def linear_entropy(rho) -> float:
    """``2 (1 - Tr rho^2)``."""
    rho = check_density(rho)
    return 2.0 * (1.0 - float(np.vdot(rho, rho).real))


def geometric_discord(rho) -> float:
    """Normalized geometric discord ``2 D_G``, ``D_G = (|y y^T| + |T|^2 - k) / 4``.

    Norms are Frobenius; ``k`` is the largest eigenvalue of ``y y^T + T^T T``.
    """
    b = bloch_decompose(_two_qubit(rho))
    y, t = b.y, b.T
    yy = np.outer(y, y)
    k = float(np.linalg.eigvalsh(yy + t.T @ t).max())
    d = 0.25 * (np.linalg.norm(yy) + np.linalg.norm(t) ** 2 - k)
    return 2.0 * max(0.0, float(d))


@dataclass(frozen=True)
class MeasurePanel:
    concurrence: float
    negativity: float
    s_vn: float
    s_vn_reduced: float
    s_lin: float
    s_lin_reduced: float
    geo_discord: float

    @classmethod
    def of(cls, rho) -> "MeasurePanel":
        rho = _two_qubit(rho)
        r1 = partial_trace(rho, (2, 2), keep=1)
        return cls(
            concurrence=concurrence(rho),
            negativity=negativity(rho),
            s_vn=von_neumann_entropy(rho),
            s_vn_reduced=von_neumann_entropy(r1),
            s_lin=linear_entropy(rho),
            s_lin_reduced=linear_entropy(r1),
            geo_discord=geometric_discord(rho),
        )

    def as_dict(self) -> dict[str, float]:
        return asdict(self)
