"""Pure and mixed spin states: construction, conversion and sampling.

Majorana convention: a star at polar angle theta, azimuth phi stands for the
spin-1/2 coherent spinor ``(cos(theta/2), e^{i phi} sin(theta/2))``; a spin-s
state with 2s stars is the normalized symmetrization of their product.  Its
amplitude on ``|s, s-k>`` is ``e_k / sqrt(C(2s, k))``, where ``e_k`` is the
k-th coefficient of ``prod_i (cos(theta_i/2) + e^{i phi_i} sin(theta_i/2) x)``.
Stars at the south pole therefore need no special casing.
"""

from __future__ import annotations

import math
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ValidationError
from .matrix_kernel import as_matrix, check_hermitian
from .spin_algebra import doubled, spin_dim

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
I2 = np.eye(2, dtype=complex)

NORM_ATOL = 1e-12
TRACE_ATOL = 1e-12
PSD_ATOL = 1e-10
PURITY_ATOL = 1e-9


# --- kets and density matrices ----------------------------------------------

def normalize(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    nrm = np.linalg.norm(psi)
    if nrm == 0:
        raise ValidationError("cannot normalize the zero vector")
    return psi / nrm


def check_ket(psi, dim: int | None = None) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if dim is not None and psi.size != dim:
        raise ValidationError(f"ket has dimension {psi.size}, expected {dim}")
    if abs(np.linalg.norm(psi) - 1.0) > NORM_ATOL:
        raise ValidationError(f"ket is not normalized (norm {np.linalg.norm(psi):.15g})")
    return psi


def ket_to_dm(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    return np.outer(psi, psi.conj())


def check_density(rho) -> np.ndarray:
    """Validate hermiticity, unit trace and positivity; return the array."""
    m = check_hermitian(rho)
    tr = np.trace(m).real
    if abs(tr - 1.0) > TRACE_ATOL:
        raise ValidationError(f"density matrix trace is {tr:.15g}, not 1")
    wmin = np.linalg.eigvalsh(m).min()
    if wmin < -PSD_ATOL:
        raise ValidationError(f"density matrix has negative eigenvalue {wmin:.3e}")
    return m


def purity(rho) -> float:
    rho = np.asarray(rho)
    return float(np.real(np.vdot(rho, rho)))


def is_pure(rho, atol: float = PURITY_ATOL) -> bool:
    return abs(purity(rho) - 1.0) <= atol


def pure_ket(rho) -> np.ndarray:
    """Dominant eigenvector of a (numerically) pure density matrix."""
    w, v = np.linalg.eigh(as_matrix(rho))
    return v[:, -1]


# --- Majorana constellations --------------------------------------------------

def _as_stars(stars) -> np.ndarray:
    stars = np.asarray(stars, dtype=float)
    if stars.ndim != 2 or stars.shape[1] != 3:
        raise ValidationError(f"constellation must be an (N, 3) array of unit vectors, got shape {stars.shape}")
    if stars.shape[0] == 0:
        raise ValidationError("constellation is empty")
    dev = np.abs(np.linalg.norm(stars, axis=1) - 1.0).max()
    if dev > 1e-12:
        raise ValidationError(f"stars must be unit vectors (max norm deviation {dev:.3e})")
    return stars


def star_from_angles(theta: float, phi: float) -> np.ndarray:
    return np.array([math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)])


def constellation_to_state(stars) -> np.ndarray:
    """Normalized spin-s ket (s = N/2) whose Majorana stars are ``stars``."""
    stars = _as_stars(stars)
    n = stars.shape[0]
    poly = np.array([1.0 + 0j])
    for x, y, z in stars:
        theta = math.acos(max(-1.0, min(1.0, z)))
        phi = math.atan2(y, x)
        factor = np.array([math.cos(theta / 2), np.exp(1j * phi) * math.sin(theta / 2)])
        poly = np.convolve(poly, factor)
    amps = poly / np.array([math.sqrt(math.comb(n, k)) for k in range(n + 1)])
    return normalize(amps)


def state_to_constellation(psi) -> np.ndarray:
    """Majorana stars of a ket, as an ``(2s, 3)`` array (order unspecified).

    Roots of ``sum_k (-1)^k sqrt(C(n,k)) a_k z^(n-k)`` are the stereographic
    points ``tan(theta/2) e^{i phi}``; a drop in degree means roots at
    infinity, i.e. stars at the south pole.
    """
    psi = normalize(psi)
    n = psi.size - 1
    if n == 0:
        raise ValidationError("spin-0 states have no stars")
    coeffs = np.array([(-1) ** k * psi[k] * math.sqrt(math.comb(n, k)) for k in range(n + 1)])
    scale = np.abs(coeffs).max()
    lead = 0
    while lead < n and abs(coeffs[lead]) <= 1e-14 * scale:
        lead += 1
    roots = np.roots(coeffs[lead:]) if lead < n else np.array([], dtype=complex)
    stars = [star_from_angles(2 * math.atan(abs(z)), math.atan2(z.imag, z.real)) for z in roots]
    stars += [np.array([0.0, 0.0, -1.0])] * lead
    return np.array(stars)


def constellation_from_pairwise_angles(angles, atol: float = 1e-12) -> np.ndarray:
    """Three stars with prescribed pairwise angles ``(alpha, beta, gamma)``.

    ``alpha`` separates stars 1-2, ``beta`` stars 1-3, ``gamma`` stars 2-3.
    Gauge: star 1 at +z, star 2 in the xz-plane with x >= 0, star 3 with
    y >= 0.
    """
    alpha, beta, gamma = (float(a) for a in angles)
    ca, cb, cg_ = math.cos(alpha), math.cos(beta), math.cos(gamma)
    gram = np.array([[1, ca, cb], [ca, 1, cg_], [cb, cg_, 1]])
    wmin = np.linalg.eigvalsh(gram).min()
    if wmin < -atol:
        raise ValidationError(
            f"angles {angles} are not realizable on the sphere (Gram eigenvalue {wmin:.3e})"
        )
    sa = math.sin(alpha)
    n1 = np.array([0.0, 0.0, 1.0])
    n2 = np.array([sa, 0.0, ca])
    if sa > 1e-12:
        x3 = (cg_ - ca * cb) / sa
    else:
        # stars 1 and 2 (anti)coincide; put star 3 in the xz-plane
        x3 = math.sin(beta)
    y3 = math.sqrt(max(0.0, 1.0 - x3 * x3 - cb * cb))
    n3 = np.array([x3, y3, cb])
    return np.array([n1, n2, n3 / np.linalg.norm(n3)])


def coherent_state(s, axis=(0.0, 0.0, 1.0)) -> np.ndarray:
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    n = doubled(s)
    return constellation_to_state(np.tile(axis, (n, 1)))


# --- two-qubit symmetric sector ---------------------------------------------

SYMMETRIC_ISOMETRY = np.array(
    [
        [1, 0, 0],
        [0, 1 / math.sqrt(2), 0],
        [0, 1 / math.sqrt(2), 0],
        [0, 0, 1],
    ],
    dtype=complex,
)
"""Columns: images of ``|1,1>, |1,0>, |1,-1>`` in the ``|++>, |+->, |-+>, |-->`` basis."""


def symmetric_embed(rho3) -> np.ndarray:
    """Spin-1 operator (3x3) or ket (3,) as its two-qubit symmetric image."""
    v = SYMMETRIC_ISOMETRY
    a = np.asarray(rho3, dtype=complex)
    if a.shape == (3,):
        return v @ a
    if a.shape != (3, 3):
        raise ValidationError(f"expected a spin-1 ket or 3x3 matrix, got shape {a.shape}")
    return v @ a @ v.conj().T


def symmetric_restrict(rho4) -> np.ndarray:
    """Inverse of :func:`symmetric_embed` on operators supported in the symmetric sector."""
    v = SYMMETRIC_ISOMETRY
    a = np.asarray(rho4, dtype=complex)
    if a.shape == (4,):
        return v.conj().T @ a
    return v.conj().T @ a @ v


def collective_generators() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Collective two-qubit spin ``(sigma_A (x) I + I (x) sigma_A) / 2``."""
    return tuple((np.kron(p, I2) + np.kron(I2, p)) / 2 for p in PAULI)


@dataclass(frozen=True)
class BlochDecomposition:
    x: np.ndarray
    y: np.ndarray
    T: np.ndarray

    def reconstruct(self) -> np.ndarray:
        rho = np.kron(I2, I2).astype(complex)
        for i in range(3):
            rho = rho + self.x[i] * np.kron(PAULI[i], I2) + self.y[i] * np.kron(I2, PAULI[i])
            for j in range(3):
                rho = rho + self.T[i, j] * np.kron(PAULI[i], PAULI[j])
        return rho / 4


def bloch_decompose(rho) -> BlochDecomposition:
    rho = as_matrix(rho)
    if rho.shape != (4, 4):
        raise ValidationError(f"expected a two-qubit (4x4) matrix, got {rho.shape}")
    x = np.array([np.trace(rho @ np.kron(p, I2)).real for p in PAULI])
    y = np.array([np.trace(rho @ np.kron(I2, p)).real for p in PAULI])
    t = np.array([[np.trace(rho @ np.kron(p, q)).real for q in PAULI] for p in PAULI])
    return BlochDecomposition(x, y, t)


@dataclass(frozen=True)
class SymmetricMixedParams:
    """Parameters of an exchange-symmetric two-qubit state.

    ``rho = I/4 + n.S + (1/4) sum_A t_AA sigma_A (x) sigma_A
    + (1/8) sum_{A<B} t_AB (sigma_A (x) sigma_B + sigma_B (x) sigma_A)``
    with ``S_A = (sigma_A (x) I + I (x) sigma_A)/2`` the collective spin.  The
    reduced state is then ``I/2 + n.sigma`` and the eigenvalues at ``t = 0``
    are ``1/4 - r, 1/4, 1/4, 1/4 + r``, so positivity needs ``|n| < 1/4``.
    """

    n: np.ndarray = field(default_factory=lambda: np.zeros(3))
    t: np.ndarray = field(default_factory=lambda: np.zeros((3, 3)))

    def __post_init__(self):
        n = np.asarray(self.n, dtype=float).reshape(3)
        t = np.asarray(self.t, dtype=float).reshape(3, 3)
        if not np.allclose(t, t.T, atol=1e-14):
            raise ValidationError("t must be symmetric")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "t", t)


def symmetric_mixed_matrix(params: SymmetricMixedParams) -> np.ndarray:
    """The operator of :class:`SymmetricMixedParams` without positivity checks."""
    sig = collective_generators()
    rho = np.eye(4, dtype=complex) / 4
    for a in range(3):
        rho = rho + params.n[a] * sig[a]
        rho = rho + 0.25 * params.t[a, a] * np.kron(PAULI[a], PAULI[a])
        for b in range(a + 1, 3):
            sab = np.kron(PAULI[a], PAULI[b]) + np.kron(PAULI[b], PAULI[a])
            rho = rho + 0.125 * params.t[a, b] * sab
    return rho


def build_mixed(params: SymmetricMixedParams) -> np.ndarray:
    rho = symmetric_mixed_matrix(params)
    wmin = np.linalg.eigvalsh(rho).min()
    if wmin < -PSD_ATOL:
        raise ValidationError(f"parameters give a non-positive state (min eigenvalue {wmin:.3e})")
    return rho


# --- random sampling ----------------------------------------------------------

def make_rng(seed) -> np.random.Generator:
    """A Generator from an int, a sequence of ints, or an existing Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_pure(s, seed) -> np.ndarray:
    """Haar-random ket of spin ``s``: normalized i.i.d. complex gaussians."""
    rng = make_rng(seed)
    d = spin_dim(s)
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return z / np.linalg.norm(z)


def random_mixed_symmetric(seed, k: int = 3) -> np.ndarray:
    """Spin-1 density matrix: flat-Dirichlet mixture of ``k`` Haar-random pure states."""
    if k < 1:
        raise ValidationError(f"component count must be >= 1, got {k}")
    rng = make_rng(seed)
    weights = rng.dirichlet(np.ones(k)) if k > 1 else np.ones(1)
    rho = np.zeros((3, 3), dtype=complex)
    for w in weights:
        psi = random_pure(1, rng)
        rho += w * np.outer(psi, psi.conj())
    return (rho + rho.conj().T) / 2


# --- JSON state files ---------------------------------------------------------

@dataclass(frozen=True)
class StateSpec:
    """A state as read from a file: ``ket`` or ``density`` data, plus its spin."""

    kind: str
    spin: float
    data: np.ndarray

    def density(self) -> np.ndarray:
        return ket_to_dm(self.data) if self.kind == "ket" else self.data


def _complex(entry) -> complex:
    if isinstance(entry, (int, float)):
        return complex(entry)
    if isinstance(entry, (list, tuple)) and len(entry) == 2:
        return complex(float(entry[0]), float(entry[1]))
    raise ValidationError(f"complex entries must be [re, im] pairs, got {entry!r}")


def state_from_dict(obj: dict) -> StateSpec:
    """Parse ``{"kind": ..., "spin": ..., "data": ...}``.

    Constellations are converted to kets, so ``kind`` is ``ket`` or
    ``density`` on the result.
    """
    try:
        kind, spin, data = obj["kind"], obj["spin"], obj["data"]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"state object needs kind, spin and data ({exc})") from None
    dim = spin_dim(spin)
    if kind == "ket":
        psi = np.array([_complex(e) for e in data])
        return StateSpec("ket", float(spin), check_ket(psi, dim))
    if kind == "density":
        rho = np.array([[_complex(e) for e in row] for row in data])
        if rho.shape != (dim, dim):
            raise ValidationError(f"density is {rho.shape}, spin {spin} needs {(dim, dim)}")
        return StateSpec("density", float(spin), check_density(rho))
    if kind == "constellation":
        stars = np.array([star_from_angles(float(t), float(p)) for t, p in data])
        if stars.shape[0] != dim - 1:
            raise ValidationError(f"spin {spin} needs {dim - 1} stars, got {stars.shape[0]}")
        return StateSpec("ket", float(spin), constellation_to_state(stars))
    raise ValidationError(f"unknown state kind {kind!r}")


def state_to_dict(state: StateSpec) -> dict:
    if state.kind == "ket":
        data = [[float(z.real), float(z.imag)] for z in state.data]
    else:
        data = [[[float(z.real), float(z.imag)] for z in row] for row in state.data]
    return {"kind": state.kind, "spin": state.spin, "data": data}


def load_state(path) -> StateSpec:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc})") from None
    return state_from_dict(obj)


def save_state(state: StateSpec, path) -> None:
    Path(path).write_text(json.dumps(state_to_dict(state), indent=1) + "\n")
