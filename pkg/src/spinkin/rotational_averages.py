"""Rotation-averaged kinematics: total variance, speed excess, total acceleration.

The total acceleration of a pure spin-``s`` state is available by three
independent routes which must agree:

* ``exact``: the quartic moment tensor of ``S`` contracted with the sphere
  moments ``<n_A n_B n_C n_D> = (d_AB d_CD + d_AC d_BD + d_AD d_BC) / 15``;
* ``design``: the mean of ``|a|^2`` over a six-point spherical (2,2)-design;
* ``closed``: the multipole formula with coefficients ``lambda_1..lambda_5``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np

from . import bures_geometry as bg
from . import fs_kinematics as fs
from .errors import ValidationError
from .matrix_kernel import as_matrix, commutator, half_trace_sq, partial_trace
from .spin_algebra import (
    axis_hamiltonian,
    cg,
    chi,
    doubled,
    multipole_normalization,
    multipole_vector,
    spin_matrices,
)
from .states import PAULI, collective_generators, is_pure, ket_to_dm

# --- helpers ------------------------------------------------------------------


def spin_of_dim(n: int) -> Fraction:
    return Fraction(n - 1, 2)


def _as_dm(state) -> np.ndarray:
    a = np.asarray(state, dtype=complex)
    return ket_to_dm(a / np.linalg.norm(a)) if a.ndim == 1 else as_matrix(a)


def _spin_for(rho: np.ndarray, s) -> Fraction:
    if s is None:
        return spin_of_dim(rho.shape[0])
    if doubled(s) + 1 != rho.shape[0]:
        raise ValidationError(f"spin {s} does not match a {rho.shape[0]}-dimensional state")
    return Fraction(doubled(s), 2)


def tangent_norm_sq(rho, x) -> float:
    """FS norm on pure states, Bures norm on positive mixed states.

    Bures reduces to FS on pure states, so this is one metric evaluated by the
    formula that is well defined at the given point.  Rank-deficient mixed
    states raise :class:`DegenerateStateError`.
    """
    rho = as_matrix(rho)
    if is_pure(rho):
        return half_trace_sq(x)
    return bg.bures_sq(rho, x)


def rotation_speed_sq(rho, generator) -> float:
    rho = as_matrix(rho)
    return tangent_norm_sq(rho, -1j * commutator(as_matrix(generator), rho))


# --- total variance and speeds ----------------------------------------------


def total_variance_pure(psi, s=None) -> float:
    """``s(s+1) - |<S>|^2``."""
    rho = _as_dm(psi)
    s = float(_spin_for(rho, s))
    mean = [np.trace(rho @ g).real for g in spin_matrices(s)]
    return s * (s + 1) - float(np.dot(mean, mean))


def total_variance(rho, generators: Sequence[np.ndarray] | None = None) -> float:
    """``sum_A |v_A|^2`` for ``v_A = -i[S_A, rho]``; pure states use FS, mixed use Bures."""
    rho = _as_dm(rho)
    gens = spin_matrices(spin_of_dim(rho.shape[0])) if generators is None else generators
    return sum(rotation_speed_sq(rho, g) for g in gens)


def avg_speed_sq(rho, generators: Sequence[np.ndarray] | None = None) -> float:
    """Axis average of ``|v|^2``: one third of :func:`total_variance`."""
    return total_variance(rho, generators) / 3.0


def total_variance_mixed(rho) -> float:
    """Total variance of a two-qubit state under collective rotations, Bures norm."""
    rho = as_matrix(rho)
    if rho.shape != (4, 4):
        raise ValidationError(f"expected a two-qubit state, got shape {rho.shape}")
    return sum(bg.bures_sq(rho, -1j * commutator(g, rho)) for g in collective_generators())


def total_variance_mixed_dittmann(rho) -> float:
    rho = as_matrix(rho)
    data = bg.dittmann_data(rho)
    return sum(
        bg.dittmann_bures_sq(rho, -1j * commutator(g, rho), data=data) for g in collective_generators()
    )


QUBIT_GENERATORS = tuple(p / 2 for p in PAULI)


@dataclass(frozen=True)
class SpeedExcess:
    total: float
    reduced1: float
    reduced2: float

    @property
    def excess(self) -> float:
        return self.total - self.reduced1 - self.reduced2


def speed_excess(rho, axis) -> SpeedExcess:
    """``F = |v|^2 - |v_1|^2 - |v_2|^2`` for the collective rotation about ``axis``."""
    rho = _as_dm(rho)
    if rho.shape != (4, 4):
        raise ValidationError(f"expected a two-qubit state, got shape {rho.shape}")
    n = np.asarray(axis, dtype=float)
    h1 = sum(n[a] * QUBIT_GENERATORS[a] for a in range(3))
    h = np.kron(h1, np.eye(2)) + np.kron(np.eye(2), h1)
    r1 = partial_trace(rho, (2, 2), keep=1)
    r2 = partial_trace(rho, (2, 2), keep=2)
    return SpeedExcess(
        rotation_speed_sq(rho, h), rotation_speed_sq(r1, h1), rotation_speed_sq(r2, h1)
    )


def total_speed_excess(rho) -> float:
    """Axis average of ``F`` over ``x, y, z``."""
    return sum(speed_excess(rho, e).excess for e in np.eye(3)) / 3.0


def reduced_total_variances(rho) -> tuple[float, float]:
    rho = _as_dm(rho)
    r1 = partial_trace(rho, (2, 2), keep=1)
    r2 = partial_trace(rho, (2, 2), keep=2)
    return total_variance(r1, QUBIT_GENERATORS), total_variance(r2, QUBIT_GENERATORS)


def sum_identity_check(psi) -> float:
    """``D(rho) + D(rho_1) + D(rho_2)`` for a pure symmetric two-qubit state (equals 2)."""
    rho = _as_dm(psi)
    d1, d2 = reduced_total_variances(rho)
    return total_variance(rho, collective_generators()) + d1 + d2


# --- sphere moments and designs -------------------------------------------


def _double_factorial(n: int) -> int:
    if n <= 0:
        return 1
    return math.prod(range(n, 0, -2))


def monomial_sphere_average(exponents: Sequence[int]) -> Fraction:
    """Normalized average of ``x_1^m_1 ... x_n^m_n`` over ``S^(n-1)``.

    ``(n-2)!! prod (m_i - 1)!! / (n - 2 + sum m_i)!!``, zero if any ``m_i`` is odd.
    """
    ms = [int(m) for m in exponents]
    if any(m < 0 for m in ms):
        raise ValidationError("exponents must be non-negative")
    if any(m % 2 for m in ms):
        return Fraction(0)
    n = len(ms)
    num = _double_factorial(n - 2) * math.prod(_double_factorial(m - 1) for m in ms)
    return Fraction(num, _double_factorial(n - 2 + sum(ms)))


def quartic_moment_tensor() -> np.ndarray:
    """``<n_A n_B n_C n_D>`` over ``S^2``."""
    d = np.eye(3)
    return (
        np.einsum("ab,cd->abcd", d, d) + np.einsum("ac,bd->abcd", d, d) + np.einsum("ad,bc->abcd", d, d)
    ) / 15.0


def _design_points() -> np.ndarray:
    mu = math.sqrt((5 + math.sqrt(5)) / 10)
    nu = math.sqrt((5 - math.sqrt(5)) / 10)
    sg = 1 / math.sqrt(5)
    pts = np.array(
        [
            [0.0, 0.0, 1.0],
            [2 / math.sqrt(5), 0.0, sg],
            [-mu**2, -nu, sg],
            [-mu**2, nu, sg],
            [nu**2, -mu, sg],
            [nu**2, mu, sg],
        ]
    )
    pts.setflags(write=False)
    return pts


DESIGN_22 = _design_points()


def design_average(f, points: np.ndarray = DESIGN_22) -> float:
    return float(np.mean([f(p) for p in points]))


def random_rotation(seed) -> np.ndarray:
    from scipy.spatial.transform import Rotation

    return Rotation.random(random_state=np.random.default_rng(seed)).as_matrix()


# --- total acceleration of pure states --------------------------------------


def _pure_spin_state(psi, s) -> tuple[np.ndarray, Fraction]:
    rho = _as_dm(psi)
    if not is_pure(rho):
        raise ValidationError("total acceleration routes take a pure state")
    return rho, _spin_for(rho, s)


def total_acceleration_exact(psi, s=None) -> float:
    rho, s = _pure_spin_state(psi, s)
    S = spin_matrices(s)
    e1 = np.array([np.trace(rho @ a).real for a in S])
    e2 = np.einsum("ij,ajk,bki->ab", rho, S, S)
    e3 = np.einsum("ij,ajk,bkl,cli->abc", rho, S, S, S)
    e4 = np.einsum("ij,ajk,bkl,clm,dmi->abcd", rho, S, S, S, S)
    tensor = (
        e4
        - 4 * np.einsum("abc,d->abcd", e3, e1)
        - np.einsum("ab,cd->abcd", e2, e2)
        + 8 * np.einsum("ab,c,d->abcd", e2, e1, e1)
        - 4 * np.einsum("a,b,c,d->abcd", e1, e1, e1, e1)
    )
    return float(np.einsum("abcd,abcd->", tensor, quartic_moment_tensor()).real)


def total_acceleration_design(psi, s=None, points: np.ndarray = DESIGN_22) -> float:
    rho, s = _pure_spin_state(psi, s)
    return design_average(lambda n: fs.acc_norm_sq_closed(rho, axis_hamiltonian(n, s)), points)


@dataclass(frozen=True)
class LambdaCoefficients:
    s: Fraction
    values: tuple[float, float, float, float, float]

    def __getitem__(self, i: int) -> float:
        """1-based access: ``lam[1]`` is ``lambda_1``."""
        if not 1 <= i <= 5:
            raise IndexError(i)
        return self.values[i - 1]


def _lambda_closed(s: float) -> tuple[float, ...]:
    l1 = s * (s + 1) * (2 * s - 1) * (2 * s + 3) / 45
    if s <= 0.5:
        l2 = 4 / 27 * s**2 * (s + 1) ** 2 * (2 * s + 1)
    else:
        l2 = 4 / 135 * s * (s + 1) * (2 * s + 1) * (s**2 + s + 3)
    l3 = -s * (s + 1) * (2 * s - 1) * (2 * s + 1) * (2 * s + 3) / 225
    l4 = (
        8 / 45 * math.sqrt(2 / 15) * s * (s + 1) * (2 * s + 1)
        * math.sqrt(max(0.0, s * (s + 1) * (2 * s - 1) * (2 * s + 1) * (2 * s + 3)))
    )
    l5 = -4 / 45 * s**2 * (s + 1) ** 2 * (2 * s + 1) ** 2
    return l1, l2, l3, l4, l5


@dataclass(frozen=True)
class AppendixTerms:
    """Left-hand sides of the four appendix simplifications, evaluated from CG/6j values."""

    ans1: float
    ans2: float
    ans3: tuple[float, float, float]
    ans4: tuple[float, float, float]


def appendix_terms(s) -> AppendixTerms:
    a4 = multipole_normalization(s) ** 4
    dim = 2 * float(s) + 1
    c = {L: cg(1, 0, 1, 0, L, 0) for L in range(3)}
    x11 = {L: chi(1, 1, L, s) for L in range(3)}
    ans1 = sum(
        (x11[L] * c[L]) ** 2 * chi(L, L, 0, s) * cg(L, 0, L, 0, 0, 0) / math.sqrt(dim) for L in range(3)
    ) / a4
    ans2 = 4 / 3 * sum(x11[L] * chi(L, 1, 1, s) * c[L] * cg(L, 0, 1, 0, 1, 0) for L in range(3)) / a4
    ans3 = tuple((x11[L] * c[L]) ** 2 / (a4 * (2 * L + 1)) for L in range(3))
    ans4 = tuple(8 * x11[L] * c[L] ** 2 / (a4 * (2 * L + 1)) for L in range(3))
    return AppendixTerms(ans1, ans2, ans3, ans4)


def _lambda_appendix(s) -> tuple[float, ...]:
    t = appendix_terms(s)
    dim = 2 * float(s) + 1
    # the L=0 pieces of the |rho_L|^2 and cubic terms are constants / |rho_1|^2 terms:
    # |rho_0|^2 = 1/(2s+1) and sum_N c^{00}_{1N,1-N} rho_00 rho*_1N rho*_1-N = -|rho_1|^2 / sqrt(3(2s+1))
    l1 = t.ans1 - t.ans3[0] / dim
    l2 = -t.ans2 - t.ans4[0] / math.sqrt(3 * dim)
    l3 = -t.ans3[2]
    l4 = t.ans4[2]
    l5 = -0.8 / multipole_normalization(s) ** 4
    return l1, l2, l3, l4, l5


def lambda_coefficients(s, route: str = "closed") -> LambdaCoefficients:
    """``lambda_1..lambda_5`` from the closed polynomials or from the CG/6j appendix sums."""
    two_s = doubled(s)
    if two_s < 1:
        raise ValidationError("lambda coefficients need s >= 1/2")
    sf = Fraction(two_s, 2)
    if route == "closed":
        vals = _lambda_closed(float(sf))
    elif route == "appendix":
        vals = _lambda_appendix(sf)
    else:
        raise ValidationError(f"unknown route {route!r}")
    return LambdaCoefficients(sf, tuple(float(v) for v in vals))


def cubic_invariant(rho, s) -> float:
    """``sum_{N1,N2} c^{2,N1+N2}_{1N1,1N2} rho_{2,N1+N2} rho*_{1N1} rho*_{1N2}`` (real)."""
    r1 = multipole_vector(rho, s, 1)
    r2 = multipole_vector(rho, s, 2)
    total = 0j
    for i1, n1 in enumerate(range(1, -2, -1)):
        for i2, n2 in enumerate(range(1, -2, -1)):
            m = n1 + n2
            if abs(m) > 2:
                continue
            total += cg(1, n1, 1, n2, 2, m) * r2[2 - m] * np.conj(r1[i1]) * np.conj(r1[i2])
    return float(total.real)


def total_acceleration_closed(psi, s=None, route: str = "closed") -> float:
    rho, s = _pure_spin_state(psi, s)
    lam = lambda_coefficients(s, route)
    p1 = float(np.sum(np.abs(multipole_vector(rho, s, 1)) ** 2))
    p2 = float(np.sum(np.abs(multipole_vector(rho, s, 2)) ** 2)) if doubled(s) >= 2 else 0.0
    cub = cubic_invariant(rho, s) if doubled(s) >= 2 else 0.0
    return lam[1] + lam[2] * p1 + lam[3] * p2 + lam[4] * cub + lam[5] * p1**2


def total_acceleration(psi, s=None, route: str = "closed") -> float:
    if route == "exact":
        return total_acceleration_exact(psi, s)
    if route == "design":
        return total_acceleration_design(psi, s)
    if route in ("closed", "appendix"):
        return total_acceleration_closed(psi, s, route)
    raise ValidationError(f"unknown route {route!r}")


def total_acceleration_mixed(rho, generators: Sequence[np.ndarray] | None = None,
                             points: np.ndarray = DESIGN_22) -> float:
    """Design average of the covariant acceleration norm; FS for pure, Bures for mixed input."""
    rho = _as_dm(rho)
    gens = spin_matrices(spin_of_dim(rho.shape[0])) if generators is None else generators
    pure = is_pure(rho)

    def one(n):
        h = sum(n[a] * gens[a] for a in range(3))
        if pure:
            return fs.acc_norm_sq(rho, h)
        return bg.bures_sq(rho, bg.mixed_acceleration(rho, h))

    return design_average(one, points)


# --- printed closed forms ---------------------------------------------------


def coherent_acceleration_printed(s) -> float:
    """``s (8 s^2 (s+1) - 4 s - 3) / 45`` as printed for coherent states."""
    s = float(s)
    return s * (8 * s**2 * (s + 1) - 4 * s - 3) / 45


def coherent_acceleration(s) -> float:
    """Total acceleration of a spin-``s`` coherent state, ``s (4 s - 1) / 15``.

    Obtained from the multipole formula with ``|rho_1|^2 = s^2 A^2`` and the
    coherent-state quadrupole; agrees with all three numerical routes.
    """
    s = float(s)
    return s * (4 * s - 1) / 15


def spin1_two_star(alpha: float) -> float:
    """Spin 1, stars separated by ``2 alpha``."""
    c = math.cos
    num = 1459 + 1344 * c(2 * alpha) + 140 * c(4 * alpha) + 128 * c(6 * alpha) + c(8 * alpha)
    return num / (60 * (3 + c(2 * alpha)) ** 4)


def spin1_state(alpha: float) -> np.ndarray:
    """``(cos^2(a/2), 0, -sin^2(a/2))`` normalized; its stars are ``2 alpha`` apart."""
    v = np.array([math.cos(alpha / 2) ** 2, 0.0, -math.sin(alpha / 2) ** 2], dtype=complex)
    return v / np.linalg.norm(v)


def spin1_case_A(A: float) -> float:
    """Same curve in the variable ``A`` of ``(cos A, 0, -sin A)``."""
    return (8 + math.cos(4 * A) - 3 * math.cos(8 * A)) / 30


def spin32_equal_angles(alpha: float) -> float:
    """Spin 3/2 with all three pairwise star angles equal to ``alpha``."""
    c = math.cos
    num = (
        5774 * c(alpha) + 1793 * c(2 * alpha) + 1027 * c(3 * alpha) + 82 * c(4 * alpha)
        - 17 * c(5 * alpha) - c(6 * alpha) + 2862
    )
    return num / (1440 * (c(alpha) + 1) ** 4)


def total_variance_mixed_n(r: float) -> float:
    return 4 * r**2 / (1 - 4 * r**2)


def speed_excess_mixed_n(r: float) -> float:
    """``16 r^4 / (1 - 4 r^2)`` as printed.

    This is ``D(rho) - D(rho_1) - D(rho_2)``, which is three times the
    axis-averaged excess returned by :func:`total_speed_excess`.
    """
    return 16 * r**4 / (1 - 4 * r**2)


def total_variance_mixed_t(k2: float, k3: float, t: float) -> float:
    """Rational expression for ``n = 0``; ``t`` is the trace of ``t_ij``."""
    num = (
        -256 * k2**2 + 96 * t * k3 - 2 * t**4 - 48 * t**2 * k2 - 6 * t**3 + 288 * k3
        - 64 * t * k2 + 14 * t**2 + 240 * k2 + 30 * t - 36
    )
    den = 64 * k3 + 64 * k2 + 4 * t**2 + 8 * t - 12
    return num / den


def monomial_classes(degree: int = 4, n: int = 3) -> list[tuple[int, ...]]:
    """All exponent tuples of the given total degree in ``n`` variables."""
    return [m for m in product(range(degree + 1), repeat=n) if sum(m) == degree]


def design_monomial_average(exponents: Sequence[int], points: np.ndarray = DESIGN_22) -> float:
    e = np.asarray(exponents)
    return float(np.mean(np.prod(points ** e, axis=1)))
