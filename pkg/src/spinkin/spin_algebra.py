"""Angular-momentum algebra: spin matrices, CG and 6j symbols, tensor operators.

Spins are passed as ordinary numbers (``1``, ``0.5``, ``Fraction(3, 2)``) and
converted internally to doubled integers, so half-integers are exact.  CG and
6j symbols use the Racah sum over exact rationals and are only rounded to
float at the very end.

Basis ordering is ``m = s, s-1, ..., -s`` everywhere.  Phases follow
Condon-Shortley.  Tensor operators are normalized so that
``Tr(T_LM^dag T_L'M') = delta_LL' delta_MM'``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ValidationError


def doubled(j) -> int:
    """``2*j`` as an int, rejecting anything that is not a half-integer."""
    two_j = 2 * Fraction(j).limit_denominator(1000) if not isinstance(j, Fraction) else 2 * j
    if two_j.denominator != 1:
        raise ValidationError(f"{j!r} is not an integer or half-integer")
    return int(two_j)


def spin_dim(s) -> int:
    two_s = doubled(s)
    if two_s < 0:
        raise ValidationError(f"spin must be non-negative, got {s}")
    return two_s + 1


def m_values(s) -> np.ndarray:
    two_s = doubled(s)
    return np.array([(two_s - 2 * k) / 2 for k in range(two_s + 1)])


@lru_cache(maxsize=None)
def _spin_matrices(two_s: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    s = two_s / 2
    m = np.array([(two_s - 2 * k) / 2 for k in range(two_s + 1)])
    sz = np.diag(m).astype(complex)
    # <m+1| S+ |m> on the super-diagonal (row m+1 sits one above row m)
    up = np.sqrt(s * (s + 1) - m[1:] * (m[1:] + 1))
    sp = np.diag(up, 1).astype(complex)
    sx = (sp + sp.conj().T) / 2
    sy = (sp - sp.conj().T) / 2j
    for a in (sx, sy, sz):
        a.setflags(write=False)
    return sx, sy, sz


def spin_matrices(s) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(Sx, Sy, Sz)`` for spin ``s`` in the ``|s, m>`` basis, ``m`` descending."""
    two_s = doubled(s)
    if two_s < 0:
        raise ValidationError(f"spin must be non-negative, got {s}")
    return tuple(a.copy() for a in _spin_matrices(two_s))


def axis_hamiltonian(n, s) -> np.ndarray:
    """``n . S`` for a 3-vector ``n`` (not required to be unit)."""
    sx, sy, sz = _spin_matrices(doubled(s))
    return n[0] * sx + n[1] * sy + n[2] * sz


# --- Racah formulas over exact rationals -----------------------------------

def _fact(n2: int) -> int:
    # argument is a doubled integer that must be even and non-negative
    return math.factorial(n2 // 2)


def _triangle(a2: int, b2: int, c2: int) -> bool:
    return (
        a2 >= 0 and b2 >= 0 and c2 >= 0
        and (a2 + b2 + c2) % 2 == 0
        and abs(a2 - b2) <= c2 <= a2 + b2
    )


def _delta_sq(a2: int, b2: int, c2: int) -> Fraction:
    return Fraction(
        _fact(a2 + b2 - c2) * _fact(a2 - b2 + c2) * _fact(-a2 + b2 + c2),
        _fact(a2 + b2 + c2 + 2),
    )


def _signed_sqrt(sign_part: Fraction, square: Fraction) -> float:
    if sign_part == 0 or square == 0:
        return 0.0
    return math.copysign(math.sqrt(float(square)), float(sign_part))


@lru_cache(maxsize=None)
def _cg2(j1: int, m1: int, j2: int, m2: int, J: int, M: int) -> float:
    if m1 + m2 != M or not _triangle(j1, j2, J):
        return 0.0
    if abs(m1) > j1 or abs(m2) > j2 or abs(M) > J:
        return 0.0
    if (j1 + m1) % 2 or (j2 + m2) % 2 or (J + M) % 2:
        raise ValidationError("projection and spin must both be integer or both half-integer")
    pref = Fraction(J + 1) * _delta_sq(j1, j2, J) * (
        _fact(j1 + m1) * _fact(j1 - m1) * _fact(j2 + m2) * _fact(j2 - m2)
        * _fact(J + M) * _fact(J - M)
    )
    total = Fraction(0)
    # k runs over doubled even integers where every factorial argument is >= 0
    kmin = max(0, j2 - J - m1, j1 + m2 - J)
    kmax = min(j1 + j2 - J, j1 - m1, j2 + m2)
    for k in range(kmin, kmax + 1, 2):
        den = (
            _fact(k) * _fact(j1 + j2 - J - k) * _fact(j1 - m1 - k) * _fact(j2 + m2 - k)
            * _fact(J - j2 + m1 + k) * _fact(J - j1 - m2 + k)
        )
        total += Fraction((-1) ** (k // 2), den)
    return _signed_sqrt(total, pref * total * total)


def cg(j1, m1, j2, m2, J, M) -> float:
    """Clebsch-Gordan coefficient ``<j1 m1; j2 m2 | J M>``.

    Returns 0 when the triangle rule or ``m1 + m2 = M`` fails.
    """
    return _cg2(doubled(j1), doubled(m1), doubled(j2), doubled(m2), doubled(J), doubled(M))


@lru_cache(maxsize=None)
def _six_j2(a: int, b: int, c: int, d: int, e: int, f: int) -> float:
    triads = ((a, b, c), (a, e, f), (d, b, f), (d, e, c))
    if not all(_triangle(*t) for t in triads):
        return 0.0
    pref = Fraction(1)
    for t in triads:
        pref *= _delta_sq(*t)
    sums = [sum(t) for t in triads]
    pairs = (a + b + d + e, a + c + d + f, b + c + e + f)
    total = Fraction(0)
    for t in range(max(sums), min(pairs) + 1, 2):
        den = _fact(pairs[0] - t) * _fact(pairs[1] - t) * _fact(pairs[2] - t)
        for sm in sums:
            den *= _fact(t - sm)
        total += Fraction((-1) ** (t // 2) * _fact(t + 2), den)
    return _signed_sqrt(total, pref * total * total)


def six_j(j1, j2, j3, j4, j5, j6) -> float:
    """Wigner 6j symbol ``{j1 j2 j3; j4 j5 j6}`` (0 if a triad fails)."""
    return _six_j2(*(doubled(j) for j in (j1, j2, j3, j4, j5, j6)))


def chi(l1, l2, l, s) -> float:
    """Coefficient in ``T_{l1 m1} T_{l2 m2} = chi * <l1 m1; l2 m2|l m> * T_{lm}``."""
    two_s = doubled(s)
    a, b, c = doubled(l1), doubled(l2), doubled(l)
    sixj = _six_j2(a, b, c, two_s, two_s, two_s)
    if sixj == 0.0:
        return 0.0
    phase = -1 if ((2 * b + c - 2 * two_s) // 2) % 2 else 1
    return phase * math.sqrt((a + 1) * (b + 1)) * sixj


# --- tensor operators -------------------------------------------------------

def multipole_normalization(s) -> float:
    """``A(s) = sqrt(3 / (s (s+1) (2s+1)))``; ``T_1M = A * S_M`` (spherical components)."""
    s = doubled(s) / 2
    if s == 0:
        raise ValidationError("spin 0 carries no dipole operator")
    return math.sqrt(3.0 / (s * (s + 1) * (2 * s + 1)))


@lru_cache(maxsize=None)
def _tensor_operator(two_s: int, L: int, M: int) -> np.ndarray:
    n = two_s + 1
    ms = [two_s - 2 * k for k in range(n)]
    t = np.zeros((n, n), dtype=complex)
    norm = math.sqrt((2 * L + 1) / n)
    for i, m in enumerate(ms):
        for j, mp in enumerate(ms):
            if mp + 2 * M == m:
                t[i, j] = norm * _cg2(two_s, mp, 2 * L, 2 * M, two_s, m)
    t.setflags(write=False)
    return t


def tensor_operator(s, L: int, M: int) -> np.ndarray:
    """Irreducible tensor operator ``T_LM`` on the spin-``s`` carrier space.

    ``(T_LM)_{m m'} = sqrt((2L+1)/(2s+1)) <s m'; L M | s m>``.
    """
    two_s = doubled(s)
    if L != int(L) or L < 0 or abs(M) > L or M != int(M):
        raise ValidationError(f"invalid tensor index (L={L}, M={M})")
    if 2 * L > 2 * two_s:
        raise ValidationError(f"L={L} exceeds 2s={two_s} for this carrier space")
    return _tensor_operator(two_s, int(L), int(M)).copy()


def multipole_vector(rho, s, L: int) -> np.ndarray:
    """Expectations ``rho_LM = Tr(rho T_LM^dag)`` for ``M = L, ..., -L``."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim == 1:
        rho = np.outer(rho, rho.conj())
    two_s = doubled(s)
    if 2 * L > 2 * two_s:
        return np.zeros(2 * L + 1, dtype=complex)
    return np.array(
        [np.trace(rho @ _tensor_operator(two_s, L, M).conj().T) for M in range(L, -L - 1, -1)]
    )


def axis_to_multipole(n, s) -> dict[int, complex]:
    """Components ``r_m`` with ``n . S = sum_m r_m T_1m``, for a unit axis ``n``."""
    n = np.asarray(n, dtype=float)
    if n.shape != (3,) or abs(np.linalg.norm(n) - 1.0) > 1e-12:
        raise ValidationError(f"rotation axis must be a unit 3-vector, got {n}")
    a = multipole_normalization(s)
    return {
        1: -(n[0] - 1j * n[1]) / (math.sqrt(2) * a),
        0: n[2] / a + 0j,
        -1: (n[0] + 1j * n[1]) / (math.sqrt(2) * a),
    }
