"""Dense 2x2 / 4x4 complex matrix kernel.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; scalars are
Python ``complex``. All functions are pure.
"""
from __future__ import annotations

import contextlib
from dataclasses import dataclass, replace

import numpy as np

from .errors import NotHermitian


@dataclass(frozen=True)
class Tolerances:
    herm: float = 1e-10
    unit: float = 1e-9
    det: float = 1e-8


TOL = Tolerances()


@contextlib.contextmanager
def tolerances(**overrides):
    """Temporarily override the global tolerances.

    >>> with tolerances(unit=1e-6):
    ...     pass
    """
    global TOL
    saved = TOL
    TOL = replace(TOL, **overrides)
    try:
        yield TOL
    finally:
        TOL = saved


I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
I4 = np.eye(4, dtype=complex)
PAULI = {"x": SX, "y": SY, "z": SZ}


def as_matrix(m, n: int) -> np.ndarray:
    """Return ``m`` as an ``n x n`` complex array, rejecting non-finite entries."""
    arr = np.asarray(m, dtype=complex)
    if arr.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    return arr


def dag(m: np.ndarray) -> np.ndarray:
    return np.conj(m).T


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two 2x2 matrices; block (i, j) is ``a[i, j] * b``."""
    a = as_matrix(a, 2)
    b = as_matrix(b, 2)
    out = np.empty((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            out[2 * i:2 * i + 2, 2 * j:2 * j + 2] = a[i, j] * b
    return out


def is_hermitian(h: np.ndarray, tol: float | None = None) -> bool:
    tol = TOL.herm if tol is None else tol
    return float(np.linalg.norm(h - dag(h))) <= tol


def expm_skew(h: np.ndarray, t: float) -> np.ndarray:
    """Compute ``exp(-i h t)`` for a Hermitian ``h`` by eigendecomposition.

    Raises:
        NotHermitian: if ``||h - h^dagger||_F`` exceeds the Hermiticity tolerance.
    """
    h = np.asarray(h, dtype=complex)
    if not is_hermitian(h):
        raise NotHermitian(f"generator is not Hermitian: ||h - h^+||_F = "
                           f"{np.linalg.norm(h - dag(h)):.3e}")
    # symmetrize so eigh sees an exactly Hermitian input
    w, v = np.linalg.eigh(0.5 * (h + dag(h)))
    return (v * np.exp(-1j * w * t)) @ dag(v)


def det4(m: np.ndarray) -> complex:
    """Determinant of a 4x4 complex matrix (LU based)."""
    return complex(np.linalg.det(as_matrix(m, 4)))


def frobenius_dist(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)))


def unitarity_error(u: np.ndarray) -> float:
    """``||u^dagger u - I||_F``."""
    u = np.asarray(u)
    return float(np.linalg.norm(dag(u) @ u - np.eye(u.shape[0])))


def is_unitary(u: np.ndarray, tol: float | None = None) -> bool:
    tol = TOL.unit if tol is None else tol
    return unitarity_error(u) <= tol


def is_real_orthogonal(o: np.ndarray, tol: float = 1e-9) -> bool:
    o = np.asarray(o)
    if np.max(np.abs(o.imag)) > tol:
        return False
    r = o.real
    return float(np.linalg.norm(r.T @ r - np.eye(r.shape[0]))) <= tol
