"""Bell-basis forms and the local invariants G1..G4."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalInconsistency
from .gates import Gate
from .linalg import dag

_S = 1 / math.sqrt(2)
# columns are |Phi+>, |Phi->, |Psi+>, |Psi-> in the computational basis
Q = _S * np.array([[1, 0, 0, 1j],
                   [0, 1j, 1, 0],
                   [0, 1j, -1, 0],
                   [1, 0, 0, -1j]])
Q.setflags(write=False)
QH = dag(Q)
QH.setflags(write=False)

G2_IMAG_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class BellForm:
    b: np.ndarray
    b1: np.ndarray
    b2: np.ndarray


@dataclass(frozen=True)
class InvariantSet:
    g1: complex
    g2: float
    g3: float
    g4: float

    @property
    def a(self) -> float:
        return self.g1.real

    @property
    def b(self) -> float:
        return self.g1.imag

    @property
    def c(self) -> float:
        return self.g2

    def as_dict(self) -> dict:
        return {"G1": {"re": self.g1.real, "im": self.g1.imag}, "G2": self.g2,
                "G3": self.g3, "G4": self.g4}

    def max_diff(self, other: "InvariantSet") -> float:
        return max(abs(self.g1 - other.g1), abs(self.g2 - other.g2),
                   abs(self.g3 - other.g3), abs(self.g4 - other.g4))


def to_bell(u: np.ndarray) -> np.ndarray:
    return QH @ np.asarray(u) @ Q


def from_bell(b: np.ndarray) -> np.ndarray:
    return Q @ np.asarray(b) @ QH


def bell_form(u: Gate | np.ndarray) -> BellForm:
    m = u.u if isinstance(u, Gate) else np.asarray(u, dtype=complex)
    b = to_bell(m)
    return BellForm(b=b, b1=b.real.copy(), b2=b.imag.copy())


def m_matrix(bf: BellForm) -> np.ndarray:
    """``B^T B`` (plain transpose)."""
    return bf.b.T @ bf.b


def invariants(u: Gate | np.ndarray) -> InvariantSet:
    bf = bell_form(u)
    m = m_matrix(bf)
    tr = np.trace(m)
    g1 = complex(tr * tr / 16)
    g2 = complex((tr * tr - np.trace(m @ m)) / 4)
    if abs(g2.imag) > G2_IMAG_TOL:
        raise NumericalInconsistency(
            f"G2 has imaginary part {g2.imag:.3e}; input is not in SU(4)")
    g3 = float(np.linalg.det(bf.b1))
    g4 = float(np.trace(bf.b1 @ bf.b2.T))
    return InvariantSet(g1=g1, g2=g2.real, g3=g3, g4=g4)


def is_local(u: Gate | np.ndarray, tol: float = 1e-8) -> bool:
    """True if the Bell form is real orthogonal (i.e. ``u`` is in SU(2)xSU(2))."""
    b = bell_form(u).b
    if np.max(np.abs(b.imag)) > tol:
        return False
    r = b.real
    return (np.linalg.norm(r.T @ r - np.eye(4)) <= tol
            and abs(np.linalg.det(r) - 1) <= tol)


def eigenphase_alphas(u: Gate | np.ndarray) -> np.ndarray:
    """Sorted ``alpha_k`` read directly from the eigenvalues of ``m(U)``.

    With eigenvalues ``exp(2i b_k)`` of ``m(U)``, ``2 a`` is the argument of
    ``lambda_1 lambda_j``, so ``alpha = |arg(lambda_1 lambda_j)| / 2``. This
    avoids the square-root loss of precision of ``arcsin(sqrt(c))`` near 0
    and pi/2 and the ill-conditioning of the cubic at repeated roots.
    """
    lam = np.linalg.eigvals(m_matrix(bell_form(u)))
    lam = lam / np.abs(lam)
    alphas = [abs(np.angle(lam[0] * lam[j])) / 2 for j in (1, 2, 3)]
    return np.sort(np.minimum(alphas, math.pi / 2))[::-1]
