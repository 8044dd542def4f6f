"""Constructive Cartan decomposition ``U = K1 [a1, a2, a3] K2``.

``decompose`` diagonalizes ``m(U) = B^T B`` with a real orthogonal matrix.
``canonicalize`` then moves the coordinates to the minimal-time
representative with a fixed set of local moves; every move updates K1/K2
explicitly and the reconstruction is re-checked afterwards.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bell import Q, QH, bell_form, is_local, m_matrix
from .errors import DegenerateSpectrum, FormatError, MoveSetExhausted, ReconstructionFailed
from .gates import Gate, canonical_matrix, matrix_from_json, matrix_to_json
from .linalg import I2, PAULI, dag, frobenius_dist, kron
from .weyl import ClassificationResult

RECON_TOL = 1e-8
DIAG_TOL = 1e-9
MAX_RETRIES = 8
AXES = ("x", "y", "z")


@dataclass(frozen=True, eq=False)
class CartanFactorization:
    k1: Gate
    a: tuple[float, float, float]
    k2: Gate
    reconstruction_error: float

    def matrix(self) -> np.ndarray:
        return self.k1.u @ canonical_matrix(*self.a) @ self.k2.u

    @property
    def coordinate_sum(self) -> float:
        return sum(abs(x) for x in self.a)

    def to_json(self) -> dict:
        return {"k1": matrix_to_json(self.k1.u), "a": list(self.a),
                "k2": matrix_to_json(self.k2.u), "error": self.reconstruction_error}

    @classmethod
    def from_json(cls, data: dict) -> "CartanFactorization":
        try:
            a = tuple(float(x) for x in data["a"])
            k1, k2 = matrix_from_json(data["k1"]), matrix_from_json(data["k2"])
            err = float(data["error"])
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad factorization object: {exc}") from exc
        if len(a) != 3:
            raise FormatError("factorization needs three coordinates")
        return cls(Gate(k1), a, Gate(k2), err)


def write_factorization(path, f: CartanFactorization) -> None:
    Path(path).write_text(json.dumps(f.to_json(), indent=1))


def _real_orthogonal_diagonalizer(m: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    # m is complex symmetric unitary, so Re m and Im m are commuting real symmetric
    mr, mi = m.real, m.imag
    for _ in range(MAX_RETRIES):
        lam = rng.uniform(-2.0, 2.0)
        _, o = np.linalg.eigh(mr + lam * mi)
        d = o.T @ m @ o
        if np.max(np.abs(d - np.diag(np.diag(d)))) <= DIAG_TOL:
            if np.linalg.det(o) < 0:
                o[:, 0] = -o[:, 0]
            return o
    raise DegenerateSpectrum(
        f"could not find a common real eigenbasis after {MAX_RETRIES} attempts")


def _factorization(k1: np.ndarray, a, k2: np.ndarray, target: np.ndarray) -> CartanFactorization:
    a = tuple(float(x) for x in a)
    err = frobenius_dist(k1 @ canonical_matrix(*a) @ k2, target)
    if err > RECON_TOL:
        raise ReconstructionFailed(f"reconstruction residual {err:.3e} exceeds {RECON_TOL:g}")
    return CartanFactorization(Gate(k1), a, Gate(k2), err)


def decompose(u: Gate, seed: int | None = 0) -> CartanFactorization:
    """Cartan factorization of ``u`` with SU(2)xSU(2) factors ``k1`` and ``k2``."""
    rng = np.random.default_rng(seed)
    b = bell_form(u).b
    m = m_matrix(bell_form(u))
    o = _real_orthogonal_diagonalizer(m, rng)
    # m = o diag(exp(2i b_k)) o^T, so O2 = o^T
    bk = np.angle(np.diag(o.T @ m @ o)) / 2
    o1 = b @ o @ np.diag(np.exp(-1j * bk))
    if np.linalg.det(o1.real) < 0:
        bk[0] += math.pi
        o1[:, 0] = -o1[:, 0]
    bk = np.angle(np.exp(1j * bk))
    bk[2] -= 2 * math.pi * round(float(np.sum(bk)) / (2 * math.pi))
    if np.max(np.abs(o1.imag)) > RECON_TOL:
        raise ReconstructionFailed(
            f"left Bell factor is not real (imaginary part {np.max(np.abs(o1.imag)):.3e})")
    a = (bk[0] + bk[1], bk[1] + bk[3], bk[0] + bk[3])
    k1 = Q @ o1.real @ QH
    k2 = Q @ o.T @ QH
    return _factorization(k1, a, k2, u.u)


# --- local moves -----------------------------------------------------------
# Each returns (left, a_new, right) with C(a) = left @ C(a_new) @ right, so a
# factorization K1 C(a) K2 becomes (K1 left) C(a_new) (right K2).

def _su2(axis: str) -> np.ndarray:
    return 1j * PAULI[axis]


def _rot(axis: str, angle: float) -> np.ndarray:
    return math.cos(angle / 2) * I2 - 1j * math.sin(angle / 2) * PAULI[axis]


# conjugating by R(pi/2) on both qubits about the third axis swaps the other two
_SWAP_AXIS = {(0, 1): "z", (0, 2): "y", (1, 2): "x"}


def move_shift_2pi(a, k: int, sign: int):
    """``a_k += 2 pi sign``: C gains a factor -I, absorbed as (-I) x I."""
    new = list(a)
    new[k] += 2 * math.pi * sign
    return -np.eye(4, dtype=complex), new, np.eye(4, dtype=complex)


def move_shift_pi_pair(a, j: int, k: int, sj: int, sk: int):
    """``a_j += sj pi, a_k += sk pi``: absorbs ``-sj sk (s_j x s_j)(s_k x s_k)``."""
    new = list(a)
    new[j] += sj * math.pi
    new[k] += sk * math.pi
    pj, pk = PAULI[AXES[j]], PAULI[AXES[k]]
    # (s_j x s_j)(s_k x s_k) = (i s_j)(i s_k) x (-i s_j)(-i s_k), an SU(2)xSU(2) product
    local = -sj * sk * kron(_su2(AXES[j]) @ _su2(AXES[k]),
                           (-1j * pj) @ (-1j * pk))
    return np.eye(4, dtype=complex), new, local


def move_flip_pair(a, keep: int):
    """Negate the two coordinates other than ``keep`` (conjugation by i s_keep x I)."""
    new = [x if i == keep else -x for i, x in enumerate(a)]
    p = kron(_su2(AXES[keep]), I2)
    return dag(p), new, p


def move_swap(a, j: int, k: int):
    """Exchange coordinates ``j`` and ``k`` (conjugation by a quarter turn on both qubits)."""
    j, k = sorted((j, k))
    new = list(a)
    new[j], new[k] = new[k], new[j]
    r = _rot(_SWAP_AXIS[(j, k)], math.pi / 2)
    v = kron(r, r)
    return dag(v), new, v


class _Tracker:
    def __init__(self, f: CartanFactorization, target: np.ndarray):
        self.k1, self.a, self.k2 = f.k1.u.copy(), list(f.a), f.k2.u.copy()
        self.target = target
        self.moves: list[str] = []

    def apply(self, name: str, move, *args):
        left, new, right = move(self.a, *args)
        self.k1, self.a, self.k2 = self.k1 @ left, list(new), right @ self.k2
        err = frobenius_dist(self.k1 @ canonical_matrix(*self.a) @ self.k2, self.target)
        if err > RECON_TOL:
            raise ReconstructionFailed(f"move {name}{args} broke reconstruction ({err:.3e})")
        self.moves.append(f"{name}{args}")


def _alpha(x: float) -> float:
    return math.asin(min(1.0, abs(math.sin(x))))


def canonicalize(f: CartanFactorization,
                 target_class: ClassificationResult | None = None) -> CartanFactorization:
    """Rewrite ``f`` so that ``sum |a_k|`` is the minimal-time value.

    The result has the tabulated form ``[+-alpha1, alpha2, alpha3]`` for
    classes I/II or ``[+-(pi - alpha1), alpha2, alpha3]`` for III/IV.
    """
    target = f.matrix()
    tr = _Tracker(f, target)

    for k in range(3):
        while tr.a[k] > math.pi:
            tr.apply("shift_2pi", move_shift_2pi, k, -1)
        while tr.a[k] <= -math.pi:
            tr.apply("shift_2pi", move_shift_2pi, k, 1)

    def sgn(x):
        return 1 if x >= 0 else -1

    big = [k for k in range(3) if abs(tr.a[k]) > math.pi / 2]
    while len(big) >= 2:
        j, k = big.pop(), big.pop()
        tr.apply("shift_pi_pair", move_shift_pi_pair, j, k, -sgn(tr.a[j]), -sgn(tr.a[k]))

    alphas = [_alpha(x) for x in tr.a]
    lead = int(np.argmax(alphas))
    if big:
        odd = big[0]
        if odd != lead and alphas[lead] > alphas[odd]:
            # move the pi onto the coordinate with the largest alpha
            tr.apply("shift_pi_pair", move_shift_pi_pair, odd, lead,
                     -sgn(tr.a[odd]), -sgn(tr.a[lead]))
        else:
            lead = odd

    # order: lead first, the rest by alpha descending
    rest = sorted((k for k in range(3) if k != lead), key=lambda k: -alphas[k])
    order = [lead] + rest
    for pos in range(3):
        cur = order[pos]
        if cur != pos:
            tr.apply("swap", move_swap, pos, cur)
            order = [pos if x == cur else cur if x == pos else x for x in order]

    if tr.a[1] < 0 and tr.a[2] < 0:
        tr.apply("flip_pair", move_flip_pair, 0)
    elif tr.a[1] < 0:
        tr.apply("flip_pair", move_flip_pair, 2)
    elif tr.a[2] < 0:
        tr.apply("flip_pair", move_flip_pair, 1)

    out = _factorization(tr.k1, tr.a, tr.k2, target)
    if not (is_local(out.k1) and is_local(out.k2)):
        raise ReconstructionFailed("canonical factors left SU(2)xSU(2)")
    if target_class is not None:
        want = target_class.coordinate_sum
        if abs(out.coordinate_sum - want) > RECON_TOL:
            raise MoveSetExhausted(
                f"reached sum |a| = {out.coordinate_sum:.12g}, classification needs "
                f"{want:.12g} (moves: {', '.join(tr.moves) or 'none'})")
    return out


def minimal_factorization(u: Gate, target_class: ClassificationResult | None = None,
                          seed: int | None = 0) -> CartanFactorization:
    return canonicalize(decompose(u, seed=seed), target_class)

