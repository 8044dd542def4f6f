"""Gate construction, validation, the named-gate catalog and random sampling."""
from __future__ import annotations

import cmath
import enum
import json
import math
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import linalg
from .errors import FormatError, NotSpecial, NotUnitary, UnknownGate
from .linalg import I2, I4, SX, SY, SZ, as_matrix, dag, det4, kron

NORMALIZE_NOTE = (
    "det^(-1/4) fixes one of four phase variants (+1, +i, -1, -i); the minimum "
    "time depends on that choice (e.g. I4 needs 0 but iI4 needs 1/J)"
)


class PhaseFactor(enum.Enum):
    """Fourth roots of unity: the only global phases that keep det = 1."""

    ONE = 1
    I = 1j
    MINUS_ONE = -1
    MINUS_I = -1j

    @classmethod
    def parse(cls, text) -> "PhaseFactor":
        if isinstance(text, PhaseFactor):
            return text
        key = str(text).strip().lower().replace("+", "")
        table = {"1": cls.ONE, "i": cls.I, "1j": cls.I, "-1": cls.MINUS_ONE,
                 "-i": cls.MINUS_I, "-1j": cls.MINUS_I}
        if key not in table:
            raise ValueError(f"phase must be one of 1, i, -1, -i (got {text!r})")
        return table[key]

    @property
    def label(self) -> str:
        return {1: "1", 1j: "i", -1: "-1", -1j: "-i"}[self.value]


@dataclass(frozen=True)
class SystemConfig:
    """Heteronuclear two-spin system with scalar coupling ``J`` (Hz)."""

    J: float

    def __post_init__(self):
        if not (math.isfinite(self.J) and self.J > 0):
            raise ValueError(f"coupling J must be finite and positive, got {self.J}")


@dataclass(frozen=True, eq=False)
class Gate:
    """A validated element of SU(4). Construct through :func:`validate`."""

    u: np.ndarray

    def __post_init__(self):
        self.u.setflags(write=False)

    def __matmul__(self, other: "Gate") -> np.ndarray:
        return self.u @ other.u

    def dagger(self) -> "Gate":
        return Gate(dag(self.u).copy())

    def times(self, phase) -> "Gate":
        """Multiply by a fourth root of unity (stays in SU(4))."""
        return Gate(PhaseFactor.parse(phase).value * self.u)


def validate(raw) -> Gate:
    """Accept ``raw`` as a Gate if it is unitary with unit determinant.

    Never renormalizes; use :func:`normalize_su4` to project onto SU(4).
    """
    try:
        u = as_matrix(raw, 4).copy()
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    err = linalg.unitarity_error(u)
    if err > linalg.TOL.unit:
        raise NotUnitary(f"||U^+U - I||_F = {err:.3e} exceeds {linalg.TOL.unit:g}")
    d = det4(u)
    if abs(d - 1) > linalg.TOL.det:
        raise NotSpecial(f"det(U) = {d.real:.12g}{d.imag:+.12g}j, not 1; "
                         "use normalize_su4 to fix the phase explicitly")
    return Gate(u)


def _principal_arg(z: complex) -> float:
    # branch cut placed so that arguments lie in [-pi, pi)
    phi = cmath.phase(z)
    if phi > math.pi - 1e-12:
        phi = -math.pi
    return phi


def normalize_su4(raw) -> tuple[Gate, str]:
    """Project a unitary onto SU(4) by multiplying with ``det^(-1/4)``."""
    u = as_matrix(raw, 4)
    err = linalg.unitarity_error(u)
    if err > linalg.TOL.unit:
        raise NotUnitary(f"||U^+U - I||_F = {err:.3e} exceeds {linalg.TOL.unit:g}")
    phi = _principal_arg(det4(u))
    return validate(cmath.exp(-1j * phi / 4) * u), NORMALIZE_NOTE


def canonical_matrix(a1: float, a2: float, a3: float) -> np.ndarray:
    """``exp(i/2 (a1 XX + a2 YY + a3 ZZ))``."""
    h = -0.5 * (a1 * kron(SX, SX) + a2 * kron(SY, SY) + a3 * kron(SZ, SZ))
    return linalg.expm_skew(h, 1.0)


def canonical(a1: float, a2: float, a3: float) -> Gate:
    return Gate(canonical_matrix(a1, a2, a3))


_P0 = np.array([[1, 0], [0, 0]], dtype=complex)
_P1 = np.array([[0, 0], [0, 1]], dtype=complex)


def _catalog(name: str) -> np.ndarray:
    if name == "identity":
        return I4.copy()
    if name == "cnot":
        return cmath.exp(1j * math.pi / 4) * (kron(_P0, I2) + kron(_P1, SX))
    if name == "swap":
        m = np.block([[I2 + SZ, SX - 1j * SY], [SX + 1j * SY, I2 - SZ]])
        return 0.5 * cmath.exp(1j * math.pi / 4) * m
    if name == "sqrtswap":
        h, k = (1 - 1j) / 2, (1 + 1j) / 2
        m = np.array([[1, 0, 0, 0], [0, h, k, 0], [0, k, h, 0], [0, 0, 0, 1]])
        return cmath.exp(1j * math.pi / 8) * m
    raise UnknownGate(f"unknown gate {name!r}; known: {', '.join(GATE_NAMES)}, "
                      "canonical(a1,a2,a3)")


GATE_NAMES = ("identity", "cnot", "swap", "sqrtswap")
_CANON_RE = re.compile(r"^canonical\s*\(([^)]*)\)$")


def named_gate(name: str, phase=PhaseFactor.ONE) -> Gate:
    """Catalog gate with the conventional SU(4) phase, times ``phase``.

    ``name`` is one of ``identity``, ``cnot``, ``swap``, ``sqrtswap`` or
    ``canonical(a1,a2,a3)``.
    """
    key = name.strip().lower()
    match = _CANON_RE.match(key)
    if match:
        try:
            coords = [float(v) for v in match.group(1).split(",")]
        except ValueError:
            coords = []
        if len(coords) != 3:
            raise UnknownGate(f"canonical gate needs three numbers, got {name!r}")
        u = canonical_matrix(*coords)
    else:
        u = _catalog(key)
    return validate(PhaseFactor.parse(phase).value * u)


def haar_su2(rng: np.random.Generator) -> np.ndarray:
    """Haar-random SU(2) element from a uniformly random unit quaternion."""
    q = rng.standard_normal(4)
    q0, q1, q2, q3 = q / np.linalg.norm(q)
    return np.array([[q0 - 1j * q3, -q2 - 1j * q1],
                     [q2 - 1j * q1, q0 + 1j * q3]])


def _check_su2(k: np.ndarray) -> np.ndarray:
    k = as_matrix(k, 2)
    if linalg.unitarity_error(k) > linalg.TOL.unit:
        raise NotUnitary("local factor is not unitary")
    d = complex(np.linalg.det(k))
    if abs(d - 1) > linalg.TOL.det:
        raise NotSpecial(f"local factor has det {d:.6g}, expected 1")
    return k


def local_gate(k1: np.ndarray, k2: np.ndarray) -> Gate:
    return Gate(kron(_check_su2(k1), _check_su2(k2)))


def random_local(rng: np.random.Generator) -> Gate:
    return local_gate(haar_su2(rng), haar_su2(rng))


def haar_su4(rng: np.random.Generator) -> Gate:
    """Haar-random SU(4) element (QR of a complex Ginibre matrix)."""
    z = (rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    q = q * (d / np.abs(d))
    return normalize_su4(q)[0]


def matrix_to_json(m: np.ndarray) -> list:
    m = as_matrix(m, 4)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def matrix_from_json(data) -> np.ndarray:
    """Parse the ``[[[re, im] x4] x4]`` row-major layout."""
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"matrix entries must be [re, im] pairs: {exc}") from exc
    if arr.shape != (4, 4, 2):
        raise FormatError(f"matrix must be 4x4 of [re, im] pairs, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise FormatError("matrix has non-finite entries")
    return arr[..., 0] + 1j * arr[..., 1]


def write_gate(path, gate: Gate | np.ndarray) -> None:
    m = gate.u if isinstance(gate, Gate) else gate
    Path(path).write_text(json.dumps({"matrix": matrix_to_json(m)}, indent=1))


def read_matrix(path) -> np.ndarray:
    """Read a raw (unvalidated) matrix from a gate JSON file."""
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(data, dict) or "matrix" not in data:
        raise FormatError(f"{path}: expected an object with a 'matrix' key")
    return matrix_from_json(data["matrix"])
