"""Hard-pulse schedules on the coupled two-spin system.

Local gates are instantaneous; the only costly resource is the drift
``H_d = (pi/2) J sz x sz``. A drift of length ``tau`` realizes the canonical
gate ``[0, 0, -pi J tau]``; the other axes and signs are reached by
conjugating with fixed local rotations.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np

from .bell import is_local
from .errors import FormatError, GateError, SynthesisFailed
from .gates import Gate, SystemConfig, matrix_from_json, matrix_to_json, validate
from .kak import minimal_factorization
from .linalg import I2, SZ, dag, expm_skew, kron
from .weyl import min_time

FIDELITY_TOL = 1e-9
ZERO_COORD = 1e-14
LOCALITY_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class LocalPulse:
    k: Gate


@dataclass(frozen=True)
class Drift:
    duration: float


Segment = Union[LocalPulse, Drift]


@dataclass(frozen=True, eq=False)
class PulseSchedule:
    segments: tuple[Segment, ...]
    config: SystemConfig

    def __post_init__(self):
        for seg in self.segments:
            if isinstance(seg, Drift):
                if not (math.isfinite(seg.duration) and seg.duration >= 0):
                    raise FormatError(f"drift duration must be finite and >= 0, got {seg.duration}")
            elif not is_local(seg.k, LOCALITY_TOL):
                raise FormatError("local pulse is not in SU(2)xSU(2)")

    @property
    def total_drift(self) -> float:
        return sum(s.duration for s in self.segments if isinstance(s, Drift))

    def to_json(self) -> dict:
        segs = []
        for s in self.segments:
            if isinstance(s, Drift):
                segs.append({"type": "drift", "seconds": s.duration})
            else:
                segs.append({"type": "local", "matrix": matrix_to_json(s.k.u)})
        return {"J_hz": self.config.J, "segments": segs}

    @classmethod
    def from_json(cls, data) -> "PulseSchedule":
        if not isinstance(data, dict) or "J_hz" not in data or "segments" not in data:
            raise FormatError("schedule needs 'J_hz' and 'segments'")
        try:
            cfg = SystemConfig(float(data["J_hz"]))
        except (TypeError, ValueError) as exc:
            raise FormatError(f"bad J_hz: {exc}") from exc
        segs: list[Segment] = []
        for i, s in enumerate(data["segments"]):
            kind = s.get("type") if isinstance(s, dict) else None
            if kind == "drift":
                try:
                    segs.append(Drift(float(s["seconds"])))
                except (KeyError, TypeError, ValueError) as exc:
                    raise FormatError(f"segment {i}: bad drift ({exc})") from exc
            elif kind == "local":
                try:
                    segs.append(LocalPulse(validate(matrix_from_json(s["matrix"]))))
                except KeyError as exc:
                    raise FormatError(f"segment {i}: local pulse without matrix") from exc
                except GateError as exc:
                    raise FormatError(f"segment {i}: {exc}") from exc
            else:
                raise FormatError(f"segment {i}: unknown type {kind!r}")
        return cls(tuple(segs), cfg)


def write_schedule(path, s: PulseSchedule) -> None:
    Path(path).write_text(json.dumps(s.to_json(), indent=1))


def read_schedule(path) -> PulseSchedule:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc
    return PulseSchedule.from_json(data)


def drift_propagator(tau: float, cfg: SystemConfig) -> np.ndarray:
    return expm_skew(0.5 * math.pi * cfg.J * kron(SZ, SZ), tau)


def _ry(angle):
    return np.array([[math.cos(angle / 2), -math.sin(angle / 2)],
                     [math.sin(angle / 2), math.cos(angle / 2)]], dtype=complex)


def _rx(angle):
    c, s = math.cos(angle / 2), math.sin(angle / 2)
    return np.array([[c, -1j * s], [-1j * s, c]])


# W such that W (sz x sz) W^+ = s_g x s_g
AXIS_ROTATION = {
    "x": kron(_ry(math.pi / 2), _ry(math.pi / 2)),
    "y": kron(_rx(-math.pi / 2), _rx(-math.pi / 2)),
    "z": np.eye(4, dtype=complex),
}
# F (sz x sz) F^+ = -(sz x sz)
SIGN_FLIP = kron(np.array([[0, 1j], [1j, 0]]), I2)


@dataclass(frozen=True, eq=False)
class SimulationReport:
    achieved: np.ndarray
    total_drift_seconds: float
    fidelity: float | None = None
    phase_fidelity: float | None = None
    extra: dict = field(default_factory=dict)


def simulate(s: PulseSchedule, target: Gate | None = None) -> SimulationReport:
    """Propagate the schedule in time order.

    ``fidelity`` is ``|Tr(A^+ U)|/4``; ``phase_fidelity`` is ``Re Tr(A^+ U)/4``,
    which is below 1 whenever the global phase is wrong.
    """
    achieved = np.eye(4, dtype=complex)
    for seg in s.segments:
        if isinstance(seg, Drift):
            achieved = drift_propagator(seg.duration, s.config) @ achieved
        else:
            achieved = seg.k.u @ achieved
    fid = pfid = None
    if target is not None:
        overlap = np.trace(dag(achieved) @ target.u) / 4
        fid = min(1.0, float(abs(overlap)))
        pfid = min(1.0, float(overlap.real))
    return SimulationReport(achieved, s.total_drift, fid, pfid)


def _coordinate_steps(a: float, axis: str, cfg: SystemConfig):
    """(pre, tau, post) with ``post D(tau) pre = exp(i a/2 s_g x s_g)``."""
    w = AXIS_ROTATION[axis]
    conj = w @ SIGN_FLIP if a > 0 else w
    return dag(conj), abs(a) / (math.pi * cfg.J), conj


def synthesize(u: Gate, cfg: SystemConfig, seed: int | None = 0) -> PulseSchedule:
    """Minimal-time hard-pulse schedule for ``u`` (global phase included)."""
    target_class = min_time(u, cfg)
    f = minimal_factorization(u, target_class, seed=seed)

    raw: list = [f.k2.u]
    for axis, a in zip(("z", "y", "x"), (f.a[2], f.a[1], f.a[0])):
        if abs(a) < ZERO_COORD:
            continue
        pre, tau, post = _coordinate_steps(a, axis, cfg)
        raw += [pre, Drift(tau), post]
    raw.append(f.k1.u)

    segments: list[Segment] = []
    pending = None
    for item in raw:
        if isinstance(item, Drift):
            if pending is not None:
                segments.append(LocalPulse(Gate(pending)))
                pending = None
            segments.append(item)
        else:
            pending = item if pending is None else item @ pending
    if pending is not None and np.linalg.norm(pending - np.eye(4)) > 1e-15:
        segments.append(LocalPulse(Gate(pending)))
    schedule = PulseSchedule(tuple(segments), cfg)

    report = simulate(schedule, u)
    if report.phase_fidelity < 1 - FIDELITY_TOL:
        raise SynthesisFailed(f"schedule reaches phase-sensitive fidelity "
                              f"{report.phase_fidelity:.12f} only")
    t_star = target_class.t_star_seconds
    if abs(schedule.total_drift - t_star) > FIDELITY_TOL:
        raise SynthesisFailed(f"total drift {schedule.total_drift} differs from t* {t_star}")
    return schedule
