"""Command-line front end: ``tocq <command> [gate source] [options]``."""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import __doc__ as _pkg_doc
from .errors import GateError, NumericalError, TocqError
from .gates import (Gate, PhaseFactor, SystemConfig, haar_su4, named_gate, normalize_su4,
                    read_matrix, validate)
from .kak import minimal_factorization
from .oracle import MATCH_TOL, brute_force_min_time
from .pulse import read_schedule, simulate, synthesize, write_schedule
from .weyl import DEFAULT_EPS, ClassificationResult, min_time

EXIT_ARGS, EXIT_GATE, EXIT_NUMERIC = 2, 3, 4
J_ENV = "TOCQ_J"
COMMANDS = ("invariants", "classify", "mintime", "kak", "synth", "simulate",
            "phase-scan", "oracle-check")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def pi_multiple(x: float) -> str:
    return f"{x:.12g} ({x / math.pi:.12g}π)"


def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    src = common.add_argument_group("gate source")
    src.add_argument("--gate", help="identity, cnot, swap, sqrtswap, canonical(a1,a2,a3) "
                                    "or haar (random, uses --seed)")
    src.add_argument("--phase", default="1", help="global phase: 1, i, -1 or -i")
    src.add_argument("--matrix", help="gate JSON file {\"matrix\": [[[re, im], ...], ...]}")
    src.add_argument("--normalize", action="store_true",
                     help="project a --matrix gate onto SU(4) (changes its phase)")
    common.add_argument("--J", type=float, default=None,
                        help=f"coupling in Hz (default: ${J_ENV} if set)")
    common.add_argument("--eps", type=float, default=DEFAULT_EPS, help="class decision tolerance")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = _Parser(prog="tocq", description=_pkg_doc.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("invariants", "classify", "mintime", "phase-scan", "oracle-check"):
        sub.add_parser(name, parents=[common])
    kak = sub.add_parser("kak", parents=[common])
    kak.add_argument("--out", help="write the factorization JSON here")
    synth = sub.add_parser("synth", parents=[common])
    synth.add_argument("--out", help="write the schedule JSON here")
    simp = sub.add_parser("simulate", parents=[common])
    simp.add_argument("--schedule", required=True, help="schedule JSON file")
    return parser


def _gate(args, required=True) -> Gate | None:
    if args.gate and args.matrix:
        raise UsageError("give exactly one of --gate and --matrix")
    try:
        phase = PhaseFactor.parse(args.phase)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.matrix:
        raw = read_matrix(args.matrix)
        gate = normalize_su4(raw)[0] if args.normalize else validate(raw)
        return gate.times(phase)
    if args.gate:
        if args.gate.strip().lower() == "haar":
            return haar_su4(np.random.default_rng(args.seed)).times(phase)
        return named_gate(args.gate, phase)
    if required:
        raise UsageError("a gate source is required (--gate or --matrix)")
    return None


def _config(args, required=False) -> SystemConfig | None:
    j = args.J
    if j is None and os.environ.get(J_ENV):
        try:
            j = float(os.environ[J_ENV])
        except ValueError as exc:
            raise UsageError(f"${J_ENV} is not a number") from exc
    if j is None:
        if required:
            raise UsageError(f"--J is required for {args.command}")
        return None
    try:
        return SystemConfig(j)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _result_dict(r: ClassificationResult) -> dict:
    ab = r.alphabeta
    out = dict(r.invariants.as_dict())
    out.update({
        "roots_sin2_a": list(r.roots),
        "alpha": list(ab.alpha), "beta": list(ab.beta),
        "prod_cos_beta": ab.cos_product, "prod_sin_beta": ab.sin_product,
        "half_sum_sin_2beta": ab.sin2_sum,
        "class": r.label, "family": r.family,
        "t_star_units_inv_J": r.t_star_in_units_of_inverse_J,
    })
    if r.t_star_seconds is not None:
        out["t_star_seconds"] = r.t_star_seconds
    return out


def _t_text(r: ClassificationResult) -> str:
    line = f"t* = {r.t_star:.12g} / J"
    if r.t_star_seconds is not None:
        line += f" = {r.t_star_seconds:.12g} s"
    return line


def _invariant_text(r: ClassificationResult) -> list[str]:
    inv = r.invariants
    return [f"G1 = {inv.g1.real:.12g} {inv.g1.imag:+.12g}i",
            f"G2 = {inv.g2:.12g}", f"G3 = {inv.g3:.12g}", f"G4 = {inv.g4:.12g}"]


def _classify_text(r: ClassificationResult) -> list[str]:
    ab = r.alphabeta
    lines = _invariant_text(r)
    lines.append("sin^2 a_k = " + ", ".join(f"{c:.12g}" for c in r.roots))
    lines += [f"alpha{k + 1} = {pi_multiple(x)}" for k, x in enumerate(ab.alpha)]
    lines += [f"beta{k + 1} = {pi_multiple(x)}" for k, x in enumerate(ab.beta)]
    lines.append(f"prod cos beta = {ab.cos_product:.12g}, prod sin beta = {ab.sin_product:.12g}")
    lines.append(f"class {r.label} (family {r.family})")
    lines.append(_t_text(r))
    return lines


def run(argv=None) -> tuple[int, str]:
    """Execute a command and return ``(exit status, output text)``."""
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    try:
        args = _build_parser().parse_args(argv)
        payload, lines = _dispatch(args)
        status = payload.pop("_status", 0)
    except UsageError as exc:
        return _fail(EXIT_ARGS, "UsageError", str(exc), as_json)
    except GateError as exc:
        return _fail(EXIT_GATE, type(exc).__name__, str(exc), as_json)
    except NumericalError as exc:
        return _fail(EXIT_NUMERIC, type(exc).__name__, str(exc), as_json)
    except TocqError as exc:  # pragma: no cover - every subclass is handled above
        return _fail(EXIT_NUMERIC, type(exc).__name__, str(exc), as_json)
    if as_json:
        return status, json.dumps(payload, indent=2, sort_keys=True)
    return status, "\n".join(lines)


def _fail(code: int, kind: str, message: str, as_json: bool) -> tuple[int, str]:
    if as_json:
        return code, json.dumps({"error": {"type": kind, "message": message,
                                           "exit_code": code}}, indent=2, sort_keys=True)
    return code, f"error ({kind}): {message}"


def _dispatch(args):
    cmd = args.command
    if cmd == "simulate":
        schedule = read_schedule(args.schedule)
        target = _gate(args, required=False)
        rep = simulate(schedule, target)
        payload = {"achieved": [[[z.real, z.imag] for z in row] for row in rep.achieved],
                   "total_drift_seconds": rep.total_drift_seconds,
                   "J_hz": schedule.config.J, "segments": len(schedule.segments)}
        lines = [f"segments: {len(schedule.segments)}",
                 f"total drift: {rep.total_drift_seconds:.12g} s (J = {schedule.config.J:g} Hz)"]
        if target is not None:
            payload.update(fidelity=rep.fidelity, phase_fidelity=rep.phase_fidelity)
            lines.append(f"fidelity |Tr(A^+U)|/4 = {rep.fidelity:.15f}")
            lines.append(f"phase-sensitive fidelity Re Tr(A^+U)/4 = {rep.phase_fidelity:.15f}")
        return payload, lines

    gate = _gate(args)
    cfg = _config(args, required=(cmd == "synth"))

    if cmd == "phase-scan":
        rows, lines = [], ["phase  class                 t* [1/J]"]
        for ph in PhaseFactor:
            r = min_time(gate.times(ph), cfg, args.eps)
            row = {"phase": ph.label, "class": r.label, "family": r.family,
                   "t_star_units_inv_J": r.t_star}
            if r.t_star_seconds is not None:
                row["t_star_seconds"] = r.t_star_seconds
            rows.append(row)
            lines.append(f"{ph.label:>5}  {r.label:<20}  {r.t_star:.12g}")
        return {"phases": rows}, lines

    r = min_time(gate, cfg, args.eps)
    if cmd == "invariants":
        out = dict(r.invariants.as_dict())
        out.update(a=r.invariants.a, b=r.invariants.b, c=r.invariants.c)
        return out, _invariant_text(r)
    if cmd == "classify":
        return _result_dict(r), _classify_text(r)
    if cmd == "mintime":
        out = {"class": r.label, "t_star_units_inv_J": r.t_star}
        if r.t_star_seconds is not None:
            out["t_star_seconds"] = r.t_star_seconds
        return out, [_t_text(r)]
    if cmd == "kak":
        f = minimal_factorization(gate, r, seed=args.seed)
        if args.out:
            from .kak import write_factorization
            write_factorization(args.out, f)
        lines = [f"a{k + 1} = {pi_multiple(x)}" for k, x in enumerate(f.a)]
        lines += [f"sum |a_k| = {pi_multiple(f.coordinate_sum)}",
                  f"reconstruction error = {f.reconstruction_error:.3e}"]
        return f.to_json(), lines
    if cmd == "synth":
        s = synthesize(gate, cfg, seed=args.seed)
        if args.out:
            write_schedule(args.out, s)
        lines = [f"{len(s.segments)} segments, total drift {s.total_drift:.12g} s",
                 _t_text(r)]
        return s.to_json(), lines
    if cmd == "oracle-check":
        brute = brute_force_min_time(gate)
        agree = abs(brute - r.t_star) <= MATCH_TOL
        out = {"weyl_t_star_units_inv_J": r.t_star, "oracle_t_star_units_inv_J": brute,
               "difference": abs(brute - r.t_star), "agree": agree, "class": r.label}
        if not agree:
            out["_status"] = EXIT_NUMERIC
        lines = [f"weyl:   t* = {r.t_star:.12g} / J", f"oracle: t* = {brute:.12g} / J",
                 "agree" if agree else "DISAGREE"]
        return out, lines
    raise UsageError(f"unknown command {cmd}")  # pragma: no cover


def main(argv=None) -> int:
    status, text = run(argv)
    stream = sys.stderr if status and not ("--json" in (argv or sys.argv[1:])) else sys.stdout
    print(text, file=stream)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
