"""Acceptance criteria, one test each; the terminal summary prints PASS/FAIL per criterion."""
import math

import numpy as np
import pytest

from conftest import random_gates, wall_gate
from tocq.bell import invariants
from tocq.gates import SystemConfig, named_gate
from tocq.kak import decompose, minimal_factorization
from tocq.oracle import brute_force_min_time, random_local_dressing
from tocq.pulse import simulate, synthesize
from tocq.weyl import FAMILY_I_II, FAMILY_III_IV, TIME_DEGENERATE, min_time

PI = math.pi
J1 = SystemConfig(1.0)


def worst(values):
    return max(values, default=0.0)


def test_criterion_01_identity_and_phase(criterion):
    errs = [abs(min_time(named_gate("identity")).t_star - 0),
            abs(min_time(named_gate("identity", "i")).t_star - 1)]
    g3 = [abs(invariants(named_gate("identity")).g3 - 1),
          abs(invariants(named_gate("identity", "i")).g3 - 0)]
    criterion(max(errs) <= 1e-9 and max(g3) <= 1e-10,
              f"t* err {max(errs):.1e}, G3 err {max(g3):.1e}")


def test_criterion_02_cnot(criterion):
    r = min_time(named_gate("cnot"))
    t_err = abs(r.t_star - 0.5)
    root_err = max(abs(x - y) for x, y in zip(r.roots, (1, 0, 0)))
    criterion(t_err <= 1e-9 and root_err <= 1e-9 and r.label == TIME_DEGENERATE,
              f"t* err {t_err:.1e}, roots err {root_err:.1e}, label {r.label}")


def test_criterion_03_swap(criterion):
    inv = invariants(named_gate("swap"))
    errs = [abs(min_time(named_gate("swap")).t_star - 1.5),
            abs(min_time(named_gate("swap", "i")).t_star - 1.5),
            abs(inv.g1 - (-1)), abs(inv.g2 - (-3)), abs(inv.g3 - (-0.25))]
    criterion(max(errs) <= 1e-9, f"max err {max(errs):.1e}")


def test_criterion_04_sqrtswap(criterion):
    s, c = math.sin(PI / 8), math.cos(PI / 8)
    errs = [abs(min_time(named_gate("sqrtswap")).t_star - 0.75),
            abs(min_time(named_gate("sqrtswap", "i")).t_star - 1.25),
            abs(invariants(named_gate("sqrtswap")).g3 - c ** 3 * s),
            abs(invariants(named_gate("sqrtswap", "i")).g3 - (-(s ** 3) * c))]
    criterion(max(errs) <= 1e-9, f"max err {max(errs):.1e}")


def test_criterion_05_local_invariance(criterion, rng):
    inv_err = t_err = 0.0
    for base in random_gates(rng, 50):
        ref_inv, ref_t = invariants(base), min_time(base).t_star
        for _ in range(20):
            u = random_local_dressing(base, rng)
            inv_err = max(inv_err, invariants(u).max_diff(ref_inv))
            t_err = max(t_err, abs(min_time(u).t_star - ref_t))
    criterion(inv_err <= 1e-8 and t_err <= 1e-8,
              f"1000 dressings: invariants {inv_err:.1e}, t* {t_err:.1e}")


def test_criterion_06_oracle_equivalence(criterion, rng):
    gates = random_gates(rng, 300)
    err = worst(abs(min_time(u).t_star - brute_force_min_time(u)) for u in gates)
    fams = {min_time(u).label for u in gates}
    criterion(err <= 1e-7 and {"I", "II", "III", "IV"} <= fams,
              f"300 gates: max diff {err:.1e}, labels seen {sorted(fams)}")


def test_criterion_07_kak(criterion, rng):
    rec = sum_err = 0.0
    for u in random_gates(rng, 500):
        rec = max(rec, decompose(u, seed=int(rng.integers(1 << 30))).reconstruction_error)
        r = min_time(u)
        f = minimal_factorization(u, r)
        rec = max(rec, f.reconstruction_error)
        sum_err = max(sum_err, abs(f.coordinate_sum - PI * r.t_star))
    criterion(rec <= 1e-8 and sum_err <= 1e-8,
              f"500 gates: reconstruction {rec:.1e}, coordinate sum {sum_err:.1e}")


def test_criterion_08_synthesis(criterion, rng):
    loss = drift_err = 0.0
    undercut = 0
    for u in random_gates(rng, 200):
        cfg = SystemConfig(float(rng.uniform(1, 500)))
        s = synthesize(u, cfg)
        t = min_time(u, cfg).t_star_seconds
        loss = max(loss, 1 - simulate(s, u).phase_fidelity)
        drift_err = max(drift_err, abs(s.total_drift - t) * cfg.J)
        undercut += s.total_drift < t - 1e-9 / cfg.J
    criterion(loss <= 1e-9 and drift_err <= 1e-9 and undercut == 0,
              f"200 gates: fidelity loss {loss:.1e}, drift err {drift_err:.1e}/J, "
              f"undercuts {undercut}")


def test_criterion_09_global_phase(criterion, rng):
    gates = random_gates(rng, 150) + [wall_gate(rng) for _ in range(50)]
    adj = neg = wall = 0.0
    swaps = walls = 0
    for u in gates:
        r = min_time(u)
        adj = max(adj, abs(min_time(u.dagger()).t_star - r.t_star))
        neg = max(neg, abs(min_time(u.times(-1)).t_star - r.t_star))
        ri = min_time(u.times("i"))
        if abs(r.alphabeta.alpha[0] - PI / 2) <= 1e-8:
            walls += 1
            wall = max(wall, abs(ri.t_star - r.t_star))
        elif {r.family, ri.family} == {FAMILY_I_II, FAMILY_III_IV}:
            swaps += 1
    off_wall = len(gates) - walls
    criterion(max(adj, neg, wall) <= 1e-7 and swaps == off_wall and walls >= 50,
              f"adjoint {adj:.1e}, negation {neg:.1e}, wall {wall:.1e} on {walls} gates, "
              f"family swapped on {swaps}/{off_wall}")


def test_criterion_10_adjoint_invariants(criterion, rng):
    err = 0.0
    for u in random_gates(rng, 200):
        a, b = invariants(u), invariants(u.dagger())
        err = max(err, abs(b.g1 - np.conj(a.g1)), abs(b.g2 - a.g2),
                  abs(b.g3 - a.g3), abs(b.g4 + a.g4))
    criterion(err <= 1e-9, f"200 gates: max err {err:.1e}")
