import json
import math

import numpy as np
import pytest

from conftest import random_gates
from tocq.bell import invariants, is_local
from tocq.errors import MoveSetExhausted
from tocq.gates import Gate, canonical, canonical_matrix, haar_su4, named_gate
from tocq.kak import (CartanFactorization, RECON_TOL, canonicalize, decompose,
                      minimal_factorization, move_flip_pair, move_shift_2pi,
                      move_shift_pi_pair, move_swap, write_factorization)
from tocq.linalg import frobenius_dist
from tocq.weyl import min_time

PI = math.pi


def sorted_sin2(a):
    return sorted(np.sin(np.asarray(a)) ** 2)


def test_decompose_identity():
    f = decompose(named_gate("identity"))
    assert f.reconstruction_error <= 1e-10
    assert sorted_sin2(f.a) == pytest.approx([0, 0, 0], abs=1e-12)


def test_decompose_canonical():
    f = decompose(canonical(0.3, 0.2, 0.1))
    assert sorted_sin2(f.a) == pytest.approx(sorted_sin2([0.3, 0.2, 0.1]), abs=1e-9)


def test_decompose_cnot():
    f = decompose(named_gate("cnot"))
    assert sorted_sin2(f.a) == pytest.approx([0, 0, 1], abs=1e-9)


def test_decompose_random(rng):
    for u in random_gates(rng, 60):
        f = decompose(u, seed=int(rng.integers(1 << 30)))
        assert f.reconstruction_error <= RECON_TOL
        assert is_local(f.k1) and is_local(f.k2)
        assert invariants(canonical(*f.a)).max_diff(invariants(u)) < 1e-8


def test_decompose_degenerate_spectra():
    for name in ("swap", "sqrtswap", "cnot"):
        for phase in ("1", "i", "-1", "-i"):
            assert decompose(named_gate(name, phase)).reconstruction_error <= 1e-10


def test_canonicalize_identity_needs_no_moves():
    f = canonicalize(decompose(named_gate("identity")))
    assert f.a == pytest.approx([0, 0, 0], abs=1e-12)


@pytest.mark.parametrize("name, phase, total", [
    ("swap", "1", 1.5 * PI), ("sqrtswap", "i", 1.25 * PI),
    ("sqrtswap", "1", 0.75 * PI), ("cnot", "1", 0.5 * PI), ("identity", "i", PI),
])
def test_canonical_sums(name, phase, total):
    u = named_gate(name, phase)
    f = minimal_factorization(u, min_time(u))
    assert f.coordinate_sum == pytest.approx(total, abs=1e-8)


def test_canonical_form_shape(rng):
    for u in random_gates(rng, 60):
        r = min_time(u)
        f = minimal_factorization(u, r)
        al = r.alphabeta.alpha
        assert f.a[1:] == pytest.approx(list(al[1:]), abs=1e-8)
        assert abs(f.a[0]) in (pytest.approx(al[0], abs=1e-8),
                               pytest.approx(PI - al[0], abs=1e-8))
        assert f.reconstruction_error <= RECON_TOL


def test_canonicalize_rejects_wrong_target():
    u = named_gate("sqrtswap")
    with pytest.raises(MoveSetExhausted):
        canonicalize(decompose(u), min_time(u.times("i")))


@pytest.mark.parametrize("move, args", [
    (move_shift_2pi, (0, 1)), (move_shift_2pi, (2, -1)),
    (move_shift_pi_pair, (0, 1, 1, -1)), (move_shift_pi_pair, (1, 2, -1, -1)),
    (move_shift_pi_pair, (0, 2, 1, 1)),
    (move_flip_pair, (0,)), (move_flip_pair, (1,)), (move_flip_pair, (2,)),
    (move_swap, (0, 1)), (move_swap, (0, 2)), (move_swap, (1, 2)),
])
def test_moves_preserve_the_gate(move, args, rng):
    for _ in range(10):
        a = rng.uniform(-PI, PI, 3)
        left, new, right = move(a, *args)
        assert is_local(Gate(left)) and is_local(Gate(right))
        assert frobenius_dist(left @ canonical_matrix(*new) @ right,
                              canonical_matrix(*a)) < 1e-12


def test_factorization_json_roundtrip(tmp_path):
    f = decompose(haar_su4(np.random.default_rng(3)))
    path = tmp_path / "f.json"
    write_factorization(path, f)
    data = json.loads(path.read_text())
    assert set(data) == {"k1", "a", "k2", "error"}
    g = CartanFactorization.from_json(data)
    assert frobenius_dist(g.matrix(), f.matrix()) == 0
    assert g.a == pytest.approx(f.a, abs=0)
