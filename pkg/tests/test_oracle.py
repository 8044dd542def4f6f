import math

import pytest

from conftest import random_gates
from tocq.bell import invariants
from tocq.errors import NoCandidateMatches
from tocq.gates import SystemConfig, canonical, named_gate
from tocq.oracle import (TABLE_ROWS, brute_force_min_time, candidate_families,
                         enumerate_table, family_values, random_local_dressing,
                         verified_candidates)
from tocq.weyl import AlphaBeta, min_time

PI = math.pi


def family_min(ab, fam):
    return min(e.row_sum for e in enumerate_table(ab) if e.family == fam)


def test_table_shape():
    assert len(TABLE_ROWS) == 64
    labels = [lab for lab, _ in TABLE_ROWS]
    assert all(labels.count(x) == 16 for x in ("I", "II", "III", "IV"))
    assert len({row for row in TABLE_ROWS}) == 64


def test_table_examples():
    assert family_min(AlphaBeta.from_alphas((0, 0, 0)), "I/II") == 0
    ab = AlphaBeta.from_alphas((PI / 2, 0, 0))
    assert family_min(ab, "I/II") == pytest.approx(PI / 2, abs=1e-15)
    assert family_min(ab, "III/IV") == pytest.approx(PI / 2, abs=1e-15)
    ab = AlphaBeta.from_alphas((PI / 2,) * 3)
    assert family_min(ab, "I/II") == pytest.approx(1.5 * PI, abs=1e-14)
    assert family_min(ab, "III/IV") == pytest.approx(1.5 * PI, abs=1e-14)


def test_row_sums_take_four_values_per_family(rng):
    for _ in range(50):
        ab = AlphaBeta.from_alphas(sorted(rng.uniform(0, PI / 2, 3), reverse=True))
        vals = family_values(ab)
        sums = {}
        for e in enumerate_table(ab):
            sums.setdefault(e.family, set()).add(round(e.row_sum, 9))
        for fam in ("I/II", "III/IV"):
            assert sums[fam] == {round(v, 9) for v in vals[fam]}
        assert len(sums["I/II"] | sums["III/IV"]) == 8


def test_family_minimum_is_first_value(rng):
    for _ in range(100):
        ab = AlphaBeta.from_alphas(sorted(rng.uniform(0, PI / 2, 3), reverse=True))
        vals = family_values(ab)
        assert min(vals["I/II"]) == pytest.approx(vals["I/II"][0], abs=1e-14)
        assert min(vals["III/IV"]) == pytest.approx(vals["III/IV"][0], abs=1e-14)


def test_candidate_families():
    ab = AlphaBeta.from_alphas((1.0, 0.5, 0.2))
    assert candidate_families(ab.cos_product, ab) == {"I/II"}
    assert candidate_families(ab.sin_product, ab) == {"III/IV"}
    assert candidate_families(5.0, ab) == set()
    wall = AlphaBeta.from_alphas((PI / 2, 0.5, 0.2))
    assert candidate_families(wall.cos_product, wall) == {"I/II", "III/IV"}


def test_verified_candidates_sqrtswap():
    found = verified_candidates(named_gate("sqrtswap"))
    assert found and all(e.class_label in ("I", "II") for e in found)


@pytest.mark.parametrize("u, units", [
    (named_gate("swap"), 1.5), (named_gate("sqrtswap"), 0.75),
    (canonical(0, 0, 0), 0.0), (named_gate("identity", "i"), 1.0),
    (named_gate("cnot"), 0.5),
])
def test_brute_force_examples(u, units):
    assert brute_force_min_time(u) == pytest.approx(units, abs=1e-12)


def test_brute_force_seconds():
    assert brute_force_min_time(named_gate("swap"), SystemConfig(10.0)) == pytest.approx(0.15)


def test_brute_force_agrees_with_weyl(rng):
    for u in random_gates(rng, 60):
        assert brute_force_min_time(u) == pytest.approx(min_time(u).t_star, abs=1e-7)


def test_no_candidate(monkeypatch):
    import tocq.oracle as oracle
    monkeypatch.setattr(oracle, "enumerate_table", lambda ab: [])
    with pytest.raises(NoCandidateMatches):
        brute_force_min_time(named_gate("swap"))


def test_dressing_preserves_invariants(rng):
    u = canonical(0.8, 0.3, -1.9)
    for _ in range(30):
        assert invariants(random_local_dressing(u, rng)).max_diff(invariants(u)) < 1e-8


def test_dressing_is_seeded():
    u = named_gate("cnot")
    a, b = random_local_dressing(u, 5), random_local_dressing(u, 5)
    assert (a.u == b.u).all()
