import math

import numpy as np
import pytest

from tocq.gates import Gate, canonical, haar_su4
from tocq.oracle import random_local_dressing

ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_gates(rng, n, boundary=True):
    """Haar gates, dressed canonical gates, and dressed gates near alpha1 = pi/2."""
    out = []
    for i in range(n):
        kind = i % 3 if boundary else i % 2
        if kind == 0:
            out.append(haar_su4(rng))
            continue
        a = rng.uniform(-math.pi, math.pi, 3)
        if kind == 2:
            a[rng.integers(3)] = rng.choice([-1, 1]) * math.pi / 2 + rng.uniform(-1e-3, 1e-3)
        out.append(random_local_dressing(canonical(*a), rng))
    return out


def wall_gate(rng) -> Gate:
    """Dressed canonical gate with one coordinate exactly pi/2."""
    a = list(rng.uniform(-math.pi / 2, math.pi / 2, 3))
    a[0] = math.pi / 2
    return random_local_dressing(canonical(*a), rng)


@pytest.fixture
def criterion(request):
    name = request.node.name

    def record(ok: bool, detail: str = ""):
        ACCEPTANCE_RESULTS[name] = (bool(ok), detail)
        assert ok, detail

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in sorted(ACCEPTANCE_RESULTS.items()):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
