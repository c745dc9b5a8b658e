import math

import numpy as np
import pytest

from bqtsim import make_settings


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def sharp_a():
    """Alice's trigger matches her state, Bob's is orthogonal to his: A->B weight 1."""
    return make_settings(theta_a=0.0, theta_b=0.0, trigger_a=0.0, trigger_b=math.pi)


def random_unit(rng, n=None):
    cos_t = rng.uniform(-1.0, 1.0, n)
    phi = rng.uniform(0.0, 2 * math.pi, n)
    return np.arccos(cos_t), phi


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line for an acceptance criterion, then assert it."""

    def report(number: int, ok: bool, detail: str, extra: tuple[str, ...] = ()):
        line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        ACCEPTANCE_LINES.extend("    " + e for e in extra)
        print(line)
        for e in extra:
            print("    " + e)
        assert ok, line

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
