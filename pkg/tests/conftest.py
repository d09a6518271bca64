import sys
from pathlib import Path

import numpy as np
import pytest

from chanmetric.optimize import OptConfig

sys.path.insert(0, str(Path(__file__).parent))

FAST = OptConfig(restarts=4, seed=0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def cfg():
    return FAST


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        title, passed, detail = mod.RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if passed else 'FAIL'}  {title}: {detail}")
