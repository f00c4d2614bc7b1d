from __future__ import annotations

import random

import pytest

from rankring.extension import Extension
from rankring.ring import ChainRing

# X^4 + 4X^3 + 6X^2 + 3X + 1 over Z/8, residue X^4 + X + 1
H_Z8_M4 = (1, 3, 6, 4, 1)
# X^5 + X^2 + 1 over Z/4
H_Z4_M5 = (1, 0, 1, 0, 0, 1)


@pytest.fixture
def z4():
    return ChainRing(2, 2)


@pytest.fixture
def z8():
    return ChainRing(2, 3)


@pytest.fixture
def z9():
    return ChainRing(3, 2)


@pytest.fixture
def s8():
    return Extension(ChainRing(2, 3), H_Z8_M4)


@pytest.fixture
def s4_m5():
    return Extension(ChainRing(2, 2), H_Z4_M5)


@pytest.fixture
def s4_m2():
    return Extension(ChainRing(2, 2), (1, 1, 1))


@pytest.fixture
def s9_m2():
    return Extension(ChainRing(3, 2), (1, 0, 1))


@pytest.fixture
def rng():
    return random.Random(20240601)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
