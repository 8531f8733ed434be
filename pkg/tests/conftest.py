"""
Shared fixtures: regression anchor states and repository paths
"""
from fractions import Fraction
from pathlib import Path

import pytest

from src.states import PureState5

ROOT = Path(__file__).resolve().parent.parent

ANCHOR_ONE = [1, 2, -1, 3, 0, 1, 1, -2, 2, -1, 0, 1, 3, 1, -1, 2,
              1, 0, 2, -3, 1, 1, 0, -1, -2, 1, 1, 0, 1, -1, 2, 1]
ANCHOR_TWO = [((i * 7 + 3) % 11) - 5 for i in range(32)]


@pytest.fixture
def root():
    return ROOT


@pytest.fixture
def anchor_one():
    """Integer state with D = (756, -908, 292, -956, 4) and F = 153216"""
    return PureState5(tuple(Fraction(a) for a in ANCHOR_ONE))


@pytest.fixture
def anchor_two():
    """A_i = ((7i + 3) mod 11) - 5, with D = (1936, 1936, -15488, 7744, 1936) and F = -8433216"""
    return PureState5(tuple(Fraction(a) for a in ANCHOR_TWO))


@pytest.fixture
def basis_state():
    """|00000>"""
    return PureState5.from_mapping({'00000': 1})
