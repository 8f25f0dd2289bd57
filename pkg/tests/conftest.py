import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from posetchoice.poset import build_poset  # noqa: E402


@pytest.fixture
def c2():
    return build_poset(["x", "y"], [("x", "y")])


@pytest.fixture
def p2a():
    return build_poset(["a", "b"], [])


@pytest.fixture
def vee():
    return build_poset(["a", "b", "c"], [("a", "c"), ("b", "c")])


@pytest.fixture
def one():
    return build_poset(["a"], [])
