from pathlib import Path

import pytest

from treelike.formats import parse

FIXTURES = Path(__file__).parent / "fixtures"


def load(name: str, **kw):
    return parse(FIXTURES / name, **kw).payload


@pytest.fixture
def e4():
    return load("e4.sl")


@pytest.fixture
def chain3():
    return load("chain3.sl")


@pytest.fixture
def diamond():
    return load("diamond.sl")


@pytest.fixture
def b2():
    return load("b2.inv")
