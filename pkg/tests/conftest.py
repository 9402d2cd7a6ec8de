import pytest

from corings import fixtures as fx
from corings.comatrix import grouplike_family


@pytest.fixture(scope="session")
def F1():
    return fx.f1()


@pytest.fixture(scope="session")
def F2():
    return fx.f2()


@pytest.fixture(scope="session")
def F3():
    return fx.f3()


@pytest.fixture(scope="session")
def F4():
    return fx.f4()


@pytest.fixture(scope="session")
def families(F1, F2, F3, F4):
    """Grouplike families keyed by (fixture name, tuple of grouplike names)."""
    out = {}
    for f, names in [(F1, ["1"]), (F2, ["e"]), (F2, ["e", "s"]), (F3, ["e"]), (F3, ["e", "s"]),
                     (F4, ["1(x)1"])]:
        out[(f.name, tuple(names))] = (f, grouplike_family(f.coring, f.grouplike_list(names)))
    return out
