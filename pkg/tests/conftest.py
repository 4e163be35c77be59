import random

import pytest

from qchab.padic import LocalRing, SemiLocalRing, Zp


@pytest.fixture
def rng():
    return random.Random(0)


@pytest.fixture
def z5():
    return Zp(5, 3)


@pytest.fixture
def gaussian7():
    # Z_7[i]: x^2 + 1 is irreducible mod 7
    return LocalRing(7, 3, e=1, f=2, unramified_poly=[1, 0, 1])


@pytest.fixture
def two_places():
    return SemiLocalRing([Zp(5, 4), Zp(5, 4)])


@pytest.fixture(scope="session")
def bundled():
    from qchab.app import load_instance
    from qchab.cli import sample_path
    return load_instance(sample_path("bundled"))


@pytest.fixture(scope="session")
def rigged():
    from qchab.app import load_instance
    from qchab.cli import sample_path
    return load_instance(sample_path("rigged"))
