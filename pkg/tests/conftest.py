from fractions import Fraction

import pytest

from tauq import MomentSequence, build_moments


@pytest.fixture(scope="session")
def catalan():
    return MomentSequence.named("catalan")


@pytest.fixture(scope="session")
def hermite():
    return MomentSequence.named("hermite")


@pytest.fixture(scope="session")
def formal_c():
    return MomentSequence.formal("c")


@pytest.fixture(scope="session")
def formal_d():
    return MomentSequence.formal("d")


@pytest.fixture(scope="session")
def catalan_window(catalan):
    # wide enough for every finite-support operation used in the tests
    return MomentSequence.window(0, [catalan.get(i) for i in range(13)])


@pytest.fixture(scope="session")
def linear_window():
    return MomentSequence.window(0, [Fraction(i + 1) for i in range(13)])


@pytest.fixture(scope="session")
def rand_window():
    def make(seed, lo, hi, max_abs_num=9, max_den=7):
        return build_moments({"kind": "random", "seed": seed, "lo": lo,
                              "hi": hi, "max_abs_num": max_abs_num,
                              "max_den": max_den})
    return make
