"""Shared code fixtures."""
import random

import pytest

from services.bch_code import bch_build
from services.crt_encoder import crt_setup
from services.gf2poly import Gf2Poly

EXAMPLE1_G = Gf2Poly.parse("x^10+x^8+x^5+x^4+x^2+x+1")


@pytest.fixture(scope="session")
def example1_code():
    """[15,5] code from GF(16) with x^4+x+1."""
    return bch_build(4, 7, Gf2Poly.parse("x^4+x+1"))


@pytest.fixture(scope="session")
def code31():
    return bch_build(5, 7)


@pytest.fixture(scope="session")
def code63():
    return bch_build(6, 11)


@pytest.fixture(scope="session")
def example2_code():
    return bch_build(11, 23)


@pytest.fixture(scope="session")
def example3_code():
    return bch_build(13, 79)


@pytest.fixture(scope="session")
def hamming_code():
    """[15,11] code: delta=3 gives a single, irreducible factor."""
    return bch_build(4, 3)


@pytest.fixture(scope="session")
def example1_plan(example1_code):
    return crt_setup(example1_code)


@pytest.fixture(scope="session")
def example2_plan(example2_code):
    return crt_setup(example2_code)


@pytest.fixture(scope="session", params=[(4, 7), (5, 7), (6, 11), (11, 23)], ids=lambda p: f"t{p[0]}d{p[1]}")
def matrix_code(request):
    return bch_build(*request.param)


@pytest.fixture
def rng():
    return random.Random(12345)
