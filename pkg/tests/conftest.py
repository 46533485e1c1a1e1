import functools

import pytest
from hypothesis import settings

from codebreak import gf2m
from codebreak.goppa import build_goppa
from codebreak.rng import ShakeRandom

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng(request):
    return ShakeRandom(request.node.nodeid)


@functools.lru_cache(maxsize=None)
def first_code(m, t):
    return build_goppa(m, next(gf2m.iter_irreducibles(m, t)))


@pytest.fixture
def code42():
    return first_code(4, 2)


@pytest.fixture
def code41():
    return first_code(4, 1)
