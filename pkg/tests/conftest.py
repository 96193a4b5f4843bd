import random

import pytest

from uwword import WideConfig

CONFIGS = [WideConfig(8, 4), WideConfig(16, 16), WideConfig(64, 64)]


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


@pytest.fixture(params=CONFIGS, ids=lambda c: f"w{c.w}k{c.k}")
def cfg(request):
    return request.param
