import random

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_word_letters(rng, max_len=12, alphabet=("a", "b")):
    n = rng.randint(0, max_len)
    return tuple((rng.choice(alphabet), rng.choice([-3, -2, -1, 1, 2, 3])) for _ in range(n))


@pytest.fixture
def rng():
    return random.Random(12345)
