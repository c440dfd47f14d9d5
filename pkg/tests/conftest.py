import random

import pytest


@pytest.fixture
def rng():
    return random.Random(20260811)


def random_tokens(rng, alphabet=("a", "b", "c"), max_len=8):
    n = rng.randint(0, max_len)
    return [rng.choice(alphabet) for _ in range(n)]
