import numpy as np
import pytest

from biunivalent.series import NormalizedFunction


def random_disk(rng, size=None, radius=1.0):
    """Uniform samples from the disk ``|z| < radius``."""
    r = radius * np.sqrt(rng.random(size))
    return r * np.exp(2j * np.pi * rng.random(size))


def random_function(rng, order=16, radius=1.0, decay=1.0):
    tail = random_disk(rng, order - 1, radius) * decay ** np.arange(order - 1)
    return NormalizedFunction.from_taylor(tail, order)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
