import numpy as np
import pytest

from dssy_bench.geometry import convexity_margin


@pytest.fixture
def rng():
    """A fresh, seeded generator so every test draws the same samples."""
    return np.random.default_rng(20240611)


@pytest.fixture
def sample_s_tilde(rng):
    """
    Returns a function drawing s~ with convexity margin above ``margin``,
    i.e. the bilinear part of a strictly convex cell.
    """
    def sample(margin=0.05):
        while True:
            s = rng.uniform(-0.5, 0.5, size=2)
            if convexity_margin(s) > margin:
                return s

    return sample
