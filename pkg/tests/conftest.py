import random

import pytest

from bicirculant.graph import BicirculantSpec, is_connected, validate_spec


def random_spec(rng: random.Random, m_max: int = 50, require_connected=None) -> BicirculantSpec:
    """A random (possibly irregular) spec with 0 in S."""
    while True:
        m = rng.randint(1, m_max)
        n_s = rng.randint(1, min(6, m))
        S = [0] + (rng.sample(range(1, m), n_s - 1) if n_s > 1 else [])
        R, T = set(), set()
        for _ in range(rng.randint(0, 3)):
            if m > 1:
                a = rng.randint(1, m - 1)
                R |= {a, m - a}
        for _ in range(rng.randint(0, 3)):
            if m > 1:
                b = rng.randint(1, m - 1)
                T |= {b, m - b}
        spec = validate_spec(m, sorted(R), S, sorted(T))
        if require_connected is None or is_connected(spec) == require_connected:
            return spec


@pytest.fixture
def rng():
    return random.Random(20260809)
