import random

import pytest

from dynsink import validate_network


def make_network(positions, weights, capacity=1.0, tau=1.0):
    return validate_network(
        {
            "positions": list(positions),
            "weights": list(weights),
            "capacity": capacity,
            "tau": tau,
        }
    )


def random_network(rng: random.Random, max_n: int, min_n: int = 1):
    n = rng.randint(min_n, max_n)
    positions = [0.0]
    for _ in range(n - 1):
        positions.append(positions[-1] + rng.uniform(0.3, 8.0))
    weights = [rng.uniform(0.3, 8.0) for _ in range(n)]
    return make_network(
        positions, weights, capacity=rng.uniform(0.5, 4.0), tau=rng.uniform(0.5, 4.0)
    )


@pytest.fixture
def net_a():
    # three vertices, middle one heavy: the standing worked example
    return make_network([0.0, 1.0, 3.0], [1.0, 2.0, 1.0])
