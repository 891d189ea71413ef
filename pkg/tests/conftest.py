import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fiedlertree.generators import gen_path, gen_rose_on_path, gen_random_tree


@pytest.fixture
def rose_trap():
    """Path of 9 edges, rose hub on vertex 3 carrying 12 petals."""
    return gen_rose_on_path(9, 3, 12)


@pytest.fixture
def path10():
    return gen_path(10)


def random_trees(count, max_n, seed0=1000, min_n=2):
    """Deterministic batch of uniform random labeled trees."""
    out = []
    for i in range(count):
        n = min_n + (seed0 + i * 7919) % (max_n - min_n + 1)
        out.append(gen_random_tree(n, seed=seed0 + i))
    return out
