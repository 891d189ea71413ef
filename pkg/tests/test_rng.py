import numpy as np

from fiedlertree.rng import philox4x64_block, uniform_block


def test_matches_numpy_philox():
    """numpy's Philox bumps counter word 0 before producing each block."""
    rng = np.random.default_rng(5)
    for _ in range(25):
        c = [int(x) for x in rng.integers(0, 2**63, 4)]
        key = [int(x) for x in rng.integers(0, 2**63, 2)]
        bg = np.random.Philox(
            counter=np.array(c, dtype=np.uint64), key=np.array(key, dtype=np.uint64)
        )
        ref = list(bg.random_raw(4))
        ours = philox4x64_block(c[0] + 1, c[1], c[2], c[3], key[0], key[1])
        assert [int(np.atleast_1d(w)[0]) for w in ours] == ref


def test_vector_lanes_equal_scalar_blocks():
    ids = np.arange(17, dtype=np.uint64)
    w = philox4x64_block(9, ids, 0, 0, 1234, 5678)
    for i in range(17):
        single = philox4x64_block(9, np.uint64(i), 0, 0, 1234, 5678)
        assert all(int(w[j][i]) == int(np.atleast_1d(single[j])[0]) for j in range(4))


def test_uniform_block_range_and_determinism():
    ids = np.arange(1000, dtype=np.uint64)
    u1 = uniform_block(3, ids, seed=99)
    u2 = uniform_block(3, ids, seed=99)
    assert np.array_equal(u1, u2)
    assert u1.shape == (1000, 4)
    assert float(u1.min()) >= 0.0 and float(u1.max()) < 1.0
    # distinct seeds and blocks give distinct draws
    assert not np.array_equal(u1, uniform_block(3, ids, seed=100))
    assert not np.array_equal(u1, uniform_block(4, ids, seed=99))


def test_uniform_block_subset_consistency():
    """A sample's draws do not depend on which batch it is computed in."""
    all_ids = np.arange(64, dtype=np.uint64)
    full = uniform_block(0, all_ids, seed=7)
    subset = np.array([3, 17, 40], dtype=np.uint64)
    partial = uniform_block(0, subset, seed=7)
    assert np.array_equal(full[[3, 17, 40]], partial)


def test_uniform_block_statistics():
    ids = np.arange(20000, dtype=np.uint64)
    u = uniform_block(0, ids, seed=123).ravel()
    assert abs(float(u.mean()) - 0.5) < 0.005
    assert abs(float(np.mean(u * u)) - 1.0 / 3.0) < 0.005
