"""Counter-based random streams for reproducible Monte-Carlo walks.

Each sample owns a logical stream addressed purely by (seed, sample index,
draw index): draw ``t`` of sample ``i`` is word ``t % 4`` of a Philox-4x64-10
block with counter ``(t // 4, i, 0, 0)`` and key ``(seed, golden)``.  Because
the stream is a pure function of those integers, results are independent of
batching and execution order, and a batch of walkers can pull one block for
many samples in a single vectorized call.
"""

from __future__ import annotations

import numpy as np

_MASK32 = np.uint64(0xFFFFFFFF)
_SHIFT32 = np.uint64(32)
_M0 = np.uint64(0xD2E7470EE14C6C93)
_M1 = np.uint64(0xCA5A826395121157)
_W0 = np.uint64(0x9E3779B97F4A7C15)
_W1 = np.uint64(0xBB67AE8584CAA73B)
_KEY_PAD = np.uint64(0xA5A5A5A5DEADBEEF)

_U64 = np.uint64
_TO_DOUBLE = 1.0 / 9007199254740992.0  # 2**-53


def _mulhilo(a: np.ndarray, b: np.uint64) -> tuple[np.ndarray, np.ndarray]:
    """Full 64x64 -> 128 bit product as (high word, low word)."""
    a0 = a & _MASK32
    a1 = a >> _SHIFT32
    b0 = b & _MASK32
    b1 = b >> _SHIFT32
    t = a0 * b0
    mid = a1 * b0 + (t >> _SHIFT32)
    mid2 = a0 * b1 + (mid & _MASK32)
    hi = a1 * b1 + (mid >> _SHIFT32) + (mid2 >> _SHIFT32)
    lo = a * b
    return hi, lo


def philox4x64_block(
    counter0, counter1, counter2, counter3, key0: int, key1: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """One Philox-4x64 block (10 rounds) per lane of the counter arrays.

    Counter arguments broadcast against each other; returns the four output
    words.  Matches numpy's Philox bit generator word for word.
    """
    with np.errstate(over="ignore"):
        x0, x1, x2, x3 = (
            np.asarray(counter0, dtype=np.uint64),
            np.asarray(counter1, dtype=np.uint64),
            np.asarray(counter2, dtype=np.uint64),
            np.asarray(counter3, dtype=np.uint64),
        )
        x0, x1, x2, x3 = np.broadcast_arrays(x0, x1, x2, x3)
        k0 = _U64(key0 & 0xFFFFFFFFFFFFFFFF)
        k1 = _U64(key1 & 0xFFFFFFFFFFFFFFFF)
        for _ in range(10):
            hi0, lo0 = _mulhilo(x0, _M0)
            hi1, lo1 = _mulhilo(x2, _M1)
            x0 = hi1 ^ x1 ^ k0
            x1 = lo1
            x2 = hi0 ^ x3 ^ k1
            x3 = lo0
            k0 = k0 + _W0
            k1 = k1 + _W1
    return x0, x1, x2, x3


def uniform_block(block_index: int, sample_ids: np.ndarray, seed: int) -> np.ndarray:
    """Four uniforms in [0, 1) per sample: draws 4b .. 4b+3 of each stream."""
    w0, w1, w2, w3 = philox4x64_block(
        _U64(block_index),
        np.asarray(sample_ids, dtype=np.uint64),
        _U64(0),
        _U64(0),
        seed,
        _KEY_PAD,
    )
    out = np.empty((len(sample_ids), 4))
    out[:, 0] = (w0 >> np.uint64(11)) * _TO_DOUBLE
    out[:, 1] = (w1 >> np.uint64(11)) * _TO_DOUBLE
    out[:, 2] = (w2 >> np.uint64(11)) * _TO_DOUBLE
    out[:, 3] = (w3 >> np.uint64(11)) * _TO_DOUBLE
    return out
