"""Counter-based 64-bit pseudorandom numbers (SplitMix64 with random access).

The ``i``-th output for a seed is a pure function of ``(seed, i)``::

    key    = mix(seed)
    z      = key + (i + 1) * 0x9E3779B97F4A7C15      (mod 2**64)
    out_i  = mix(z)

    mix(z):  z ^= z >> 30; z *= 0xBF58476D1CE4E5B9
             z ^= z >> 27; z *= 0x94D049BB133111EB
             z ^= z >> 31

Uniform doubles in ``[0, 1)`` take the top 53 bits: ``(out >> 11) * 2**-53``.
Because any block of counters can be generated independently, work may be
sharded arbitrarily without changing the stream.
"""

from __future__ import annotations

import numpy as np

GAMMA = 0x9E3779B97F4A7C15
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
MASK64 = (1 << 64) - 1


def _mix(z: np.ndarray) -> np.ndarray:
    z = z ^ (z >> np.uint64(30))
    z = z * _M1
    z = z ^ (z >> np.uint64(27))
    z = z * _M2
    return z ^ (z >> np.uint64(31))


def mix64(x: int) -> int:
    """Scalar version of the SplitMix64 finalizer."""
    return int(_mix(np.array([x & MASK64], dtype=np.uint64))[0])


def random_u64(seed: int, start: int, count: int) -> np.ndarray:
    """Outputs ``start .. start+count-1`` of the stream for ``seed``."""
    key = mix64(seed)
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(key) + idx * np.uint64(GAMMA)
        return _mix(z)


def random_uniform(seed: int, start: int, count: int) -> np.ndarray:
    return (random_u64(seed, start, count) >> np.uint64(11)).astype(np.float64) * 2.0**-53


def split(seed: int, stream: int) -> int:
    """Independent child seed for sub-stream ``stream``."""
    return mix64(mix64(seed) ^ mix64(stream + 1))
