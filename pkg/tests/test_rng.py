import numpy as np

from dhtoric import rng


def test_reference_values():
    # SplitMix64 reference: outputs for state seed 0 follow the published stream
    # 0xe220a8397b1dcdaf, 0x6e789e6aa1b965f4, ...
    x = 0
    out = []
    for _ in range(2):
        x = (x + rng.GAMMA) & rng.MASK64
        out.append(rng.mix64(x))
    assert out == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4]


def test_random_access_matches_stream():
    full = rng.random_u64(7, 0, 1000)
    assert np.array_equal(full[300:700], rng.random_u64(7, 300, 400))


def test_uniform_range_and_moments():
    u = rng.random_uniform(3, 0, 200_000)
    assert u.min() >= 0 and u.max() < 1
    assert abs(u.mean() - 0.5) < 0.005
    assert abs(u.var() - 1 / 12) < 0.002


def test_split_streams_differ():
    assert rng.split(1, 0) != rng.split(1, 1)
    assert rng.split(1, 0) == rng.split(1, 0)
