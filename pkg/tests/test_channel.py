import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from altcsit import (ChannelProcess, InvalidDimension, NoiseConfig, PowerConfig,
                     SlotOutOfRange, apply_channel, sample_channel)
from altcsit.channel import MAGNITUDE_FLOOR, noise_sample


def test_same_seed_is_bit_identical():
    a = sample_channel(2, 2, 3, seed=7)
    b = sample_channel(2, 2, 3, seed=7)
    assert a.h.shape == (2, 2, 3)
    assert np.array_equal(a.h, b.h)


def test_different_seeds_differ():
    assert not np.array_equal(sample_channel(2, 2, 3, seed=7).h, sample_channel(2, 2, 3, seed=8).h)


@pytest.mark.parametrize("dims", [(0, 2, 3), (2, 0, 3), (2, 2, 0)])
def test_zero_dimension_rejected(dims):
    with pytest.raises(InvalidDimension):
        sample_channel(*dims, seed=1)


def test_process_is_read_only():
    ch = sample_channel(2, 2, 3, seed=1)
    with pytest.raises(ValueError):
        ch.h[0, 0, 0] = 0


@pytest.mark.parametrize("distribution", ["gaussian", "annulus"])
def test_unit_second_moment(distribution):
    ch = sample_channel(3, 3, 6, seed=11, batch=1852, distribution=distribution)
    pooled = ch.h.ravel()
    assert pooled.size >= 10**5
    assert abs(np.mean(np.abs(pooled) ** 2) - 1) < 0.02
    assert np.all(np.isfinite(pooled))
    assert np.all(np.abs(pooled) >= MAGNITUDE_FLOOR)


def test_annulus_support():
    h = sample_channel(2, 2, 3, seed=3, batch=1000, distribution="annulus").h
    r = np.abs(h)
    assert r.min() >= 0.5 - 1e-12 and r.max() <= np.sqrt(1.75) + 1e-12


def test_independence_proxy():
    h = sample_channel(2, 2, 3, seed=5, batch=10**5).h.reshape(10**5, -1)
    h = h - h.mean(0)
    cov = h.conj().T @ h / len(h)
    std = np.sqrt(np.real(np.diag(cov)))
    corr = cov / np.outer(std, std)
    off = corr[~np.eye(len(corr), dtype=bool)]
    assert np.abs(off).max() < 0.02


def test_identity_channel():
    ch = ChannelProcess(np.ones((1, 1, 1)))
    assert apply_channel(ch, [2 - 3j], 0) == pytest.approx([2 - 3j])


def test_matches_explicit_sum():
    ch = sample_channel(2, 2, 3, seed=9)
    x = np.array([0.3 + 1j, -1.2 + 0.1j])
    for t in range(3):
        y = apply_channel(ch, x, t)
        expected = [sum(ch.h[i, j, t] * x[j] for j in range(2)) for i in range(2)]
        np.testing.assert_allclose(y, expected, rtol=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**31), st.complex_numbers(max_magnitude=10, allow_nan=False),
       st.complex_numbers(max_magnitude=10, allow_nan=False))
def test_linearity(seed, a, b):
    ch = sample_channel(3, 2, 2, seed)
    rng = np.random.default_rng(seed)
    x1, x2 = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    lhs = apply_channel(ch, a * x1 + b * x2, 1)
    rhs = a * apply_channel(ch, x1, 1) + b * apply_channel(ch, x2, 1)
    np.testing.assert_allclose(lhs, rhs, rtol=1e-12, atol=1e-12 * (1 + abs(a) + abs(b)))


def test_noise_variance():
    ch = sample_channel(2, 2, 1, seed=0, batch=10**5)
    y = apply_channel(ch, np.zeros(2), 0, NoiseConfig.awgn(0.25), rng_stream=4)
    var = np.mean(np.abs(y) ** 2, axis=0)
    np.testing.assert_allclose(var, 0.25, rtol=0.03)


def test_noise_stream_leaves_channel_alone():
    ch = sample_channel(2, 2, 2, seed=0)
    x = np.array([1.0, 1j])
    clean = apply_channel(ch, x, 1)
    noisy = apply_channel(ch, x, 1, NoiseConfig.awgn(1e-6), rng_stream=1)
    assert np.abs(noisy - clean).max() < 1e-2
    assert np.array_equal(noise_sample(NoiseConfig.awgn(1.0), (4,), 3, 1),
                          noise_sample(NoiseConfig.awgn(1.0), (4,), 3, 1))


def test_slot_out_of_range():
    with pytest.raises(SlotOutOfRange):
        apply_channel(sample_channel(2, 2, 3, seed=1), [1, 1], 3)


def test_length_mismatch():
    with pytest.raises(InvalidDimension):
        apply_channel(sample_channel(2, 2, 3, seed=1), [1, 1, 1], 0)


def test_noise_config_invariant():
    assert NoiseConfig().variance == 0 and not NoiseConfig().enabled
    with pytest.raises(ValueError):
        NoiseConfig(0.0, True)
    with pytest.raises(ValueError):
        NoiseConfig(1.0, False)
    with pytest.raises(ValueError):
        NoiseConfig.awgn(-1.0)


@pytest.mark.parametrize("p", [0.0, -1.0])
def test_power_must_be_positive(p):
    with pytest.raises(ValueError):
        PowerConfig(p)
