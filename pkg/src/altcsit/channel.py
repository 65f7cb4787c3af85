"""
I.i.d. fast-fading channel realizations and the received-signal equation.

Coefficients are indexed ``h[..., i, j, t]``: receiver ``i``, transmitter
``j``, slot ``t`` (all zero-based). A process may carry leading batch axes so
that many independent realizations are evaluated in one numpy call; a plain
single realization has shape ``(n_rx, n_tx, n_slots)``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidDimension, SlotOutOfRange

MAGNITUDE_FLOOR = 1e-6

# spawn keys separating the channel stream from the noise streams
_CHANNEL_KEY = 0
_NOISE_KEY = 1

DISTRIBUTIONS = ("gaussian", "annulus")

# inner radius of the annulus distribution; outer radius fixes E|h|^2 = 1
_ANNULUS_INNER = 0.5
_ANNULUS_OUTER = np.sqrt(2.0 - _ANNULUS_INNER**2)


@dataclass(frozen=True)
class ChannelProcess:
    """Immutable grid of fading coefficients for one run (or a batch of runs)."""

    h: np.ndarray
    seed: int | None = None

    def __post_init__(self):
        h = np.array(self.h, dtype=complex)
        if h.ndim < 3:
            raise InvalidDimension(f"channel grid needs at least 3 axes, got shape {h.shape}")
        if min(h.shape[-3:]) < 1:
            raise InvalidDimension(f"zero-sized channel grid {h.shape}")
        h.setflags(write=False)
        object.__setattr__(self, "h", h)

    @property
    def n_rx(self):
        return self.h.shape[-3]

    @property
    def n_tx(self):
        return self.h.shape[-2]

    @property
    def n_slots(self):
        return self.h.shape[-1]

    @property
    def batch_shape(self):
        return self.h.shape[:-3]

    def coefficient(self, rx, tx, slot):
        """Return ``h[..., rx, tx, slot]`` with range checking."""
        if not 0 <= slot < self.n_slots:
            raise SlotOutOfRange(f"slot {slot} not in [0, {self.n_slots})")
        if not (0 <= rx < self.n_rx and 0 <= tx < self.n_tx):
            raise InvalidDimension(f"link ({rx}, {tx}) outside {self.n_rx}x{self.n_tx}")
        return self.h[..., rx, tx, slot]

    def slots(self, start, stop):
        """Sub-process restricted to slots ``start:stop``."""
        return ChannelProcess(self.h[..., start:stop], self.seed)


@dataclass(frozen=True)
class NoiseConfig:
    """Circularly symmetric complex AWGN; ``variance == 0`` iff disabled."""

    variance: float = 0.0
    enabled: bool = False

    def __post_init__(self):
        if self.variance < 0:
            raise ValueError("noise variance must be nonnegative")
        if (self.variance == 0) == self.enabled:
            raise ValueError("noise variance must be zero exactly when noise is disabled")

    @classmethod
    def off(cls):
        return cls(0.0, False)

    @classmethod
    def awgn(cls, variance=1.0):
        return cls(float(variance), True)


@dataclass(frozen=True)
class PowerConfig:
    """Per-transmitter power budget.

    With ``normalize_precoders`` set, every slot is scaled by one common factor
    so that the strongest transmitter in that slot radiates exactly ``power``
    on average over unit-power symbols. A common factor is a row scaling of
    each receiver's observation map, so it never disturbs alignment.
    """

    power: float = 1.0
    normalize_precoders: bool = False

    def __post_init__(self):
        if not self.power > 0:
            raise ValueError("per-transmitter power must be positive")


def _complex_gaussian(rng, size):
    return (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / np.sqrt(2.0)


def _annulus(rng, size):
    # uniform over the annulus area, uniform phase
    r2 = rng.uniform(_ANNULUS_INNER**2, _ANNULUS_OUTER**2, size)
    return np.sqrt(r2) * np.exp(2j * np.pi * rng.uniform(size=size))


def _stream(seed, *key):
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=key))


def sample_channel(n_rx, n_tx, n_slots, seed, batch=None, distribution="gaussian"):
    """
    Draw i.i.d. unit-variance fading coefficients.

    Parameters
    ----------
    n_rx, n_tx, n_slots : int
        Grid dimensions, each at least one.
    seed : int
        Seed of the channel stream. Equal seeds and dimensions give
        bit-identical grids.
    batch : int or tuple of int, optional
        Leading batch shape for vectorized Monte-Carlo runs.
    distribution : {"gaussian", "annulus"}
        Circularly symmetric complex Gaussian (default) or uniform on an
        annulus with the same second moment.

    Returns
    -------
    ChannelProcess
    """
    dims = (n_rx, n_tx, n_slots)
    if any(int(d) != d or d < 1 for d in dims):
        raise InvalidDimension(f"all channel dimensions must be >= 1, got {dims}")
    if distribution not in DISTRIBUTIONS:
        raise ValueError(f"unknown distribution {distribution!r}")
    if batch is None:
        batch = ()
    elif np.isscalar(batch):
        batch = (int(batch),)
    shape = tuple(batch) + tuple(int(d) for d in dims)

    draw = _complex_gaussian if distribution == "gaussian" else _annulus
    rng = _stream(seed, _CHANNEL_KEY)
    h = draw(rng, shape)
    small = np.abs(h) < MAGNITUDE_FLOOR
    while small.any():
        h[small] = draw(rng, int(small.sum()))
        small = np.abs(h) < MAGNITUDE_FLOOR
    return ChannelProcess(h, seed)


def noise_sample(noise, shape, rng_stream, slot=0):
    """Noise draw for one slot from an independent seeded substream."""
    if not noise.enabled:
        return np.zeros(shape, dtype=complex)
    rng = _stream(rng_stream, _NOISE_KEY, slot)
    return np.sqrt(noise.variance) * _complex_gaussian(rng, shape)


def apply_channel(process, x, t, noise=NoiseConfig(), rng_stream=0):
    """
    Received signals ``Y_i = sum_j h_ij(t) x_j + N_i`` for one slot.

    Parameters
    ----------
    process : ChannelProcess
    x : array_like, shape (..., n_tx)
        Transmit signals; leading axes must broadcast with the process batch.
    t : int
        Slot index.
    noise : NoiseConfig
    rng_stream : int
        Seed of the noise substream; independent of the channel stream.

    Returns
    -------
    numpy.ndarray, shape (..., n_rx)
    """
    if not 0 <= t < process.n_slots:
        raise SlotOutOfRange(f"slot {t} not in [0, {process.n_slots})")
    x = np.asarray(x, dtype=complex)
    if x.ndim == 0 or x.shape[-1] != process.n_tx:
        raise InvalidDimension(f"expected {process.n_tx} transmit signals, got shape {x.shape}")
    y = np.einsum("...ij,...j->...i", process.h[..., t], x)
    return y + noise_sample(noise, y.shape, rng_stream, t)
