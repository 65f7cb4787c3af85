"""
Received-signal ledgers and decoding.

Two decoders are provided. :func:`decode` is generic: it forms the exact
linear map from every symbol of the plan to one receiver's observations and
recovers the desired symbols whenever no null-space direction of that map
touches them. :func:`recipe_decode` follows the scheme's own bookkeeping:
subtract each rebuilt interference term from the slot where it was first
seen, keep the interference-free slots, and solve the square system. The
two must agree on every noiseless realization.
"""

from dataclasses import dataclass

import numpy as np

from ..channel import ChannelProcess, NoiseConfig, apply_channel
from ..errors import InvalidDimension, NotIdentifiable

SV_TOL = 1e-9
LEAK_TOL = 1e-6


@dataclass(frozen=True)
class LedgerEntry:
    slot: int
    value: object
    annotation: str


@dataclass(frozen=True)
class ReceiverLedger:
    """
    Everything the receivers observe.

    ``values[..., i, t]`` is ``Y_i(t)``; ``annotations[i][t]`` is ``"L"``,
    ``"I"`` or ``"mixed"``. ``channel`` is the receivers' perfect CSIR.
    """

    values: np.ndarray
    annotations: tuple
    channel: ChannelProcess

    @property
    def n_rx(self):
        return len(self.annotations)

    @property
    def n_slots(self):
        return self.values.shape[-1]

    def entries(self, rx):
        return [LedgerEntry(t, self.values[..., rx, t], a)
                for t, a in enumerate(self.annotations[rx])]


def run(plan, channel, noise=NoiseConfig(), rng_stream=0, gain=None):
    """
    Push a plan through the channel slot by slot.

    Parameters
    ----------
    plan : TransmitPlan
    channel : ChannelProcess
    noise : NoiseConfig
    rng_stream : int
        Seed of the noise substream.
    gain : array_like, shape (..., n_slots), optional
        Common per-slot amplitude applied to all transmitters.

    Returns
    -------
    ReceiverLedger
    """
    if plan.n_slots > channel.n_slots or (channel.n_rx, channel.n_tx) != (plan.n_rx, plan.n_tx):
        raise InvalidDimension("plan does not fit the channel")
    annotations = tuple(tuple(plan.annotation(i, t) for t in range(plan.n_slots))
                        for i in range(plan.n_rx))
    if plan.n_slots == 0:
        return ReceiverLedger(np.zeros(channel.batch_shape + (plan.n_rx, 0), complex),
                              annotations, channel)
    X = plan.transmit()
    if gain is not None:
        X = X * np.asarray(gain)[..., :, None]
    Y = np.stack([apply_channel(channel, X[..., t, :], t, noise, rng_stream)
                  for t in range(plan.n_slots)], axis=-1)
    return ReceiverLedger(Y, annotations, channel)


def observation_map(plan, channel, rx, gain=None):
    """
    Matrix ``A[..., t, k]`` with ``Y_rx(t) = sum_k A[t, k] s_k`` (noiseless).

    A receiver can form it from its CSIR and the public plan structure.
    """
    h = channel.h[..., rx, :, :plan.n_slots]
    A = np.einsum("...jt,...tjk->...tk", h, plan.precoder())
    if gain is not None:
        A = A * np.asarray(gain)[..., :, None]
    return A


@dataclass
class Solution:
    """Batched outcome of the identifiability solver for one receiver."""

    estimate: np.ndarray  # (..., d)
    identifiable: np.ndarray  # (...) bool
    leakage: np.ndarray  # (..., d) null-space weight on each desired symbol
    combiner: np.ndarray  # (..., d, n) linear decoding rows
    rank: np.ndarray  # (...)


def solve(A, y, desired, sv_tol=SV_TOL, leak_tol=LEAK_TOL):
    """
    Minimum-norm solve of ``A s = y`` restricted to ``desired`` columns.

    A desired coordinate is identifiable iff the null space of ``A`` has no
    component along it. Singular values at or below ``sv_tol`` times the
    largest count as zero.
    """
    A = np.asarray(A, dtype=complex)
    n, m = A.shape[-2:]
    desired = list(desired)
    if n == 0 or m == 0:
        batch = A.shape[:-2]
        d = len(desired)
        return Solution(np.zeros(batch + (d,), complex), np.full(batch, d == 0),
                        np.ones(batch + (d,)), np.zeros(batch + (d, n), complex),
                        np.zeros(batch, int))
    _, S, Vh = np.linalg.svd(A, full_matrices=True)
    rank = (S > sv_tol * S[..., :1]).sum(-1)
    null_rows = np.arange(m) >= rank[..., None]
    leak = np.sqrt(np.einsum("...r,...rd->...d", null_rows.astype(float),
                             np.abs(Vh[..., :, desired]) ** 2))
    identifiable = (leak <= leak_tol).all(-1)
    combiner = np.linalg.pinv(A, rcond=sv_tol)[..., desired, :]
    estimate = np.einsum("...dn,...n->...d", combiner, np.asarray(y))
    return Solution(estimate, identifiable, leak, combiner, rank)


def decode(ledger, rx, plan, channel=None, gain=None):
    """
    Recover the symbols intended for ``rx`` with the generic solver.

    Returns
    -------
    numpy.ndarray, shape (..., d)
        Estimates of ``plan.desired(rx)`` symbols, in plan order.

    Raises
    ------
    NotIdentifiable
        Listing every desired symbol that is unresolvable in some realization.
    """
    channel = ledger.channel if channel is None else channel
    desired = plan.desired(rx)
    A = observation_map(plan, channel, rx, gain)
    sol = solve(A, ledger.values[..., rx, :plan.n_slots], desired)
    if not sol.identifiable.all():
        bad = (sol.leakage > LEAK_TOL).reshape(-1, len(desired)).any(0)
        raise NotIdentifiable([plan.symbols.refs[k] for k, b in zip(desired, bad) if b])
    return sol.estimate


def recipe_rows(plan, rx):
    """
    Interference-free equations the scheme hands to ``rx``.

    Returns a list of ``(plus_slot, minus_slot)`` pairs; ``minus_slot`` is
    None for a slot that already carries only desired symbols.
    """
    rows = [(t, None) for t in range(plan.n_slots) if plan.annotation(rx, t) == "L"]
    for al in plan.alignments:
        if al.rx != rx:
            continue
        kinds = plan.annotation(rx, al.created), plan.annotation(rx, al.resurrected)
        if kinds == ("mixed", "I"):
            rows.append((al.created, al.resurrected))
        elif kinds == ("I", "mixed"):
            rows.append((al.resurrected, al.created))
    return sorted(rows, key=lambda r: r[0])


def recipe_decode(ledger, rx, plan, channel=None, gain=None):
    """Decode ``rx`` by the scheme's subtract-and-solve recipe."""
    channel = ledger.channel if channel is None else channel
    desired = plan.desired(rx)
    A = observation_map(plan, channel, rx, gain)
    y = ledger.values[..., rx, :]
    B, z = [], []
    for plus, minus in recipe_rows(plan, rx):
        if minus is None:
            B.append(A[..., plus, :])
            z.append(y[..., plus])
        else:
            B.append(A[..., plus, :] - A[..., minus, :])
            z.append(y[..., plus] - y[..., minus])
    if len(B) < len(desired):
        raise NotIdentifiable([plan.symbols.refs[k] for k in desired])
    B = np.stack(B, axis=-2)[..., desired]
    z = np.stack(z, axis=-1)
    if B.shape[-2] == B.shape[-1]:
        return np.linalg.solve(B, z[..., None])[..., 0]
    return np.einsum("...dn,...n->...d", np.linalg.pinv(B), z)


def interference_rank(A, desired, sv_tol=SV_TOL):
    """Rank of the sub-map from undesired symbols to the observations."""
    others = [k for k in range(A.shape[-1]) if k not in set(desired)]
    if not others:
        return np.zeros(A.shape[:-2], int)
    S = np.linalg.svd(A[..., others], compute_uv=False)
    return (S > sv_tol * S[..., :1]).sum(-1)


def decoding_condition(A, desired, sv_tol=SV_TOL):
    """
    Condition number of the desired sub-system once interference is
    projected out of the observations.
    """
    A = np.asarray(A)
    batch, (n, m) = A.shape[:-2], A.shape[-2:]
    flat = A.reshape((-1, n, m))
    desired = list(desired)
    others = [k for k in range(m) if k not in set(desired)]
    out = np.empty(flat.shape[0])
    if others:
        U, S, _ = np.linalg.svd(flat[..., others], full_matrices=True)
        ranks = (S > sv_tol * S[..., :1]).sum(-1)
    else:
        U = np.broadcast_to(np.eye(n, dtype=A.dtype), flat.shape[:1] + (n, n))
        ranks = np.zeros(flat.shape[0], int)
    # trials sharing an interference rank share the projector shape
    for r in np.unique(ranks):
        idx = np.flatnonzero(ranks == r)
        Q = U[idx][..., r:]
        s = np.linalg.svd(np.conj(np.swapaxes(Q, -1, -2)) @ flat[idx][..., desired], compute_uv=False)
        if s.shape[-1] == 0:
            out[idx] = np.inf
            continue
        with np.errstate(divide="ignore"):
            out[idx] = np.where(s[..., -1] > 0, s[..., 0] / s[..., -1], np.inf)
    return out.reshape(batch)
