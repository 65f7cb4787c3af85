"""
Channel-independent description of every scheme.

A construction fixes, for each slot, which symbols are sent raw (interference
creation) and which past interference terms are rebuilt at which receiver
(interference resurrection), together with the least CSIT pattern that makes
every rebuilt term computable. Plans are obtained by evaluating a
construction against a channel realization through the CSIT guard.
"""

import functools
import itertools
from collections import Counter
from dataclasses import dataclass

from ..csit import CsitPattern, D, N, P
from ..scheme_ids import SchemeId
from .plan import SymbolRef


@dataclass(frozen=True)
class Send:
    slot: int
    symbol: object


@dataclass(frozen=True)
class Resurrect:
    """Rebuild at ``rx`` the interference it saw at slot ``created``."""

    slot: int
    rx: int
    created: int
    symbols: tuple


@dataclass(frozen=True)
class Construction:
    scheme: SchemeId
    n_rx: int
    n_tx: int
    pattern: CsitPattern
    symbols: tuple
    ops: tuple

    @property
    def n_slots(self):
        return self.pattern.n_slots


class _Draft:
    def __init__(self, n_rx, n_tx):
        self.n_rx, self.n_tx = n_rx, n_tx
        self.rows = []
        self.ops = []
        self.raw = []  # per slot: symbols sent with unit coefficient
        self.rebuilt = []  # per slot: symbols sent precoded
        self._count = Counter()

    def symbol(self, rx, tx):
        m = self._count[rx, tx]
        self._count[rx, tx] += 1
        return SymbolRef(rx, tx, m)

    def slot(self, states):
        row = [N] * self.n_rx
        for rx, s in states.items():
            row[rx] = s
        self.rows.append(tuple(row))
        self.raw.append([])
        self.rebuilt.append([])
        return len(self.rows) - 1

    def send(self, t, *symbols):
        for s in symbols:
            self.ops.append(Send(t, s))
            self.raw[t].append(s)

    def resurrect(self, t, rx, created, symbols):
        symbols = tuple(symbols)
        # the rebuilt term must be exactly the raw interference seen at `created`
        seen = [s for s in self.raw[created] + self.rebuilt[created] if s.rx != rx]
        if sorted(seen) != sorted(symbols) or any(s in self.rebuilt[created] for s in symbols):
            raise AssertionError(f"slot {created} interference at rx {rx} is not {symbols}")
        if len({s.tx for s in symbols}) != len(symbols):
            raise AssertionError("one symbol per transmitter in a rebuilt term")
        self.ops.append(Resurrect(t, rx, created, symbols))
        self.rebuilt[t].extend(symbols)

    def finish(self, scheme):
        symbols = tuple(sorted({op.symbol for op in self.ops if isinstance(op, Send)}))
        return Construction(scheme, self.n_rx, self.n_tx, CsitPattern(tuple(self.rows)),
                            symbols, tuple(self.ops))


# two-user schemes written for receiver roles (a, b): symbols u go to a, v to b

def _two_user_1(d, a, b):
    u = [d.symbol(a, j) for j in (0, 1)]
    v = [d.symbol(b, j) for j in (0, 1)]
    t0 = d.slot({a: D, b: D})
    d.send(t0, *u, *v)
    d.resurrect(d.slot({a: P, b: N}), a, t0, v)
    d.resurrect(d.slot({a: N, b: P}), b, t0, u)


def _two_user_2(d, a, b):
    u = [d.symbol(a, j) for j in (0, 1)]
    v = [d.symbol(b, j) for j in (0, 1)]
    t0 = d.slot({a: N, b: D})
    d.send(t0, *u)
    t1 = d.slot({a: D, b: N})
    d.send(t1, *v)
    t2 = d.slot({a: P, b: P})
    d.resurrect(t2, b, t0, u)
    d.resurrect(t2, a, t1, v)


def _two_user_3(d, a, b):
    u = [d.symbol(a, j) for j in (0, 1)]
    v = [d.symbol(b, j) for j in (0, 1)]
    t0 = d.slot({a: D, b: N})
    d.send(t0, *v)
    t1 = d.slot({a: P, b: D})
    d.send(t1, *u)
    d.resurrect(t1, a, t0, v)
    d.resurrect(d.slot({a: N, b: P}), b, t1, u)


_TWO_USER = {
    "scheme1": (_two_user_1, (0, 1)),
    "scheme1m": (_two_user_1, (1, 0)),
    "scheme2": (_two_user_2, (0, 1)),
    "scheme2m": (_two_user_2, (1, 0)),
    # the variant whose minimal pattern is ND,DP,PN is the unmirrored one
    "scheme3": (_two_user_3, (1, 0)),
    "scheme3m": (_two_user_3, (0, 1)),
}


def _kuser(d, k):
    created = []
    for i in range(k):
        t = d.slot({r: (N if r == i else D) for r in range(k)})
        syms = [d.symbol(i, j) for j in range(k)]
        d.send(t, *syms)
        created.append((t, syms))
    for a, b in itertools.combinations(range(k), 2):
        t = d.slot({a: P, b: P})
        d.resurrect(t, b, *created[a])
        d.resurrect(t, a, *created[b])


def _kx2_block(d, txs, batches):
    """Each batch: one creation slot carrying a symbol pair per receiver."""
    created = []
    for upair, vpair in batches:
        t = d.slot({0: D, 1: D})
        us = [d.symbol(0, txs[i]) for i in upair]
        vs = [d.symbol(1, txs[i]) for i in vpair]
        d.send(t, *us, *vs)
        created.append((t, us, vs))
    for t0, _, vs in created:
        d.resurrect(d.slot({0: P}), 0, t0, vs)
    for t0, us, _ in created:
        d.resurrect(d.slot({1: P}), 1, t0, us)


_KX2_THREE = (((0, 2), (0, 1)), ((0, 1), (1, 2)), ((1, 2), (0, 2)))


def _kx2_even_batches(k):
    return [((2 * b, 2 * b + 1), (2 * b + 1, (2 * b + 2) % k)) for b in range(k // 2)]


def _kx2(d, k):
    txs = list(range(k))
    if k % 2:
        _kx2_block(d, txs[:3], _KX2_THREE)
        txs = txs[3:]
    if txs:
        _kx2_block(d, txs, _kx2_even_batches(len(txs)))


def _twoxk_block(d, rxs, pairs):
    """Each pair (f, s): a slot to f, a slot to s, one joint rebuild slot."""
    created = {}
    for f, s in pairs:
        for first, other in ((f, s), (s, f)):
            t = d.slot({rxs[other]: D})
            syms = [d.symbol(rxs[first], j) for j in (0, 1)]
            d.send(t, *syms)
            created[first, other] = (t, syms)
    for f, s in pairs:
        t = d.slot({rxs[f]: P, rxs[s]: P})
        d.resurrect(t, rxs[s], *created[f, s])
        d.resurrect(t, rxs[f], *created[s, f])


_TWOXK_THREE = ((0, 1), (1, 2))


def _twoxk_even_pairs(k):
    return [(2 * a, 2 * a + 1) if a % 2 == 0 else (2 * a + 1, 2 * a) for a in range(k // 2)]


def _twoxk(d, k):
    rxs = list(range(k))
    if k % 2:
        _twoxk_block(d, rxs[:3], _TWOXK_THREE)
        rxs = rxs[3:]
    if rxs:
        _twoxk_block(d, rxs, _twoxk_even_pairs(len(rxs)))


@functools.lru_cache(maxsize=None)
def construction(scheme):
    """The slot-by-slot construction of ``scheme`` (a :class:`SchemeId`)."""
    if isinstance(scheme, str):
        scheme = SchemeId(scheme)
    name, k = scheme.name, scheme.k
    if name in _TWO_USER:
        d = _Draft(2, 2)
        build, roles = _TWO_USER[name]
        build(d, *roles)
    elif name == "threeuser":
        d = _Draft(3, 3)
        _kuser(d, 3)
    elif name == "kuser":
        d = _Draft(k, k)
        _kuser(d, k)
    elif name == "kx2":
        d = _Draft(2, k)
        _kx2(d, k)
    else:
        d = _Draft(k, 2)
        _twoxk(d, k)
    return d.finish(scheme)


def minimal_pattern(scheme):
    return construction(scheme).pattern
