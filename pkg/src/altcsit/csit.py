"""
CSIT states, alternation patterns and the access guard on channel knowledge.

A pattern is a grid ``S[t][i]`` of states for slot ``t`` and receiver ``i``.
State ``S_i(t)`` describes what every transmitter knows about its own link to
receiver ``i`` at slot ``t``:

* ``P``: known from slot ``t`` onward,
* ``D``: known from slot ``t + 1`` onward,
* ``N``: never known.

Indices are zero-based in code. The text form ``"DD,PN,NP"`` lists slots
separated by commas, receivers concatenated within a slot.
"""

import enum
import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import AccessDenied, InvalidDimension
from .scheme_ids import SCHEME1, SCHEME1M, SCHEME2, SCHEME2M, SCHEME3, SCHEME3M


class CsitState(enum.Enum):
    N = 0
    D = 1
    P = 2

    def __ge__(self, other):
        return self.value >= other.value

    def __gt__(self, other):
        return self.value > other.value

    def __le__(self, other):
        return self.value <= other.value

    def __lt__(self, other):
        return self.value < other.value

    def __str__(self):
        return self.name


P, D, N = CsitState.P, CsitState.D, CsitState.N


@dataclass(frozen=True)
class CsitPattern:
    """Rectangular grid of CSIT states, one row per slot."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(_state(s) for s in row) for row in self.rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise InvalidDimension("every slot must list the same number of receivers")
        if rows and len(rows[0]) == 0:
            raise InvalidDimension("a slot must list at least one receiver")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def parse(cls, text):
        """Parse ``"DD,PN,NP"`` (case-insensitive, whitespace ignored)."""
        text = "".join(str(text).split())
        if not text:
            return cls(())
        return cls(tuple(tuple(slot.upper()) for slot in text.split(",")))

    @property
    def n_slots(self):
        return len(self.rows)

    @property
    def n_rx(self):
        return len(self.rows[0]) if self.rows else 0

    def state(self, rx, slot):
        return self.rows[slot][rx]

    def receiver(self, rx):
        """The sequence ``S_rx(1..n)``."""
        return tuple(row[rx] for row in self.rows)

    def __str__(self):
        return ",".join("".join(s.name for s in row) for row in self.rows)

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __add__(self, other):
        """Concatenate in time."""
        return CsitPattern(self.rows + CsitPattern.coerce(other).rows)

    @classmethod
    def coerce(cls, value):
        if isinstance(value, cls):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        return cls(tuple(value))


def _state(value):
    if isinstance(value, CsitState):
        return value
    try:
        return CsitState[str(value).upper()]
    except KeyError:
        raise ValueError(f"unknown CSIT state {value!r}") from None


@dataclass(frozen=True)
class LambdaDistribution:
    """Fractions of (slot, receiver) entries in each state; sums to one exactly."""

    p: Fraction
    d: Fraction
    n: Fraction

    def __iter__(self):
        return iter((self.p, self.d, self.n))


def lambda_of(pattern):
    """Exact fraction of entries in each CSIT state."""
    pattern = CsitPattern.coerce(pattern)
    if pattern.n_slots == 0:
        raise InvalidDimension("empty CSIT pattern")
    counts = Counter(s for row in pattern for s in row)
    total = pattern.n_slots * pattern.n_rx
    return LambdaDistribution(*(Fraction(counts[s], total) for s in (P, D, N)))


def dominates(a, b):
    """True iff ``a`` carries at least the knowledge of ``b``.

    Works on single states and, entrywise, on patterns. Patterns of different
    shape never dominate each other.
    """
    if isinstance(a, (CsitState, str)) and isinstance(b, (CsitState, str)) and len(str(a)) == 1:
        return _state(a) >= _state(b)
    a, b = CsitPattern.coerce(a), CsitPattern.coerce(b)
    if (a.n_slots, a.n_rx) != (b.n_slots, b.n_rx):
        return False
    return all(x >= y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def synergy_requirements(pattern):
    """
    Evaluate the three sufficient conditions for 4/3 DoF on a two-receiver
    pattern of any length.

    Returns
    -------
    tuple of bool
        ``(delayed_then_perfect, no_blind_slot, perfect_last)``:
        each receiver has some slot with at least delayed CSIT followed by
        a later slot with perfect CSIT; no slot is ``NN``; some receiver has
        perfect CSIT in the final slot.
    """
    pattern = CsitPattern.coerce(pattern)
    if pattern.n_rx != 2 or pattern.n_slots == 0:
        raise InvalidDimension("synergy is defined for two receivers over at least one slot")

    def delayed_then_perfect(seq):
        return any(seq[t1] >= D and seq[t2] is P
                   for t1 in range(len(seq)) for t2 in range(t1 + 1, len(seq)))

    r1 = all(delayed_then_perfect(pattern.receiver(i)) for i in range(2))
    r2 = all(any(s is not N for s in row) for row in pattern)
    r3 = any(s is P for s in pattern.rows[-1])
    return r1, r2, r3


def is_synergistic(pattern):
    """Three-slot, two-receiver synergy test (all three requirements hold)."""
    pattern = CsitPattern.coerce(pattern)
    if (pattern.n_slots, pattern.n_rx) != (3, 2):
        raise InvalidDimension(
            f"synergy test needs 3 slots x 2 receivers, got {pattern.n_slots}x{pattern.n_rx}")
    return all(synergy_requirements(pattern))


# minimal patterns in dispatch order: described variants, then mirrored ones
MINIMAL_PATTERNS = (
    (CsitPattern.parse("DD,PN,NP"), SCHEME1),
    (CsitPattern.parse("ND,DN,PP"), SCHEME2),
    (CsitPattern.parse("ND,DP,PN"), SCHEME3),
    (CsitPattern.parse("DD,NP,PN"), SCHEME1M),
    (CsitPattern.parse("DN,ND,PP"), SCHEME2M),
    (CsitPattern.parse("DN,PD,NP"), SCHEME3M),
)


def match_scheme(pattern):
    """First two-user scheme whose minimal pattern ``pattern`` dominates, else None."""
    pattern = CsitPattern.coerce(pattern)
    for minimal, scheme in MINIMAL_PATTERNS:
        if dominates(pattern, minimal):
            return scheme
    return None


def enumerate_patterns(n_slots=3, n_rx=2):
    """Yield every pattern over ``n_slots`` slots exactly once."""
    if n_slots < 1 or n_rx < 1:
        raise InvalidDimension("need at least one slot and one receiver")
    slot_states = list(itertools.product((P, D, N), repeat=n_rx))
    for rows in itertools.product(slot_states, repeat=n_slots):
        yield CsitPattern(rows)


@dataclass
class Census:
    total: int = 0
    synergistic_count: int = 0
    dispatchable_count: int = 0
    histogram: Counter = field(default_factory=Counter)
    # synergistic but no two-user scheme applies, and the converse
    synergistic_only: list = field(default_factory=list)
    dispatchable_only: list = field(default_factory=list)


def census(n_slots=3):
    """Exhaustive synergy and dispatch count over all two-receiver patterns."""
    report = Census()
    for pattern in enumerate_patterns(n_slots):
        report.total += 1
        synergistic = all(synergy_requirements(pattern))
        scheme = match_scheme(pattern) if n_slots == 3 else None
        report.synergistic_count += synergistic
        if scheme is not None:
            report.dispatchable_count += 1
            report.histogram[scheme.name] += 1
        if synergistic and scheme is None:
            report.synergistic_only.append(str(pattern))
        elif scheme is not None and not synergistic:
            report.dispatchable_only.append(str(pattern))
    return report


def access_rule(pattern, view_tx, now, rx, slot, tx):
    """
    Reason code for refusing ``h[rx, tx](slot)`` to transmitter ``view_tx``
    at slot ``now``, or None when the knowledge is available.
    """
    if tx != view_tx:
        return "ForeignColumn"
    if slot > now:
        return "FutureSlot"
    state = pattern.state(rx, slot)
    if state is N:
        return "NoCsitAtSlot"
    if slot == now and state is D:
        return "DelayedNotYetAvailable"
    return None


@dataclass(frozen=True)
class Query:
    """One granted channel lookup: transmitter ``tx`` read ``h[rx, tx](slot)``."""

    tx: int
    rx: int
    slot: int


class CsitView:
    """
    The channel knowledge transmitter ``tx`` holds at slot ``now``.

    Every granted lookup is appended to :attr:`log`; a refused one raises
    :class:`AccessDenied` and leaves no trace in any coefficient.
    """

    def __init__(self, pattern, channel, tx, now):
        self.pattern = CsitPattern.coerce(pattern)
        self.channel = channel
        self.tx = tx
        self.now = now
        self.log = []
        if not 0 <= now < self.pattern.n_slots:
            raise InvalidDimension(f"slot {now} outside the pattern")

    def query(self, rx, slot, tx=None):
        tx = self.tx if tx is None else tx
        reason = access_rule(self.pattern, self.tx, self.now, rx, slot, tx)
        if reason is not None:
            raise AccessDenied(reason, f"T{self.tx} at slot {self.now} asked for h[{rx},{tx}]({slot})")
        q = Query(tx, rx, slot)
        self.log.append(q)
        return self.channel.coefficient(rx, tx, slot)
