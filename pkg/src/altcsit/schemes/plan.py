"""Transmit plans, symbol grids and the plan dump format."""

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidDimension


@dataclass(frozen=True, order=True)
class SymbolRef:
    """The ``m``-th symbol sent by transmitter ``tx`` to receiver ``rx``."""

    rx: int
    tx: int
    m: int

    def label(self):
        return f"s[{self.rx + 1},{self.tx + 1}]^{self.m + 1}"


@dataclass(frozen=True)
class SymbolGrid:
    """Symbol values in the column order of ``refs``; shape ``(..., len(refs))``."""

    refs: tuple
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.ndim == 0 or values.shape[-1] != len(self.refs):
            raise InvalidDimension(f"{len(self.refs)} symbols expected, got shape {values.shape}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def index(self, ref):
        return self.refs.index(ref)

    def __getitem__(self, ref):
        return self.values[..., self.index(ref)]


def draw_symbols(refs, seed, batch=None):
    """I.i.d. unit-power circularly symmetric complex Gaussian symbols."""
    refs = tuple(refs)
    if batch is None:
        batch = ()
    elif np.isscalar(batch):
        batch = (int(batch),)
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(2,)))
    shape = tuple(batch) + (len(refs),)
    values = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
    return SymbolGrid(refs, values)


@dataclass(frozen=True)
class Term:
    """
    One precoded symbol in a transmit signal.

    ``factors`` is the provenance: each entry ``(query, exponent)`` is a
    granted CSIT lookup, and ``coef`` is the product of the looked-up values
    raised to their exponents. A raw symbol has ``coef == 1`` and no factors.
    """

    symbol: SymbolRef
    coef: object
    factors: tuple = ()

    @property
    def provenance(self):
        return tuple(q for q, _ in self.factors)

    def formula(self):
        if not self.factors:
            return self.symbol.label()
        # inverted current coefficients first, then stored ones
        ordered = sorted(self.factors, key=lambda f: f[1])
        parts = []
        for q, e in ordered:
            power = "" if e == 1 else f"^{e}"
            parts.append(f"h{q.rx + 1}{q.tx + 1}{power}({q.slot + 1})")
        return " ".join(parts) + " " + self.symbol.label()


@dataclass(frozen=True)
class Alignment:
    """Interference seen by ``rx`` at ``created`` is rebuilt at ``resurrected``."""

    rx: int
    created: int
    resurrected: int


@dataclass(frozen=True)
class TransmitPlan:
    """
    Slot-by-slot transmit signals of a scheme for one channel realization
    (or a batch of them).

    ``slots[t][j]`` is the tuple of terms summed by transmitter ``j`` at
    slot ``t``.
    """

    scheme: object
    pattern: object
    n_rx: int
    n_tx: int
    slots: tuple
    symbols: SymbolGrid
    alignments: tuple = ()

    @property
    def n_slots(self):
        return len(self.slots)

    @property
    def n_symbols(self):
        return len(self.symbols.refs)

    def terms(self):
        """Iterate ``(slot, tx, term)`` triples."""
        for t, row in enumerate(self.slots):
            for j, terms in enumerate(row):
                for term in terms:
                    yield t, j, term

    def desired(self, rx):
        """Column indices of the symbols intended for ``rx``."""
        return [k for k, ref in enumerate(self.symbols.refs) if ref.rx == rx]

    def precoder(self):
        """Matrix ``G[..., t, j, k]`` with ``X_j(t) = sum_k G[t, j, k] s_k``."""
        batch = self.symbols.values.shape[:-1]
        for _, _, term in self.terms():
            batch = np.broadcast_shapes(batch, np.shape(term.coef))
        G = np.zeros(batch + (self.n_slots, self.n_tx, self.n_symbols), dtype=complex)
        index = {ref: k for k, ref in enumerate(self.symbols.refs)}
        for t, j, term in self.terms():
            G[..., t, j, index[term.symbol]] += term.coef
        return G

    def transmit(self):
        """Transmit signals ``X[..., t, j]``."""
        return np.einsum("...tjk,...k->...tj", self.precoder(), self.symbols.values)

    def annotation(self, rx, t):
        """``"L"`` (only desired symbols), ``"I"`` (only undesired) or ``"mixed"``."""
        refs = {term.symbol for terms in self.slots[t] for term in terms}
        wanted = {ref.rx == rx for ref in refs}
        if wanted == {True}:
            return "L"
        if wanted == {True, False}:
            return "mixed"
        return "I"


def dump_plan(plan):
    """
    Render a plan as structured text, one record per slot per transmitter.

    Indices are one-based. Each record lists the terms of ``X_j(t)``; a term
    shows its symbolic precoder, the numeric coefficient (single
    realizations only) and the provenance of every CSIT lookup.
    """
    single = np.ndim(plan.symbols.values) == 1
    lines = [f"# plan scheme={plan.scheme} pattern={plan.pattern} "
             f"n_rx={plan.n_rx} n_tx={plan.n_tx} n_slots={plan.n_slots} "
             f"n_symbols={plan.n_symbols}"]
    for t, row in enumerate(plan.slots):
        for j, terms in enumerate(row):
            head = f"slot={t + 1} tx={j + 1}"
            if not terms:
                lines.append(f"{head} X=0")
                continue
            lines.append(f"{head} X={' + '.join(term.formula() for term in terms)}")
            for term in terms:
                prov = ",".join(f"h{q.rx + 1}{q.tx + 1}({q.slot + 1})^{e}" for q, e in term.factors)
                rec = f"  symbol={term.symbol.label()} provenance=[{prov}]"
                if single:
                    c = complex(term.coef)
                    rec += f" coef={c.real:+.12e}{c.imag:+.12e}j"
                lines.append(rec)
    return "\n".join(lines) + "\n"
