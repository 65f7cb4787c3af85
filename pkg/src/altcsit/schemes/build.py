"""Evaluate a scheme construction on a channel realization."""

from ..csit import CsitPattern, CsitView, dominates
from ..errors import InvalidDimension, PatternMismatch
from .constructions import Resurrect, construction
from .plan import Alignment, Term, TransmitPlan, draw_symbols


def symbol_layout(scheme):
    """Symbols carried by ``scheme``, in plan column order."""
    return construction(scheme).symbols


def build_plan(scheme, pattern, channel, symbols=None):
    """
    Slot-by-slot transmit plan of ``scheme`` under ``pattern``.

    Every precoder coefficient is obtained through a :class:`CsitView` of
    the transmitter that uses it, so a plan can only contain knowledge the
    pattern grants. A pattern that carries more CSIT than the scheme's
    minimal pattern is accepted and uses the same transmit equations.

    Parameters
    ----------
    scheme : SchemeId
    pattern : CsitPattern or str
    channel : ChannelProcess
        May be batched; coefficients then carry the batch shape.
    symbols : SymbolGrid, optional
        Must list exactly :func:`symbol_layout` ``(scheme)``. Drawn from the
        channel seed when omitted.

    Raises
    ------
    PatternMismatch
        ``pattern`` does not dominate the scheme's minimal pattern.
    """
    c = construction(scheme)
    pattern = CsitPattern.coerce(pattern)
    if not dominates(pattern, c.pattern):
        raise PatternMismatch(f"{scheme} needs a pattern at least {c.pattern}, got {pattern}")
    if (channel.n_rx, channel.n_tx) != (c.n_rx, c.n_tx) or channel.n_slots < c.n_slots:
        raise InvalidDimension(
            f"{scheme} runs on {c.n_rx}x{c.n_tx} links over {c.n_slots} slots, channel is "
            f"{channel.n_rx}x{channel.n_tx} over {channel.n_slots}")
    if symbols is None:
        symbols = draw_symbols(c.symbols, channel.seed or 0, channel.batch_shape)
    elif tuple(symbols.refs) != c.symbols:
        raise InvalidDimension(f"{scheme} carries {len(c.symbols)} specific symbols; grid does not match")

    slots = [[[] for _ in range(c.n_tx)] for _ in range(c.n_slots)]
    for op in c.ops:
        if not isinstance(op, Resurrect):
            slots[op.slot][op.symbol.tx].append(Term(op.symbol, 1.0))
            continue
        for sym in op.symbols:
            view = CsitView(pattern, channel, sym.tx, op.slot)
            stored = view.query(op.rx, op.created)
            current = view.query(op.rx, op.slot)
            factors = tuple(zip(view.log, (1, -1)))
            slots[op.slot][sym.tx].append(Term(sym, stored / current, factors))

    alignments = tuple(Alignment(op.rx, op.created, op.slot)
                       for op in c.ops if isinstance(op, Resurrect))
    return TransmitPlan(
        scheme=scheme,
        pattern=pattern,
        n_rx=c.n_rx,
        n_tx=c.n_tx,
        slots=tuple(tuple(tuple(terms) for terms in row) for row in slots),
        symbols=symbols,
        alignments=alignments,
    )

