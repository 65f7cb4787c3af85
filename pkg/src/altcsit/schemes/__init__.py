"""Transmission schemes: constructions, plans, decoding and DoF bookkeeping."""

from ..scheme_ids import (SCHEME1, SCHEME1M, SCHEME2, SCHEME2M, SCHEME3, SCHEME3M,
                          THREE_USER, KUser, Kx2, SchemeId, TwoXK)
from .build import build_plan, symbol_layout
from .constructions import construction, minimal_pattern
from .decoding import (LedgerEntry, ReceiverLedger, decode, decoding_condition,
                       interference_rank, observation_map, recipe_decode, recipe_rows,
                       run, solve)
from .dof import CORNERS, CornerBasis, dof_count, dof_tuple, time_share
from .plan import (Alignment, SymbolGrid, SymbolRef, Term, TransmitPlan, draw_symbols,
                   dump_plan)

__all__ = [
    "SCHEME1", "SCHEME1M", "SCHEME2", "SCHEME2M", "SCHEME3", "SCHEME3M", "THREE_USER",
    "KUser", "Kx2", "SchemeId", "TwoXK", "build_plan", "symbol_layout", "construction",
    "minimal_pattern", "LedgerEntry", "ReceiverLedger", "decode", "decoding_condition",
    "interference_rank", "observation_map", "recipe_decode", "recipe_rows", "run", "solve",
    "CORNERS", "CornerBasis", "dof_count", "dof_tuple", "time_share", "Alignment",
    "SymbolGrid", "SymbolRef", "Term", "TransmitPlan", "draw_symbols", "dump_plan",
]
