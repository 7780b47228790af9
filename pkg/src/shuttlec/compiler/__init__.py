"""Shuttle-minimizing passes for syndrome-extraction circuits on a 2xN array."""
from .ahr import ahr, ahr_candidates, order_by_first_element, order_by_leading_air, order_by_length
from .best import PASSES, CompileResult, compile_best
from .chains import (
    GAP,
    BlanksLayout,
    ChainSet,
    Packing,
    assign_slots,
    blanks_compile,
    blanks_schedule,
    make_chains,
    pack_chains,
    split_chain,
    sssc,
)
from .interweave import apply_interweave, interweave_plan
from .schedule import (
    CompileError,
    MixedBasisError,
    Reindexing,
    ShuttleSchedule,
    apply_reindexing,
    distinct_deltas,
    gate_multiset,
    gate_shuffle,
)

__all__ = [
    "GAP",
    "PASSES",
    "BlanksLayout",
    "ChainSet",
    "CompileError",
    "CompileResult",
    "MixedBasisError",
    "Packing",
    "Reindexing",
    "ShuttleSchedule",
    "ahr",
    "ahr_candidates",
    "apply_interweave",
    "apply_reindexing",
    "assign_slots",
    "blanks_compile",
    "blanks_schedule",
    "compile_best",
    "distinct_deltas",
    "gate_multiset",
    "gate_shuffle",
    "interweave_plan",
    "make_chains",
    "order_by_first_element",
    "order_by_leading_air",
    "order_by_length",
    "pack_chains",
    "split_chain",
    "sssc",
]
