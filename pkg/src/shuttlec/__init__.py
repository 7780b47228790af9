"""Shuttle-count compilation of syndrome-extraction circuits on 2xN quantum-dot arrays."""
from .circuits import (
    Gate,
    PrimitiveSets,
    SyndromeCircuit,
    build_circuit,
    naive_circuit,
    primitive_sets,
    shor_circuit,
)
from .codes import CssCode, code_from_name
from .compiler import (
    Reindexing,
    ShuttleSchedule,
    ahr,
    blanks_compile,
    compile_best,
    gate_shuffle,
    make_chains,
    sssc,
)
from .oracle import brute_force, lower_bound

__version__ = "0.1.0"

__all__ = [
    "CssCode",
    "Gate",
    "PrimitiveSets",
    "Reindexing",
    "ShuttleSchedule",
    "SyndromeCircuit",
    "ahr",
    "blanks_compile",
    "brute_force",
    "build_circuit",
    "code_from_name",
    "compile_best",
    "gate_shuffle",
    "lower_bound",
    "make_chains",
    "naive_circuit",
    "primitive_sets",
    "shor_circuit",
    "sssc",
]
