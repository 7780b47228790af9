"""Ancillary heuristic re-indexing: best of three sorting orders.

Each primitive set is viewed as a chain of blocks 0..max(P); position 1 is
the top of the staircase.
"""
from __future__ import annotations

from collections import Counter
from typing import Callable, Sequence

from ..circuits import PrimitiveSets, SyndromeCircuit, primitive_sets
from .schedule import Reindexing, ShuttleSchedule, gate_shuffle

Order = list[int]


def _length(p: frozenset[int]) -> int:
    return max(p) + 1


def order_by_length(sets: Sequence[frozenset[int]]) -> Order:
    """Longest block chain first."""
    return sorted(range(len(sets)), key=lambda i: (-_length(sets[i]), i))


def order_by_leading_air(sets: Sequence[frozenset[int]]) -> Order:
    """Most air blocks before the first solid block first; ties by length."""
    return sorted(range(len(sets)), key=lambda i: (-min(sets[i]), -_length(sets[i]), i))


def order_by_first_element(sets: Sequence[frozenset[int]]) -> Order:
    """Descending first element, each repeat pushed back by its occurrence count.

    ``[6,6,6,5,5,4,3,3,2,1,1,0]`` becomes ``[6,5,4,3,2,1,0,6,5,3,1,6]``.
    Sets are read in ascending order, so the first element is the smallest.
    """
    first = [min(p) for p in sets]
    base = sorted(range(len(sets)), key=lambda i: (-first[i], -_length(sets[i]), i))
    seen: Counter[int] = Counter()
    rank = [0] * len(sets)
    for i in base:
        rank[i] = seen[first[i]]
        seen[first[i]] += 1
    return sorted(base, key=lambda i: (rank[i], -first[i], -_length(sets[i]), i))


HEURISTICS: dict[str, Callable[[Sequence[frozenset[int]]], Order]] = {
    "h1": order_by_length,
    "h2": order_by_leading_air,
    "h3": order_by_first_element,
}


def ahr_candidates(target: SyndromeCircuit | PrimitiveSets) -> dict[str, tuple[Reindexing, int]]:
    """Reindexing and distinct-output count for each heuristic, in h1, h2, h3 order."""
    ps = primitive_sets(target) if isinstance(target, SyndromeCircuit) else target
    out = {}
    for name, heuristic in HEURISTICS.items():
        r = Reindexing.from_order(heuristic(ps.sets))
        out[name] = (r, len(ps.outputs(r.pi)))
    return out


def ahr(
    circuit: SyndromeCircuit, *, allow_mixed: bool = False
) -> tuple[Reindexing, ShuttleSchedule]:
    candidates = ahr_candidates(circuit)
    # min() keeps the first of equal counts, so ties resolve h1, h2, h3
    name = min(candidates, key=lambda k: candidates[k][1])
    r = candidates[name][0]
    schedule = gate_shuffle(circuit, r, allow_mixed=allow_mixed, pass_name="ahr")
    schedule.meta.update(heuristic=name, candidates={k: v[1] for k, v in candidates.items()})
    return r, schedule
