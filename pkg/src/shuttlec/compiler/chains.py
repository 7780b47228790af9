"""Chain decomposition and ladder packing for Shor-style circuits.

With singleton primitive sets the problem reduces to placing values ``p`` on
ladder rungs ``k = 1..s`` so that ``p + k`` takes few distinct values. A chain
is a descending run of distinct values, possibly with gaps, that lands on a
single output when laid on consecutive rungs.
"""
from __future__ import annotations

from collections import Counter, defaultdict, deque
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from ..circuits import SyndromeCircuit, primitive_sets
from .schedule import CompileError, Reindexing, ShuttleSchedule, gate_shuffle

GAP = -1

Chain = tuple[int, ...]


def _strip(chain: Sequence[int]) -> Chain:
    lo, hi = 0, len(chain)
    while lo < hi and chain[lo] == GAP:
        lo += 1
    while hi > lo and chain[hi - 1] == GAP:
        hi -= 1
    return tuple(chain[lo:hi])


def nongap(chain: Chain) -> int:
    return sum(1 for v in chain if v != GAP)


def gap_runs(chain: Chain) -> int:
    runs, prev = 0, None
    for v in chain:
        if v == GAP and prev != GAP:
            runs += 1
        prev = v
    return runs


@dataclass(frozen=True)
class ChainSet:
    """Chains laid out descending; entry ``j`` of a chain holds ``chain[0] - j`` or GAP."""

    chains: tuple[Chain, ...]

    def __post_init__(self) -> None:
        for c in self.chains:
            if not c or c[0] == GAP or c[-1] == GAP:
                raise ValueError(f"chain {c} must start and end with a value")
            for j, v in enumerate(c):
                if v != GAP and v != c[0] - j:
                    raise ValueError(f"chain {c} is not a descending layout")

    def __len__(self) -> int:
        return len(self.chains)

    def values(self) -> list[int]:
        return sorted((v for c in self.chains for v in c if v != GAP), reverse=True)

    @property
    def gap_entries(self) -> int:
        """Total size of all gaps, i.e. blank dots needed by the consecutive layout."""
        return sum(c.count(GAP) for c in self.chains)

    @property
    def gap_runs(self) -> int:
        return sum(gap_runs(c) for c in self.chains)


def make_chains(values: Sequence[int]) -> ChainSet:
    """Minimal chain decomposition: each value goes to the first chain missing it."""
    if len(values) == 0:
        raise ValueError("make_chains needs a nonempty multiset")
    if min(values) < 0:
        raise ValueError("values must be non-negative")
    xs = sorted((int(v) for v in values), reverse=True)
    top = xs[0]
    rows = max(Counter(xs).values())
    grid = [[GAP] * (top + 1) for _ in range(rows)]
    for x in xs:
        idx = top - x
        for row in grid:
            if row[idx] == GAP:
                row[idx] = x
                break
    return ChainSet(tuple(_strip(row) for row in grid))


# ---------------------------------------------------------------------------
# greedy packing


SplitTie = Literal["last", "first"]


def split_chain(chain: Chain, tie: SplitTie = "last") -> tuple[Chain, Chain]:
    """Split at the gap nearest either end, or peel off the first element.

    When the first and last gap are equally near their ends, ``tie`` picks which.
    """
    if GAP not in chain:
        return chain[:1], chain[1:]
    first = chain.index(GAP)
    last = len(chain) - 1 - chain[::-1].index(GAP)
    from_start, from_end = first, len(chain) - 1 - last
    if from_start < from_end or (from_start == from_end and tie == "first"):
        cut = first
    else:
        cut = last
    return _strip(chain[:cut]), _strip(chain[cut + 1:])


@dataclass(frozen=True)
class Packing:
    ladder: tuple[int, ...]
    placements: tuple[tuple[int, Chain], ...]  # (0-based start rung, chain)

    @property
    def outputs(self) -> set[int]:
        return {v + k for k, v in enumerate(self.ladder, start=1)}

    @property
    def shuttles(self) -> int:
        return len(self.outputs)


def _first_fit(occupied: np.ndarray, chain: Chain) -> int:
    mask = np.array([v != GAP for v in chain], dtype=np.int64)
    if mask.size > occupied.size:
        return -1
    clashes = np.correlate(occupied, mask, mode="valid")
    free = np.flatnonzero(clashes == 0)
    return int(free[0]) if free.size else -1


def pack_chains(chains: ChainSet, s: int | None = None, *, tie: SplitTie = "last") -> Packing:
    """Greedy ladder packing with splitting.

    The pool is kept sorted by non-gap count (descending), then by first value
    (descending), then by insertion order. Each chain goes to the lowest rung
    offset where all its values land on free rungs; otherwise it is split and
    both halves return to the pool.
    """
    total = sum(nongap(c) for c in chains.chains)
    if s is None:
        s = total
    if total != s:
        raise CompileError(f"chains hold {total} values but the ladder has {s} rungs")
    occupied = np.zeros(s, dtype=np.int64)
    ladder = [GAP] * s
    placements = []
    seq = 0
    pool: list[tuple[int, int, int, Chain]] = []

    def push(c: Chain) -> None:
        nonlocal seq
        pool.append((-nongap(c), -c[0], seq, c))
        seq += 1

    for c in chains.chains:
        push(c)
    pool.sort()
    while pool:
        *_, chain = pool.pop(0)
        at = _first_fit(occupied, chain)
        if at < 0:
            for piece in split_chain(chain, tie):
                push(piece)
            pool.sort()
            continue
        for j, v in enumerate(chain):
            if v != GAP:
                ladder[at + j] = v
                occupied[at + j] = 1
        placements.append((at, chain))
    return Packing(tuple(ladder), tuple(placements))


def assign_slots(values: Sequence[int], ladder: Sequence[int], length: int | None = None) -> Reindexing:
    """Reindexing that puts slot ``i`` (holding ``values[i]``) on a rung holding that value.

    Equal values are matched in ascending slot and rung order. GAP rungs stay empty.
    """
    rungs: dict[int, deque[int]] = defaultdict(deque)
    for k, v in enumerate(ladder, start=1):
        if v != GAP:
            rungs[v].append(k)
    pi = []
    for v in values:
        if not rungs[v]:
            raise CompileError(f"ladder has no free rung for value {v}")
        pi.append(rungs[v].popleft())
    return Reindexing(tuple(pi), length or len(ladder))


def _singleton_values(circuit: SyndromeCircuit) -> list[int]:
    if not circuit.is_singleton():
        raise CompileError("chain-based passes need a Shor-style circuit (one gate per ancilla)")
    return primitive_sets(circuit).values()


def sssc(
    circuit: SyndromeCircuit, *, tie: SplitTie = "last", allow_mixed: bool = False
) -> tuple[Reindexing, ShuttleSchedule]:
    """Specialized Shor syndrome compilation: minimal chains, then greedy packing."""
    values = _singleton_values(circuit)
    chains = make_chains(values)
    packing = pack_chains(chains, circuit.s, tie=tie)
    r = assign_slots(values, packing.ladder)
    schedule = gate_shuffle(circuit, r, allow_mixed=allow_mixed, pass_name="sssc")
    schedule.meta.update(num_chains=len(chains), pieces=len(packing.placements))
    return r, schedule


@dataclass(frozen=True)
class BlanksLayout:
    shuttles: int
    blanks: int
    gap_runs: int
    layout: tuple[int, ...]  # concatenated chains; GAP entries are blank dots


def blanks_compile(chains: ChainSet) -> BlanksLayout:
    """Lay the minimal chains end to end, keeping gaps as empty dots."""
    layout = tuple(v for c in chains.chains for v in c)
    return BlanksLayout(len(chains), chains.gap_entries, chains.gap_runs, layout)


def blanks_schedule(
    circuit: SyndromeCircuit, *, allow_mixed: bool = False
) -> tuple[Reindexing, ShuttleSchedule]:
    values = _singleton_values(circuit)
    result = blanks_compile(make_chains(values))
    r = assign_slots(values, result.layout, len(result.layout))
    schedule = gate_shuffle(
        circuit, r, allow_mixed=allow_mixed, pass_name="blanks", blanks=result.blanks
    )
    schedule.meta.update(gap_runs=result.gap_runs)
    return r, schedule
