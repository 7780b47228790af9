"""Exhaustive reference solver for the ancilla re-indexing problem."""
from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Sequence

import numpy as np

from .circuits import PrimitiveSets
from .compiler.schedule import Reindexing

DEFAULT_LIMIT = 9
LIMIT_ENV = "SHUTTLEC_ORACLE_LIMIT"


class OracleLimitError(ValueError):
    pass


def default_limit() -> int:
    raw = os.environ.get(LIMIT_ENV)
    return int(raw) if raw else DEFAULT_LIMIT


@dataclass(frozen=True)
class OracleResult:
    optimum: int
    witness: Reindexing  # lexicographically smallest optimal slot -> position map
    explored: int


@lru_cache(maxsize=16)
def _perms(s: int) -> np.ndarray:
    """All permutations of 1..s in lexicographic order, shape (s!, s)."""
    return np.array(list(permutations(range(1, s + 1))), dtype=np.int32).reshape(-1, s)


def _count_outputs(sets: Sequence[frozenset[int]], perms: np.ndarray) -> np.ndarray:
    width = max(max(p) for p in sets) + perms.shape[1] + 1
    hit = np.zeros((perms.shape[0], width), dtype=bool)
    rows = np.arange(perms.shape[0])
    for i, p in enumerate(sets):
        for v in p:
            hit[rows, perms[:, i] + v] = True
    return hit.sum(axis=1)


def brute_force(sets: PrimitiveSets | Sequence[Sequence[int]], limit: int | None = None) -> OracleResult:
    """Minimize the number of distinct outputs over all s! position assignments."""
    raw = sets.sets if isinstance(sets, PrimitiveSets) else [frozenset(p) for p in sets]
    raw = [frozenset(int(v) for v in p) for p in raw]
    if any(not p for p in raw):
        raise ValueError("primitive sets must be nonempty")
    limit = default_limit() if limit is None else limit
    s = len(raw)
    if s > limit:
        raise OracleLimitError(f"s={s} exceeds the brute-force limit {limit}")
    if s == 0:
        return OracleResult(0, Reindexing(()), 1)
    perms = _perms(s)
    counts = _count_outputs(raw, perms)
    best = int(np.argmin(counts))
    witness = Reindexing(tuple(int(v) for v in perms[best]))
    return OracleResult(int(counts[best]), witness, len(perms))


def brute_force_values(values: Sequence[int], limit: int | None = None) -> OracleResult:
    """Shor-style case: every primitive set is a single value."""
    return brute_force([[v] for v in values], limit)


def lower_bound(values: Sequence[int]) -> int:
    if len(values) == 0:
        raise ValueError("lower_bound needs a nonempty multiset")
    return max(Counter(values).values())


def evaluate(sets: Sequence[Sequence[int]], positions: Reindexing | Sequence[int]) -> int:
    if isinstance(positions, Reindexing):
        positions = positions.pi
    return len({v + k for p, k in zip(sets, positions) for v in p})
