"""Reordering freshly prepared cat-state qubits into the compiled ancilla order.

Qubits start in a staging row, labelled by the bottom-row position each must
end up at. Every step moves down, in one shuttle, the longest run of labels
``c, c+1, ...`` that appears left to right in the staging row, where ``c`` is
the smallest label not yet placed.
"""
from __future__ import annotations

from typing import Sequence

from .schedule import CompileError, Reindexing


def _check_permutation(labels: Sequence[int]) -> None:
    if sorted(labels) != list(range(1, len(labels) + 1)):
        raise CompileError(f"expected a permutation of 1..{len(labels)}, got {list(labels)}")


def interweave_plan(staging: Sequence[int] | Reindexing) -> list[tuple[int, ...]]:
    """Move groups, in order, that sort ``staging`` onto the main row."""
    labels = list(staging.pi) if isinstance(staging, Reindexing) else [int(v) for v in staging]
    _check_permutation(labels)
    where = {label: i for i, label in enumerate(labels)}
    plan: list[tuple[int, ...]] = []
    label = 1
    while label <= len(labels):
        run = [label]
        while label + 1 in where and where[label + 1] > where[label]:
            label += 1
            run.append(label)
        plan.append(tuple(run))
        label += 1
    return plan


def apply_interweave(staging: Sequence[int], plan: Sequence[Sequence[int]]) -> list[int]:
    """Simulate the plan; returns the main row left to right."""
    row = list(staging)
    main: list[int] = []
    for group in plan:
        cols = [row.index(label) for label in group]
        if cols != sorted(cols):
            raise CompileError(f"group {tuple(group)} is not in left-to-right order")
        # placed qubits shift left out of the way; the rest of the row keeps order
        main.extend(group)
        row = [q for q in row if q not in set(group)]
    if row:
        raise CompileError(f"plan leaves {row} in the staging row")
    return main
