"""Syndrome-extraction circuits and the offset structure the compiler works on.

Data qubits sit in the fixed top row (1..n), ancillas in the movable bottom
row. A gate between data qubit ``d`` and an ancilla at bottom-row position
``k`` executes when the row offset equals ``delta = (n - d) + k``. The term
``n - d`` is the gate's offset value: 0 for the rightmost data column.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

import numpy as np

from .codes import BinaryMatrix, CodeError, CssCode, as_binary_matrix

Style = Literal["naive", "shor"]


class CircuitError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Gate:
    data: int
    ancilla: int
    basis: str = "X"
    check: int = 1


@dataclass(frozen=True)
class SyndromeCircuit:
    """Two-qubit gates of a syndrome-extraction round.

    ``positions[i]`` is the bottom-row position of ancilla slot ``i + 1``.
    Re-indexing only ever changes ``positions``; gates keep their slot labels.
    """

    n: int
    s: int
    gates: tuple[Gate, ...]
    style: Style = "naive"
    positions: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.positions:
            object.__setattr__(self, "positions", tuple(range(1, self.s + 1)))
        if len(self.positions) != self.s:
            raise CircuitError(f"{len(self.positions)} positions for {self.s} ancillas")
        if len(set(self.positions)) != self.s or min(self.positions, default=1) < 1:
            raise CircuitError("ancilla positions must be distinct positive integers")
        for g in self.gates:
            if not 1 <= g.data <= self.n:
                raise CircuitError(f"gate {g} has data index outside 1..{self.n}")
            if not 1 <= g.ancilla <= self.s:
                raise CircuitError(f"gate {g} has ancilla index outside 1..{self.s}")

    @property
    def bases(self) -> frozenset[str]:
        return frozenset(g.basis for g in self.gates)

    def offset(self, gate: Gate) -> int:
        return self.n - gate.data

    def delta(self, gate: Gate) -> int:
        return delta(gate, self.positions, self.n)

    def deltas(self) -> list[int]:
        return [self.delta(g) for g in self.gates]

    def is_singleton(self) -> bool:
        """True when every ancilla touches exactly one gate (Shor-style structure)."""
        degree = np.zeros(self.s + 1, dtype=np.int64)
        for g in self.gates:
            degree[g.ancilla] += 1
        return bool((degree[1:] == 1).all())


def delta(gate: Gate, positions: Sequence[int], n: int) -> int:
    return (n - gate.data) + positions[gate.ancilla - 1]


def _rows(matrix: BinaryMatrix) -> list[list[int]]:
    m = as_binary_matrix(matrix)
    rows = []
    for r, row in enumerate(m):
        support = [int(c) + 1 for c in np.flatnonzero(row)]
        if not support:
            raise CodeError(f"row {r + 1} is all zero")
        rows.append(support)
    return rows


def naive_circuit(matrix: BinaryMatrix, basis: str = "X") -> SyndromeCircuit:
    """One ancilla per check row, coupled to every data qubit in its support."""
    rows = _rows(matrix)
    gates = tuple(
        Gate(d, r, basis, r) for r, support in enumerate(rows, start=1) for d in support
    )
    return SyndromeCircuit(int(matrix.shape[1]), len(rows), gates, "naive")


def shor_circuit(matrix: BinaryMatrix, basis: str = "X") -> SyndromeCircuit:
    """One ancilla per nonzero entry, numbered in row-major order."""
    rows = _rows(matrix)
    gates = []
    for r, support in enumerate(rows, start=1):
        for d in support:
            gates.append(Gate(d, len(gates) + 1, basis, r))
    return SyndromeCircuit(int(matrix.shape[1]), len(gates), tuple(gates), "shor")


def build_circuit(matrix: BinaryMatrix, style: Style, basis: str = "X") -> SyndromeCircuit:
    if style == "naive":
        return naive_circuit(matrix, basis)
    if style == "shor":
        return shor_circuit(matrix, basis)
    raise CircuitError(f"unknown style {style!r}")


def combined_circuit(code: CssCode, style: Style) -> SyndromeCircuit:
    """X then Z checks in a single circuit. Only meaningful for illustration;
    real schedules compile each basis separately."""
    x = build_circuit(code.hx, style, "X")
    z = build_circuit(code.hz, style, "Z")
    rx = code.hx.shape[0]
    gates = list(x.gates)
    gates += [Gate(g.data, g.ancilla + x.s, "Z", g.check + rx) for g in z.gates]
    return SyndromeCircuit(code.n, x.s + z.s, tuple(gates), style)


@dataclass(frozen=True)
class PrimitiveSets:
    """Per-ancilla offset sets and current bottom-row positions."""

    sets: tuple[frozenset[int], ...]
    positions: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.sets) != len(self.positions):
            raise CircuitError("sets and positions differ in length")
        if any(not p for p in self.sets):
            raise CircuitError("primitive sets must be nonempty")

    @property
    def s(self) -> int:
        return len(self.sets)

    def outputs(self, positions: Sequence[int] | None = None) -> set[int]:
        pos = self.positions if positions is None else positions
        return {v + k for p, k in zip(self.sets, pos) for v in p}

    def values(self) -> list[int]:
        """Offsets of singleton sets, in slot order."""
        if any(len(p) != 1 for p in self.sets):
            raise CircuitError("values() needs every primitive set to be a singleton")
        return [next(iter(p)) for p in self.sets]


def primitive_sets(circuit: SyndromeCircuit) -> PrimitiveSets:
    buckets: list[set[int]] = [set() for _ in range(circuit.s)]
    for g in circuit.gates:
        buckets[g.ancilla - 1].add(circuit.n - g.data)
    return PrimitiveSets(tuple(frozenset(b) for b in buckets), circuit.positions)


def uncompiled_shuttles(circuit: SyndromeCircuit) -> int:
    """Shuttles needed to run the gates in stored order, moving whenever delta changes."""
    deltas = circuit.deltas()
    if not deltas:
        return 0
    return 1 + sum(1 for a, b in zip(deltas, deltas[1:]) if a != b)


# ---------------------------------------------------------------------------
# dump format: header "n s style", then "<data> <ancilla> <basis> <check>" per gate


def format_circuit(circuit: SyndromeCircuit) -> str:
    lines = [f"{circuit.n} {circuit.s} {circuit.style}"]
    lines += [f"{g.data} {g.ancilla} {g.basis} {g.check}" for g in circuit.gates]
    return "\n".join(lines) + "\n"


def parse_circuit(text: str) -> SyndromeCircuit:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or len(lines[0]) != 3:
        raise CircuitError("circuit dump must start with 'n s style'")
    try:
        n, s = int(lines[0][0]), int(lines[0][1])
        gates = tuple(Gate(int(d), int(a), b, int(c)) for d, a, b, c in lines[1:])
    except ValueError as exc:
        raise CircuitError(f"malformed circuit dump: {exc}") from None
    style = lines[0][2]
    if style not in ("naive", "shor"):
        raise CircuitError(f"unknown style {style!r}")
    return SyndromeCircuit(n, s, gates, style)  # type: ignore[arg-type]


def circuit_from_gates(n: int, pairs: Iterable[tuple[int, int]], basis: str = "X") -> SyndromeCircuit:
    """Small helper for hand-written circuits given as ``(data, ancilla)`` pairs."""
    pairs = list(pairs)
    s = max(a for _, a in pairs)
    gates = tuple(Gate(d, a, basis, a) for d, a in pairs)
    style: Style = "shor" if len({a for _, a in pairs}) == len(pairs) else "naive"
    return SyndromeCircuit(n, s, gates, style)
