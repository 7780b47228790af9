from __future__ import annotations

from dataclasses import dataclass, field
from itertools import groupby
from typing import Any, Iterable, Sequence

from ..circuits import Gate, SyndromeCircuit, delta


class CompileError(ValueError):
    pass


class MixedBasisError(CompileError):
    def __init__(self) -> None:
        super().__init__(
            "circuit mixes X and Z checks; compile each basis separately "
            "or pass allow_mixed=True"
        )


@dataclass(frozen=True)
class Reindexing:
    """Map from ancilla slot (1-based) to bottom-row position.

    ``pi[i]`` is the position of slot ``i + 1``. ``length`` is the physical row
    length; it exceeds ``len(pi)`` only when blank dots are inserted, in which
    case the map is injective rather than a bijection.
    """

    pi: tuple[int, ...]
    length: int = 0

    def __post_init__(self) -> None:
        pi = tuple(int(p) for p in self.pi)
        object.__setattr__(self, "pi", pi)
        if not self.length:
            object.__setattr__(self, "length", len(pi))
        if self.length < len(pi):
            raise CompileError("row length shorter than the number of ancillas")
        if len(set(pi)) != len(pi) or any(not 1 <= p <= self.length for p in pi):
            raise CompileError(f"not an injection into 1..{self.length}: {pi}")

    @classmethod
    def identity(cls, s: int) -> Reindexing:
        return cls(tuple(range(1, s + 1)))

    @classmethod
    def from_order(cls, order: Sequence[int]) -> Reindexing:
        """``order[j]`` is the 0-based slot placed at position ``j + 1``."""
        pi = [0] * len(order)
        for pos, slot in enumerate(order, start=1):
            pi[slot] = pos
        return cls(tuple(pi))

    @property
    def s(self) -> int:
        return len(self.pi)

    @property
    def is_bijection(self) -> bool:
        return self.length == len(self.pi)

    def order(self) -> list[int]:
        """0-based slots sorted by position."""
        return sorted(range(self.s), key=self.pi.__getitem__)


@dataclass(frozen=True)
class ShuttleSchedule:
    """Gate groups, one per row offset, visited in ascending delta order."""

    groups: tuple[tuple[int, tuple[Gate, ...]], ...]
    reindexing: Reindexing
    n: int
    blanks: int = 0
    pass_name: str = "shuffle"
    meta: dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def shuttles(self) -> int:
        return len(self.groups)

    @property
    def deltas(self) -> list[int]:
        return [d for d, _ in self.groups]

    def gates(self) -> list[Gate]:
        return [g for _, gs in self.groups for g in gs]

    def validate(self, circuit: SyndromeCircuit) -> None:
        """Raise :class:`CompileError` if the schedule is not a valid compilation of ``circuit``."""
        if sorted(self.gates()) != sorted(circuit.gates):
            raise CompileError("schedule does not contain exactly the circuit's gates")
        pos = self.reindexing.pi
        for d, gates in self.groups:
            for g in gates:
                if delta(g, pos, self.n) != d:
                    raise CompileError(f"gate {g} does not have delta {d}")
            if len({g.data for g in gates}) != len(gates):
                raise CompileError(f"group delta={d} reuses a data qubit")
            if len({g.ancilla for g in gates}) != len(gates):
                raise CompileError(f"group delta={d} reuses an ancilla")
        ds = self.deltas
        if len(set(ds)) != len(ds):
            raise CompileError("two groups share a delta value")

    def to_dict(self) -> dict[str, Any]:
        return {
            "pass": self.pass_name,
            "shuttles": self.shuttles,
            "blanks": self.blanks,
            "row_length": self.reindexing.length,
            "reindexing": list(self.reindexing.pi),
            "groups": [
                {
                    "delta": d,
                    "gates": [
                        {"data": g.data, "ancilla": g.ancilla, "basis": g.basis, "check": g.check}
                        for g in gates
                    ],
                }
                for d, gates in self.groups
            ],
        }

    def to_text(self) -> str:
        """Fixed-width listing, one block per shuttle configuration."""
        pos = self.reindexing.pi
        lines = [f"{'group':>5} {'delta':>5}  gates (data-position:basis)"]
        for i, (d, gates) in enumerate(self.groups, start=1):
            body = " ".join(f"{g.data}-{pos[g.ancilla - 1]}:{g.basis}" for g in gates)
            lines.append(f"{i:>5} {d:>5}  {body}")
        lines.append(f"shuttles={self.shuttles} blanks={self.blanks}")
        return "\n".join(lines) + "\n"


def _as_reindexing(pi: Reindexing | Sequence[int] | None, circuit: SyndromeCircuit) -> Reindexing:
    if pi is None:
        return Reindexing(circuit.positions, max(circuit.positions, default=0))
    if isinstance(pi, Reindexing):
        r = pi
    else:
        r = Reindexing(tuple(pi))
    if r.s != circuit.s:
        raise CompileError(f"reindexing covers {r.s} slots, circuit has {circuit.s}")
    return r


def apply_reindexing(
    circuit: SyndromeCircuit, pi: Reindexing | Sequence[int]
) -> SyndromeCircuit:
    """Move ancillas to the positions given by ``pi``; data indices are untouched."""
    r = _as_reindexing(pi, circuit)
    return SyndromeCircuit(circuit.n, circuit.s, circuit.gates, circuit.style, r.pi)


def distinct_deltas(circuit: SyndromeCircuit, positions: Sequence[int] | None = None) -> int:
    pos = circuit.positions if positions is None else positions
    return len({delta(g, pos, circuit.n) for g in circuit.gates})


def gate_shuffle(
    circuit: SyndromeCircuit,
    reindexing: Reindexing | Sequence[int] | None = None,
    *,
    allow_mixed: bool = False,
    pass_name: str = "shuffle",
    blanks: int = 0,
) -> ShuttleSchedule:
    """Group gates by delta; the group count is the shuttle count."""
    if len(circuit.bases) > 1 and not allow_mixed:
        raise MixedBasisError()
    r = _as_reindexing(reindexing, circuit)
    keyed = sorted(
        ((delta(g, r.pi, circuit.n), i, g) for i, g in enumerate(circuit.gates)),
        key=lambda t: (t[0], t[1]),
    )
    groups = tuple(
        (d, tuple(g for _, _, g in items)) for d, items in groupby(keyed, key=lambda t: t[0])
    )
    return ShuttleSchedule(groups, r, circuit.n, blanks=blanks, pass_name=pass_name)


def gate_multiset(gates: Iterable[Gate]) -> list[tuple[int, str, int]]:
    """(data, basis, check) triples; invariant under every compilation pass."""
    return sorted((g.data, g.basis, g.check) for g in gates)
