from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..circuits import SyndromeCircuit, primitive_sets, uncompiled_shuttles
from .ahr import ahr
from .chains import blanks_compile, blanks_schedule, make_chains, sssc
from .schedule import ShuttleSchedule, gate_shuffle

PASSES = ("shuffle", "ahr", "sssc", "blanks")


@dataclass
class CompileResult:
    uncompiled: int
    gate_shuffled: int
    ahr: int
    ahr_heuristic: str
    sssc: int | None
    num_chains: int | None
    blanks: int | None
    gap_runs: int | None
    best_pass: str
    schedules: dict[str, ShuttleSchedule] = field(repr=False, default_factory=dict)

    @property
    def best(self) -> ShuttleSchedule:
        return self.schedules[self.best_pass]

    @property
    def best_shuttles(self) -> int:
        return self.best.shuttles

    def counts(self) -> dict[str, Any]:
        return {
            "uncompiled": self.uncompiled,
            "gate_shuffled": self.gate_shuffled,
            "ahr": self.ahr,
            "ahr_heuristic": self.ahr_heuristic,
            "sssc": self.sssc,
            "num_chains": self.num_chains,
            "blanks": self.blanks,
            "gap_runs": self.gap_runs,
            "best_pass": self.best_pass,
            "best": self.best_shuttles,
        }


def compile_best(circuit: SyndromeCircuit, *, allow_mixed: bool = False) -> CompileResult:
    """Run every applicable pass and pick the fewest shuttles without blank dots.

    Ties go to the earlier pass in shuffle, ahr, sssc order, so identity
    ordering wins whenever re-indexing does not help.
    """
    schedules = {"shuffle": gate_shuffle(circuit, allow_mixed=allow_mixed)}
    _, schedules["ahr"] = ahr(circuit, allow_mixed=allow_mixed)
    num_chains = blanks = runs = None
    if circuit.is_singleton():
        _, schedules["sssc"] = sssc(circuit, allow_mixed=allow_mixed)
        _, schedules["blanks"] = blanks_schedule(circuit, allow_mixed=allow_mixed)
        layout = blanks_compile(make_chains(primitive_sets(circuit).values()))
        num_chains, blanks, runs = layout.shuttles, layout.blanks, layout.gap_runs
    best = min(
        (p for p in ("shuffle", "ahr", "sssc") if p in schedules),
        key=lambda p: schedules[p].shuttles,
    )
    return CompileResult(
        uncompiled=uncompiled_shuttles(circuit),
        gate_shuffled=schedules["shuffle"].shuttles,
        ahr=schedules["ahr"].shuttles,
        ahr_heuristic=schedules["ahr"].meta["heuristic"],
        sssc=schedules["sssc"].shuttles if "sssc" in schedules else None,
        num_chains=num_chains,
        blanks=blanks,
        gap_runs=runs,
        best_pass=best,
        schedules=schedules,
    )
