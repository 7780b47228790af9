"""Seeded random instances and the oracle-vs-heuristic sandwich checks."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .circuits import SyndromeCircuit, naive_circuit, primitive_sets, shor_circuit
from .codes import BinaryMatrix
from .compiler import ahr_candidates, gate_shuffle, sssc
from .hardness import (
    count_outputs,
    extract_partition,
    pack_from_partition,
    random_yes_instance,
    reduce,
    verify_lemmas,
)
from .oracle import brute_force, evaluate, lower_bound


def random_matrix(rng: random.Random, rows: int, n: int, nnz: int) -> BinaryMatrix:
    """``rows x n`` binary matrix with exactly ``nnz`` ones and no zero row."""
    if not rows <= nnz <= rows * n:
        raise ValueError(f"cannot place {nnz} ones in {rows} nonzero rows of width {n}")
    m = np.zeros((rows, n), dtype=np.uint8)
    for r in range(rows):
        m[r, rng.randrange(n)] = 1
    free = [(r, c) for r in range(rows) for c in range(n) if not m[r, c]]
    for r, c in rng.sample(free, nnz - rows):
        m[r, c] = 1
    return m


def random_shor_circuit(rng: random.Random, max_s: int) -> SyndromeCircuit:
    s = rng.randint(1, max_s)
    rows = rng.randint(1, s)
    n = rng.randint(max(1, -(-s // rows)), max_s + 2)
    return shor_circuit(random_matrix(rng, rows, n, s))


def random_naive_circuit(rng: random.Random, max_s: int) -> SyndromeCircuit:
    s = rng.randint(1, max_s)
    n = rng.randint(2, 9)
    nnz = rng.randint(s, s * n)
    return naive_circuit(random_matrix(rng, s, n, nnz))


def random_column_regular(rng: random.Random, max_n: int = 40, max_w: int = 5) -> BinaryMatrix:
    """Every column has the same weight; zero rows are dropped."""
    w = rng.randint(1, max_w)
    n = rng.randint(1, max_n)
    rows = rng.randint(w, w + 6)
    m = np.zeros((rows, n), dtype=np.uint8)
    for c in range(n):
        m[rng.sample(range(rows), w), c] = 1
    return m[m.any(axis=1)]


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "checked": self.checked,
            "violations": len(self.violations),
            "examples": self.violations[:5],
        }


def shor_sandwich(count: int, max_s: int, seed: int, limit: int | None = None) -> SuiteResult:
    """lower_bound <= optimum <= SSSC <= gate-shuffled on random Shor-style circuits."""
    rng = random.Random(seed)
    out = SuiteResult("shor_sandwich")
    for i in range(count):
        circuit = random_shor_circuit(rng, max_s)
        values = primitive_sets(circuit).values()
        lb = lower_bound(values)
        opt = brute_force(primitive_sets(circuit), limit).optimum
        _, sched = sssc(circuit)
        shuffled = gate_shuffle(circuit).shuttles
        out.checked += 1
        if not lb <= opt <= sched.shuttles <= shuffled:
            out.violations.append(
                f"#{i} values={values}: lb={lb} opt={opt} sssc={sched.shuttles} shuffled={shuffled}"
            )
    return out


def naive_sandwich(count: int, max_s: int, seed: int, limit: int | None = None) -> SuiteResult:
    """optimum <= best AHR candidate, and each candidate's count re-evaluates exactly."""
    rng = random.Random(seed)
    out = SuiteResult("naive_sandwich")
    for i in range(count):
        circuit = random_naive_circuit(rng, max_s)
        ps = primitive_sets(circuit)
        opt = brute_force(ps, limit).optimum
        cands = ahr_candidates(circuit)
        best = min(c for _, c in cands.values())
        out.checked += 1
        stale = [h for h, (r, c) in cands.items() if evaluate(ps.sets, r.pi) != c]
        if opt > best or stale:
            out.violations.append(f"#{i} sets={[sorted(p) for p in ps.sets]}: opt={opt} ahr={best}")
    return out


def column_regular(count: int, seed: int) -> SuiteResult:
    rng = random.Random(seed)
    out = SuiteResult("column_regular")
    for i in range(count):
        m = random_column_regular(rng)
        w = int(m.sum(axis=0)[0])
        _, sched = sssc(shor_circuit(m))
        out.checked += 1
        if sched.shuttles != w:
            out.violations.append(f"#{i} shape={m.shape} w={w}: sssc={sched.shuttles}")
    return out


def reduction_roundtrip(count: int, seed: int, max_m: int = 3) -> SuiteResult:
    rng = random.Random(seed)
    out = SuiteResult("reduction")
    for i in range(count):
        inst, triples = random_yes_instance(rng, rng.randint(1, max_m))
        r = reduce(inst)
        report = verify_lemmas(r)
        pi = pack_from_partition(r, triples)
        got = count_outputs(r.s_multiset, pi.pi)
        back = extract_partition(r, pi)
        out.checked += 1
        if not report.ok or got != r.target or sorted(back) != sorted(triples):
            out.violations.append(f"#{i} a={inst.a} T={inst.t}: outputs={got} lemmas={report.ok}")
    return out


def run_all(count: int, max_s: int, seed: int, limit: int | None = None) -> list[SuiteResult]:
    if count <= 0:
        return []
    return [
        shor_sandwich(count, max_s, seed, limit),
        naive_sandwich(count, min(max_s, 7), seed + 1, limit),
        column_regular(count, seed + 2),
        reduction_roundtrip(max(1, count // 10), seed + 3),
    ]
