"""3-partition instances as Shor re-indexing instances.

Given ``A = {a_1..a_3m}`` with target ``T`` and spread ``a* = max A - min A``:

* chain ``c_i = {0, .., a* + a_i - 1}`` for every ``a_i``;
* chain ``c_0 = {B} + {F(i, j)}`` with ``B = |S| + T`` and
  ``F(i, j) = i(T + 3a*) + j + a*(i - 1) + B`` for ``i <= m``, ``j <= a*``.

``|S|`` counts ``c_0`` itself. Since ``|c_0| = m a* + 1`` regardless of the
partition, ``|S| = m(T + 4a*) + 1`` in closed form. ``c_0`` then spans exactly
``|S|`` consecutive values, so on a ladder of ``|S|`` rungs its placement is
forced and its ``m`` gaps of size ``T + 3a*`` are the bins for the triples.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .compiler.schedule import Reindexing


class ReductionError(ValueError):
    pass


class PartitionRecoveryError(ReductionError):
    pass


@dataclass(frozen=True)
class ThreePartitionInstance:
    a: tuple[int, ...]
    m: int
    t: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", tuple(int(v) for v in self.a))
        if self.m < 1 or len(self.a) != 3 * self.m:
            raise ReductionError(f"need 3m = {3 * self.m} integers, got {len(self.a)}")
        if any(v <= 0 for v in self.a):
            raise ReductionError("3-partition values must be positive")
        if sum(self.a) != self.m * self.t:
            raise ReductionError(f"values sum to {sum(self.a)}, expected m*T = {self.m * self.t}")

    def bounds_violations(self) -> list[int]:
        """1-based indices with a_i outside the open interval (T/4, T/2)."""
        return [i for i, v in enumerate(self.a, 1) if not (self.t < 4 * v and 2 * v < self.t)]

    @property
    def spread(self) -> int:
        return max(self.a) - min(self.a)


@dataclass(frozen=True)
class ReductionInstance:
    instance: ThreePartitionInstance
    a_star: int
    c0: tuple[int, ...]  # ascending
    chains: tuple[tuple[int, ...], ...]  # c_1..c_3m, ascending
    s_multiset: tuple[int, ...]  # c_0 then c_1..c_3m, in that order
    owners: tuple[int, ...] = field(repr=False)  # chain index of each multiset element

    @property
    def size(self) -> int:
        return len(self.s_multiset)

    @property
    def base(self) -> int:
        """Smallest element of c_0, ``|S| + T``."""
        return self.size + self.instance.t

    @property
    def bin_size(self) -> int:
        return self.instance.t + 3 * self.a_star

    @property
    def target(self) -> int:
        return 3 * self.instance.m + 1

    @property
    def degenerate(self) -> bool:
        return self.a_star == 0


def reduction_size(m: int, t: int, a_star: int) -> int:
    return m * (t + 4 * a_star) + 1


def reduce(instance: ThreePartitionInstance, *, enforce_bounds: bool = True) -> ReductionInstance:
    bad = instance.bounds_violations()
    if enforce_bounds and bad:
        vals = ", ".join(f"a_{i}={instance.a[i - 1]}" for i in bad)
        raise ReductionError(f"values must satisfy T/4 < a_i < T/2 with T={instance.t}: {vals}")
    m, t = instance.m, instance.t
    a_star = instance.spread
    size = reduction_size(m, t, a_star)
    base = size + t
    c0 = [base] + [
        i * (t + 3 * a_star) + j + a_star * (i - 1) + base
        for i in range(1, m + 1)
        for j in range(1, a_star + 1)
    ]
    chains = tuple(tuple(range(a_star + a)) for a in instance.a)
    multiset = list(c0)
    owners = [0] * len(c0)
    for idx, c in enumerate(chains, start=1):
        multiset.extend(c)
        owners.extend([idx] * len(c))
    if len(multiset) != size:
        raise AssertionError("closed-form |S| disagrees with construction")
    return ReductionInstance(
        instance, a_star, tuple(sorted(c0)), chains, tuple(multiset), tuple(owners)
    )


# ---------------------------------------------------------------------------
# lemma checks


@dataclass(frozen=True)
class LemmaCheck:
    lemma: str
    passed: bool
    detail: str
    skipped: bool = False


@dataclass(frozen=True)
class LemmaReport:
    checks: tuple[LemmaCheck, ...]
    degenerate: bool

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[LemmaCheck]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "degenerate": self.degenerate,
            "checks": [
                {"lemma": c.lemma, "passed": c.passed, "skipped": c.skipped, "detail": c.detail}
                for c in self.checks
            ],
        }


def _runs_and_gaps(values: Sequence[int]) -> tuple[list[int], list[int]]:
    """Lengths of consecutive runs and of the gaps between them, ascending scan."""
    runs, gaps = [1], []
    for lo, hi in zip(values, values[1:]):
        if hi == lo + 1:
            runs[-1] += 1
        else:
            gaps.append(hi - lo - 1)
            runs.append(1)
    return runs, gaps


def gapfree_lengths(values: Sequence[int], count: int) -> list[int] | None:
    """Lengths of the only way to split ``values`` into ``count`` gap-free chains from 0.

    The number of chains longer than ``v`` must equal the multiplicity of ``v``,
    so the split exists only if multiplicities never increase and start at ``count``.
    """
    freq = Counter(values)
    top = max(freq)
    mult = [freq.get(v, 0) for v in range(top + 2)]
    if mult[0] != count or any(b > a for a, b in zip(mult, mult[1:])):
        return None
    lengths = []
    for v in range(top + 1):
        lengths += [v + 1] * (mult[v] - mult[v + 1])
    return sorted(lengths)


def verify_lemmas(r: ReductionInstance) -> LemmaReport:
    m, t = r.instance.m, r.instance.t
    c0 = sorted(r.c0)
    runs, gaps = _runs_and_gaps(c0)
    checks = []

    if r.degenerate:
        note = "a* = 0: c_0 is the single element |S|+T; gap and ridge structure does not apply"
        checks.append(LemmaCheck("gap_sizes", True, note, skipped=True))
        checks.append(LemmaCheck("ridges", True, note, skipped=True))
    else:
        wrong = [(g, size) for g, size in enumerate(gaps, 1) if size != r.bin_size]
        if len(gaps) != m:
            checks.append(LemmaCheck("gap_sizes", False, f"found {len(gaps)} gaps, expected {m}"))
        elif wrong:
            g, size = wrong[0]
            checks.append(
                LemmaCheck("gap_sizes", False, f"gap {g} has size {size}, expected T+3a* = {r.bin_size}")
            )
        else:
            checks.append(LemmaCheck("gap_sizes", True, f"{m} gaps of size {r.bin_size}"))

        after = runs[1:]
        short = [(g, n) for g, n in enumerate(after, 1) if n != r.a_star]
        if runs[0] != 1 or short or len(after) != len(gaps):
            detail = f"runs {runs}; expected [1] followed by {len(gaps)} runs of a* = {r.a_star}"
            checks.append(LemmaCheck("ridges", False, detail))
        else:
            checks.append(LemmaCheck("ridges", True, f"every gap is followed by a run of {r.a_star}"))

    # an element of c_0 sharing a chain with the rest would open a gap wider
    # than the longest gap a chain can have on |S| rungs
    top_other = max(v for c in r.chains for v in c)
    forced_gap = min(c0) - top_other - 1
    ok3 = forced_gap > r.size - 2
    checks.append(
        LemmaCheck(
            "separation",
            ok3,
            f"min(c_0) - max(rest) - 1 = {forced_gap} {'>' if ok3 else '<='} |S| - 2 = {r.size - 2}",
        )
    )

    rest = [v for c in r.chains for v in c]
    lengths = gapfree_lengths(rest, 3 * m)
    expected = sorted(len(c) for c in r.chains)
    ok4 = lengths == expected
    checks.append(
        LemmaCheck(
            "canonical_chains",
            ok4,
            "gap-free split into 3m chains is unique and canonical"
            if ok4
            else f"gap-free split lengths {lengths} differ from canonical {expected}",
        )
    )
    return LemmaReport(tuple(checks), r.degenerate)


# ---------------------------------------------------------------------------
# forward and backward directions


def _bins(r: ReductionInstance) -> list[range]:
    """Rung ranges (1-based, ascending) left free once c_0 occupies its forced position.

    c_0 is laid descending from value ``top = B + m(T + 4a*)`` at rung 1, so value
    ``v`` sits on rung ``top - v + 1`` and B lands on the last rung.
    """
    m, t, a = r.instance.m, r.instance.t, r.a_star
    top = r.base + m * (t + 4 * a)
    out = []
    for g in range(1, m + 1):
        lo_val = r.base + (g - 1) * (t + 4 * a) + 1
        hi_val = lo_val + r.bin_size - 1
        out.append(range(top - hi_val + 1, top - lo_val + 2))
    return sorted(out, key=lambda rg: rg.start)


def count_outputs(values: Sequence[int], pi: Sequence[int]) -> int:
    return len({v + k for v, k in zip(values, pi)})


def pack_from_partition(
    r: ReductionInstance, triples: Sequence[Sequence[int]]
) -> Reindexing:
    """Ladder assignment achieving 3m+1 outputs from a solution (1-based indices)."""
    inst = r.instance
    flat = sorted(i for tr in triples for i in tr)
    if flat != list(range(1, 3 * inst.m + 1)) or any(len(tr) != 3 for tr in triples):
        raise ReductionError("triples must partition the indices 1..3m into groups of three")
    for tr in triples:
        total = sum(inst.a[i - 1] for i in tr)
        if total != inst.t:
            raise ReductionError(f"triple {tuple(tr)} sums to {total}, not T = {inst.t}")

    m, t, a = inst.m, inst.t, r.a_star
    top = r.base + m * (t + 4 * a)
    rung_of: dict[tuple[int, int], int] = {(0, v): top - v + 1 for v in r.c0}
    for bin_rungs, tr in zip(_bins(r), triples):
        start = bin_rungs.start
        for idx in tr:
            chain = r.chains[idx - 1]
            for j, v in enumerate(reversed(chain)):
                rung_of[(idx, v)] = start + j
            start += len(chain)
    pi = tuple(rung_of[(o, v)] for o, v in zip(r.owners, r.s_multiset))
    return Reindexing(pi)


def extract_partition(r: ReductionInstance, pi: Reindexing | Sequence[int]) -> list[tuple[int, ...]]:
    """Recover triples from an assignment with exactly 3m+1 distinct outputs."""
    pos = list(pi.pi) if isinstance(pi, Reindexing) else [int(p) for p in pi]
    if len(pos) != r.size:
        raise PartitionRecoveryError(f"assignment covers {len(pos)} elements, |S| = {r.size}")
    outputs = [v + k for v, k in zip(r.s_multiset, pos)]
    distinct = len(set(outputs))
    if distinct != r.target:
        raise PartitionRecoveryError(
            f"assignment has {distinct} distinct outputs, not 3m+1 = {r.target}"
        )

    groups: dict[int, list[int]] = {}
    for e, o in enumerate(outputs):
        groups.setdefault(o, []).append(e)
    c0_out = {outputs[e] for e, owner in enumerate(r.owners) if owner == 0}
    if len(c0_out) != 1:
        raise PartitionRecoveryError(f"c_0 is split across outputs {sorted(c0_out)}")
    (c0_key,) = c0_out
    if any(r.owners[e] != 0 for e in groups[c0_key]):
        raise PartitionRecoveryError("an element outside c_0 shares c_0's output")

    bins = _bins(r)
    unused = {i: v for i, v in enumerate(r.instance.a, start=1)}
    by_bin: dict[int, list[int]] = {b: [] for b in range(len(bins))}
    for key in sorted(k for k in groups if k != c0_key):
        members = groups[key]
        vals = sorted(r.s_multiset[e] for e in members)
        if vals != list(range(len(vals))):
            raise PartitionRecoveryError(f"output {key} holds {vals}, not a canonical chain 0..L-1")
        rungs = sorted(pos[e] for e in members)
        where = [b for b, rg in enumerate(bins) if rungs[0] in rg and rungs[-1] in rg]
        if not where:
            raise PartitionRecoveryError(f"chain at rungs {rungs[0]}..{rungs[-1]} straddles bins")
        length = len(vals) - r.a_star
        owners = Counter(r.owners[e] for e in members)
        choices = [i for i, v in unused.items() if v == length]
        if not choices:
            raise PartitionRecoveryError(f"no unused value a_i = {length} for output {key}")
        idx = max(choices, key=lambda i: (owners.get(i, 0), -i))
        del unused[idx]
        by_bin[where[0]].append(idx)

    triples = []
    for b, members in by_bin.items():
        if len(members) != 3:
            raise PartitionRecoveryError(f"bin {b + 1} holds {len(members)} chains, expected 3")
        triples.append(tuple(sorted(members)))
    return triples


# ---------------------------------------------------------------------------
# instance generation


def random_yes_instance(
    rng: random.Random, m: int, *, t_range: tuple[int, int] = (12, 30), nondegenerate: bool = True
) -> tuple[ThreePartitionInstance, list[tuple[int, ...]]]:
    """A shuffled yes-instance and its solution triples (1-based indices)."""
    while True:
        t = rng.randint(*t_range)
        lo, hi = t // 4 + 1, (t - 1) // 2
        if lo > hi:
            continue
        triples = []
        for _ in range(m):
            for _ in range(200):
                x, y = rng.randint(lo, hi), rng.randint(lo, hi)
                z = t - x - y
                if lo <= z <= hi:
                    triples.append((x, y, z))
                    break
            else:
                break
        if len(triples) != m:
            continue
        values = [v for tr in triples for v in tr]
        if nondegenerate and max(values) == min(values):
            continue
        order = list(range(3 * m))
        rng.shuffle(order)
        a = [values[i] for i in order]
        new_index = {old: new + 1 for new, old in enumerate(order)}
        solution = [tuple(sorted(new_index[3 * k + j] for j in range(3))) for k in range(m)]
        return ThreePartitionInstance(tuple(a), m, t), solution


DEMO = ThreePartitionInstance((4, 5, 6, 4, 5, 6), 2, 15)
DEMO_TRIPLES = [(1, 2, 3), (4, 5, 6)]


def parse_instance(text: str) -> ThreePartitionInstance:
    """``"m T"`` on the first line, then 3m integers (any whitespace)."""
    tokens = [tok for line in text.splitlines() if not line.strip().startswith("#") for tok in line.split()]
    try:
        nums = [int(tok) for tok in tokens]
    except ValueError:
        raise ReductionError("instance file must contain only integers") from None
    if len(nums) < 2:
        raise ReductionError("instance file must start with 'm T'")
    m, t, rest = nums[0], nums[1], nums[2:]
    return ThreePartitionInstance(tuple(rest), m, t)


def parse_triples(text: str) -> list[tuple[int, ...]]:
    """One triple of 1-based indices per line."""
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            out.append(tuple(int(tok) for tok in line.replace(",", " ").split()))
        except ValueError:
            raise ReductionError(f"cannot parse triple {line!r}") from None
    return out
