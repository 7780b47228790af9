import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shuttlec.circuits import (
    circuit_from_gates,
    combined_circuit,
    naive_circuit,
    primitive_sets,
    shor_circuit,
    uncompiled_shuttles,
)
from shuttlec.codes import code_from_name, shor9, steane
from shuttlec.compiler import (
    GAP,
    ChainSet,
    CompileError,
    MixedBasisError,
    Reindexing,
    ahr,
    ahr_candidates,
    apply_interweave,
    apply_reindexing,
    assign_slots,
    blanks_compile,
    blanks_schedule,
    compile_best,
    gate_multiset,
    gate_shuffle,
    interweave_plan,
    make_chains,
    order_by_first_element,
    order_by_leading_air,
    order_by_length,
    pack_chains,
    split_chain,
    sssc,
)
from shuttlec.compiler.chains import gap_runs, nongap

G = GAP


def steane_values():
    return primitive_sets(shor_circuit(steane().hx)).values()


def shor_z_values():
    return primitive_sets(shor_circuit(shor9().hz)).values()


# ---------------------------------------------------------------------------
# reindexing and gate shuffling


def test_reindexing_validation():
    assert Reindexing.identity(3).pi == (1, 2, 3)
    assert Reindexing.from_order([2, 0, 1]).pi == (2, 3, 1)
    assert Reindexing((2, 3, 1)).order() == [2, 0, 1]
    with pytest.raises(CompileError):
        Reindexing((1, 1))
    with pytest.raises(CompileError):
        Reindexing((0, 1))
    r = Reindexing((1, 4), length=5)
    assert not r.is_bijection and r.s == 2


def test_three_gate_reindex_single_shuttle():
    c = circuit_from_gates(3, [(1, 2), (2, 3), (3, 1)])
    assert gate_shuffle(c).shuttles == 2
    moved = apply_reindexing(c, [3, 1, 2])
    assert set(moved.deltas()) == {3}
    schedule = gate_shuffle(c, [3, 1, 2])
    assert schedule.shuttles == 1
    schedule.validate(c)


def test_apply_reindexing_keeps_primitive_sets():
    c = naive_circuit(np.array([[1, 1, 1, 0, 0], [0, 0, 1, 1, 0], [0, 0, 1, 0, 0]]))
    moved = apply_reindexing(c, [3, 1, 2])
    assert primitive_sets(moved).sets == primitive_sets(c).sets
    assert [g.data for g in moved.gates] == [g.data for g in c.gates]
    assert apply_reindexing(c, Reindexing.identity(3)) == c
    with pytest.raises(CompileError):
        apply_reindexing(c, [1, 2])


def test_shuffle_groups_sorted_and_valid():
    c = shor_circuit(steane().hx)
    schedule = gate_shuffle(c)
    assert schedule.deltas == sorted(schedule.deltas)
    assert schedule.shuttles == len(set(c.deltas())) == 7
    schedule.validate(c)


def test_single_gate():
    assert gate_shuffle(circuit_from_gates(2, [(1, 1)])).shuttles == 1


def test_mixed_basis_rejected():
    c = combined_circuit(steane(), "shor")
    with pytest.raises(MixedBasisError):
        gate_shuffle(c)
    assert gate_shuffle(c, allow_mixed=True).shuttles == 14


def test_schedule_serialization():
    c = shor_circuit(steane().hx)
    _, schedule = sssc(c)
    d = schedule.to_dict()
    assert d["pass"] == "sssc" and d["shuttles"] == 3 and d["blanks"] == 0
    assert sum(len(g["gates"]) for g in d["groups"]) == 12
    assert "shuttles=3" in schedule.to_text()


def test_validate_catches_tampering():
    c = shor_circuit(steane().hx)
    s = gate_shuffle(c)
    bad = type(s)(s.groups[1:], s.reindexing, s.n)
    with pytest.raises(CompileError):
        bad.validate(c)


# ---------------------------------------------------------------------------
# AHR


def test_h3_worked_example():
    values = [6, 6, 6, 5, 5, 4, 3, 3, 2, 1, 1, 0]
    sets = [frozenset({v}) for v in values]
    order = order_by_first_element(sets)
    assert [values[i] for i in order] == [6, 5, 4, 3, 2, 1, 0, 6, 5, 3, 1, 6]


def test_h1_h2_orders():
    sets = [frozenset({0, 1}), frozenset({3}), frozenset({1, 2, 4})]
    assert order_by_length(sets) == [2, 1, 0]
    assert order_by_leading_air(sets) == [1, 2, 0]


def test_ahr_steane_naive():
    for basis in ("X", "Z"):
        _, schedule = ahr(naive_circuit(steane().matrix(basis), basis))
        assert schedule.shuttles == 7


def test_ahr_single_ancilla_is_identity():
    c = naive_circuit(np.array([[1, 0, 1, 1]]))
    r, schedule = ahr(c)
    assert r.pi == (1,)
    assert schedule.shuttles == 3


def test_ahr_tie_prefers_h1():
    c = circuit_from_gates(2, [(1, 1)])
    _, schedule = ahr(c)
    assert schedule.meta["heuristic"] == "h1"


def test_ahr_candidates_counts_are_exact():
    c = naive_circuit(code_from_name("toric:3").hx)
    ps = primitive_sets(c)
    for name, (r, count) in ahr_candidates(c).items():
        assert len(ps.outputs(r.pi)) == count, name


# ---------------------------------------------------------------------------
# chains


def test_make_chains_steane():
    chains = make_chains(steane_values())
    assert chains.chains == ((6, 5, 4, 3, 2, 1, 0), (4, G, 2, 1, 0), (0,))
    assert chains.gap_entries == 1


def test_make_chains_shor_z():
    chains = make_chains(shor_z_values())
    assert chains.chains == (tuple(range(8, -1, -1)), (7, G, G, 4, G, G, 1))
    assert chains.gap_entries == 4 and chains.gap_runs == 2


def test_make_chains_trivial_and_errors():
    assert make_chains([0]).chains == ((0,),)
    with pytest.raises(ValueError):
        make_chains([])
    with pytest.raises(ValueError):
        make_chains([-1])


def test_chainset_rejects_bad_layout():
    with pytest.raises(ValueError):
        ChainSet(((3, 1),))
    with pytest.raises(ValueError):
        ChainSet(((G, 1),))


@given(st.lists(st.integers(0, 12), min_size=1, max_size=30))
def test_make_chains_properties(values):
    chains = make_chains(values)
    assert chains.values() == sorted(values, reverse=True)
    assert len(chains) == max(values.count(v) for v in values)
    for c in chains.chains:
        real = [v for v in c if v != G]
        assert len(set(real)) == len(real)


def test_split_chain():
    assert split_chain((8, G, 6, 5, 4, G, G, 1, 0)) == ((8,), (6, 5, 4, G, G, 1, 0))
    assert split_chain((6, 5, 4, 3, G, 1, 0)) == ((6, 5, 4, 3), (1, 0))
    assert split_chain((6, G, 4, 3, 2, 1, 0)) == ((6,), (4, 3, 2, 1, 0))
    assert split_chain((3, 2, 1)) == ((3,), (2, 1))
    # equidistant: the default splits at the last gap, "first" at the first one
    assert split_chain((7, G, G, 4, G, G, 1)) == ((7, G, G, 4), (1,))
    assert split_chain((7, G, G, 4, G, G, 1), tie="first") == ((7,), (4, G, G, 1))


def test_pack_steane():
    packing = pack_chains(make_chains(steane_values()), 12)
    assert packing.shuttles == 3
    assert packing.outputs == {7, 12, 9}
    assert sorted(packing.ladder) == sorted(steane_values())


def test_pack_shor_z_splits_twice():
    packing = pack_chains(make_chains(shor_z_values()))
    assert packing.shuttles == 4
    pieces = sorted(c for _, c in packing.placements if len(c) == 1)
    assert pieces == [(1,), (4,), (7,)]


def test_pack_total_mismatch():
    with pytest.raises(CompileError):
        pack_chains(make_chains([0, 1]), 3)


def test_pack_gap_free_chain():
    assert pack_chains(make_chains(list(range(6)))).shuttles == 1


def test_assign_slots():
    r = assign_slots([1, 0, 1], [1, 0, 1])
    assert r.pi == (1, 2, 3)
    r = assign_slots([2, 0], [2, G, 0], 3)
    assert r.pi == (1, 3) and r.length == 3
    with pytest.raises(CompileError):
        assign_slots([5], [4])


def test_sssc_schedule_matches_packing():
    c = shor_circuit(steane().hx)
    r, schedule = sssc(c)
    schedule.validate(c)
    assert sorted(schedule.deltas) == [7, 9, 12]
    assert schedule.meta["num_chains"] == 3


def test_sssc_needs_singletons():
    with pytest.raises(CompileError):
        sssc(naive_circuit(steane().hx))


def test_blanks_steane_and_shor():
    steane_layout = blanks_compile(make_chains(steane_values()))
    assert (steane_layout.shuttles, steane_layout.blanks) == (3, 1)
    shor_layout = blanks_compile(make_chains(shor_z_values()))
    assert (shor_layout.shuttles, shor_layout.blanks) == (2, 4)
    gross_values = primitive_sets(shor_circuit(code_from_name("gross").hx)).values()
    gross_layout = blanks_compile(make_chains(gross_values))
    assert (gross_layout.shuttles, gross_layout.blanks) == (3, 0)


def test_blanks_schedule_uses_extended_row():
    c = shor_circuit(steane().hx)
    r, schedule = blanks_schedule(c)
    assert r.length == 13 and not r.is_bijection
    assert schedule.shuttles == 3 and schedule.blanks == 1
    schedule.validate(c)


def _matrix_strategy():
    return st.lists(
        st.lists(st.integers(0, 1), min_size=7, max_size=7), min_size=1, max_size=5
    ).filter(lambda rows: all(any(r) for r in rows))


@settings(max_examples=150)
@given(_matrix_strategy())
def test_passes_preserve_gates_and_bounds(rows):
    m = np.array(rows)
    c = shor_circuit(m)
    values = primitive_sets(c).values()
    chains = make_chains(values)
    shuffled = gate_shuffle(c)
    assert shuffled.shuttles <= uncompiled_shuttles(c)
    for schedule in (shuffled, ahr(c)[1], sssc(c)[1], blanks_schedule(c)[1]):
        schedule.validate(c)
        assert gate_multiset(schedule.gates()) == gate_multiset(c.gates)
        assert schedule.shuttles >= len(chains)
    assert blanks_schedule(c)[1].shuttles == len(chains) == max(values.count(v) for v in values)


@settings(max_examples=100)
@given(
    st.integers(1, 30),
    st.integers(1, 5),
    st.integers(0, 6),
    st.randoms(use_true_random=False),
)
def test_column_regular_optimal(n, w, extra_rows, rnd):
    rows = w + extra_rows
    m = np.zeros((rows, n), dtype=np.uint8)
    for col in range(n):
        m[rnd.sample(range(rows), w), col] = 1
    m = m[m.any(axis=1)]
    assert sssc(shor_circuit(m))[1].shuttles == w


# ---------------------------------------------------------------------------
# compile_best


def test_compile_best_steane():
    result = compile_best(shor_circuit(steane().hx))
    assert (result.ahr, result.sssc, result.num_chains, result.blanks) == (3, 3, 3, 1)
    assert result.gate_shuffled == 7
    assert result.best_shuttles == 3 and result.best_pass == "ahr"


def test_compile_best_naive_has_no_sssc():
    result = compile_best(naive_circuit(steane().hx))
    assert result.sssc is None and result.blanks is None
    assert "sssc" not in result.schedules


def test_compile_best_never_worse_than_shuffle():
    rng = random.Random(3)
    for _ in range(50):
        m = (np.array([[rng.random() < 0.4 for _ in range(6)] for _ in range(3)])).astype(int)
        m = m[m.any(axis=1)]
        if not m.size:
            continue
        for c in (shor_circuit(m), naive_circuit(m)):
            result = compile_best(c)
            assert result.best_shuttles <= result.gate_shuffled
            assert result.best_shuttles <= result.ahr


# ---------------------------------------------------------------------------
# interweaving


def test_staging_plan_four_groups():
    staging = [3, 5, 1, 4, 6, 2, 8, 7]
    plan = interweave_plan(staging)
    assert plan == [(1, 2), (3, 4), (5, 6, 7), (8,)]
    assert apply_interweave(staging, plan) == list(range(1, 9))


def test_interweave_extremes():
    assert interweave_plan([1, 2, 3, 4]) == [(1, 2, 3, 4)]
    assert interweave_plan([5, 4, 3, 2, 1]) == [(1,), (2,), (3,), (4,), (5,)]
    assert interweave_plan(Reindexing((2, 1))) == [(1,), (2,)]
    with pytest.raises(CompileError):
        interweave_plan([1, 3])


def test_apply_interweave_rejects_bad_plan():
    with pytest.raises(CompileError):
        apply_interweave([2, 1], [(1, 2)])
    with pytest.raises(CompileError):
        apply_interweave([1, 2], [(1,)])


@given(st.permutations(list(range(1, 10))))
def test_interweave_roundtrip(perm):
    plan = interweave_plan(perm)
    assert apply_interweave(perm, plan) == sorted(perm)
    assert sorted(x for g in plan for x in g) == sorted(perm)


def test_chain_helpers():
    assert nongap((3, G, 1)) == 2
    assert gap_runs((5, G, G, 2, G, 0)) == 2


def test_sssc_can_lose_to_identity_order():
    # greedy splitting is not monotone against the identity order: {5,2,0} on three
    # rungs splits into three pieces, while positions 1,2,3 already give {3,7}
    c = shor_circuit(np.array([[0, 0, 0, 1, 0, 0], [1, 0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 1]]))
    assert primitive_sets(c).values() == [2, 5, 0]
    assert gate_shuffle(c).shuttles == 2
    assert sssc(c)[1].shuttles == 3
    assert sssc(c, tie="first")[1].shuttles == 2
    assert compile_best(c).best_shuttles == 2
