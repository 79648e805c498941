import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chargesched.generators import X3CInput, gen_x3c_gaps, gen_x3c_multi
from chargesched.model import (
    Agent,
    Fixed,
    Gaps,
    GuardError,
    Instance,
    Triple,
    VariantError,
    check_feasible,
    evaluate_welfare,
)
from chargesched.oracle import feasible_flow, feasible_hall, is_feasible, oracle_solve, witness
from helpers import brute_allocations_optimum, satisfaction_sets, set_value, small_instances


def one(v, d, w, speed=None):
    return Agent([Triple(v, d, w)], speed) if speed else Agent([Triple(v, d, w)])


class TestHall:
    def test_exact_fit(self):
        inst = Instance(3, (1, 1, 1), [one(1, 3, 3)])
        assert feasible_hall(inst, {(0, 0)})

    def test_prefix_overflow(self):
        inst = Instance(3, (1, 1, 1), [one(1, 2, 2), one(1, 2, 2)])
        assert not feasible_hall(inst, {(0, 0), (1, 0)})

    def test_knapsack_sets(self, knapsack_gadget):
        assert not feasible_hall(knapsack_gadget, {(0, 0), (1, 0)})       # 4 + 3 > 5
        assert feasible_hall(knapsack_gadget, {(1, 0), (2, 0)})           # 3 + 2 <= 5
        assert not feasible_flow(knapsack_gadget, {(0, 0), (1, 0)})
        assert feasible_flow(knapsack_gadget, {(1, 0), (2, 0)})

    def test_rejects_capped_agent(self):
        inst = Instance(1, (5,), [one(1, 1, 1, Fixed(1))])
        with pytest.raises(VariantError):
            feasible_hall(inst, {(0, 0)})


class TestFlow:
    def test_x3c_gap_agent(self):
        inst = gen_x3c_gaps(X3CInput(1, [(1, 2, 3)]))
        assert feasible_flow(inst, {(0, 0)})

    def test_fixed_speed_blocks(self):
        inst = Instance(2, (5, 5), [one(1, 2, 3, Fixed(1))])
        assert not feasible_flow(inst, {(0, 0)})

    def test_gap_blocks(self):
        inst = Instance(2, (5, 5), [one(1, 1, 1, Gaps([False, True]))])
        assert not feasible_flow(inst, {(0, 0)})

    def test_intermediate_threshold_without_first(self):
        # choosing only the later triple must not force the earlier one
        agent = Agent([Triple(1, 1, 2), Triple(5, 2, 2)])
        inst = Instance(2, (0, 2), [agent])
        assert feasible_flow(inst, {(0, 1)})
        assert not feasible_flow(inst, {(0, 0)})

    @settings(max_examples=200, deadline=None)
    @given(small_instances(n=5, periods=4, supply=3, speeds=("unbounded",)), st.data())
    def test_hall_equals_flow(self, inst, data):
        sets = list(satisfaction_sets(inst))
        s = data.draw(st.sampled_from(sets))
        assert feasible_hall(inst, s) == feasible_flow(inst, s)

    @settings(max_examples=100, deadline=None)
    @given(small_instances(n=3, periods=3), st.data())
    def test_monotone_subsets(self, inst, data):
        sets = list(satisfaction_sets(inst))
        big = data.draw(st.sampled_from(sets))
        if not is_feasible(inst, big):
            return
        for s in sets:
            if s <= big:
                assert is_feasible(inst, s)

    @settings(max_examples=100, deadline=None)
    @given(small_instances(n=3, periods=3), st.data())
    def test_witness_meets_its_set(self, inst, data):
        s = data.draw(st.sampled_from(list(satisfaction_sets(inst))))
        alloc = witness(inst, s)
        if alloc is None:
            assert not is_feasible(inst, s)
            return
        assert check_feasible(inst, alloc)[0]
        sol = evaluate_welfare(inst, alloc)
        assert all(sol.satisfied[i][k] for i, k in s)
        # nothing after an agent's last chosen deadline
        for i, row in enumerate(alloc.amounts):
            last = max((inst.agents[i].triples[k].deadline for j, k in s if j == i), default=0)
            assert not any(row[last:])


class TestOracleSolve:
    def test_empty(self):
        assert oracle_solve(Instance(2, (1, 1), [])).welfare == 0

    def test_knapsack(self, knapsack_gadget):
        # subsets of {(6,4),(5,3),(4,2)} within weight 5: best is {5,4} -> 9
        assert oracle_solve(knapsack_gadget).welfare == 9

    def test_x3c_multi_q1(self):
        assert oracle_solve(gen_x3c_multi(X3CInput(1, [(1, 2, 3)]))).welfare == 9

    def test_guard(self):
        inst = Instance(1, (1,), [one(1, 1, 1)] * 5)
        with pytest.raises(GuardError):
            oracle_solve(inst, max_bits=4)
        assert oracle_solve(inst, max_bits=5).welfare == 1

    @settings(max_examples=150, deadline=None)
    @given(small_instances(n=4, periods=3))
    def test_matches_reenumeration(self, inst):
        sol = oracle_solve(inst)
        best = max(set_value(inst, s) for s in satisfaction_sets(inst) if feasible_flow(inst, s))
        assert sol.welfare == best
        assert check_feasible(inst, sol.allocation)[0]
        assert evaluate_welfare(inst, sol.allocation).welfare == sol.welfare

    @settings(max_examples=80, deadline=None)
    @given(small_instances(n=3, periods=3, supply=2, demand=3))
    def test_matches_allocation_enumeration(self, inst):
        assert oracle_solve(inst).welfare == brute_allocations_optimum(inst)
