from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chargesched.generators import gen_releases
from chargesched.model import Agent, Fixed, InputError, Instance, Triple
from chargesched.online import (
    OnlineInstance,
    PolicyViolation,
    ReplanPolicy,
    UndefinedRatio,
    competitive_ratio,
    greedy_policy,
    ratio_batch,
    simulate,
)
from chargesched.oracle import oracle_solve
from helpers import small_instances


def one(v, d, w, speed=None):
    return Agent([Triple(v, d, w)], speed) if speed else Agent([Triple(v, d, w)])


def trap():
    # a cheap early agent grabs period 1 before the valuable one shows up
    inst = Instance(2, (1, 1), [one(1, 2, 1), one(10, 2, 2)])
    return OnlineInstance(inst, (1, 2))


class TestSimulate:
    def test_empty(self):
        oi = OnlineInstance(Instance(3, (1, 1, 1), []), ())
        assert simulate(oi, greedy_policy).welfare == 0

    def test_full_information_replay(self):
        inst = Instance(3, (1, 2, 1), [one(5, 2, 2), one(4, 3, 2), Agent([Triple(2, 1, 1), Triple(6, 3, 3)])])
        oi = OnlineInstance(inst, (1, 1, 1))
        assert simulate(oi, ReplanPolicy()).welfare == oracle_solve(inst).welfare == 9

    def test_greedy_falls_into_trap(self):
        oi = trap()
        assert oracle_solve(oi.base).welfare == 10
        assert simulate(oi, greedy_policy).welfare == 1
        assert competitive_ratio(oi, greedy_policy) == Fraction(1, 10)

    def test_sentinel_never_sees_unreleased(self):
        inst = Instance(4, (1, 1, 1, 1), [one(1, 4, 1), one(1, 4, 1), one(1, 4, 1)])
        oi = OnlineInstance(inst, (3, 1, 2))
        seen = []

        def sentinel(view):
            seen.append((view.t, sorted(view.agents)))
            return {}

        simulate(oi, sentinel)
        assert seen == [(1, [1]), (2, [1, 2]), (3, [0, 1, 2]), (4, [0, 1, 2])]

    @pytest.mark.parametrize("decision, match", [
        ({0: 2}, "supply"),
        ({1: 1}, "unreleased"),
        ({0: -1}, "nonnegative"),
    ])
    def test_violations(self, decision, match):
        inst = Instance(2, (1, 1), [one(1, 2, 1), one(1, 2, 1)])
        oi = OnlineInstance(inst, (1, 2))
        with pytest.raises(PolicyViolation, match=match):
            simulate(oi, lambda view: decision if view.t == 1 else {})

    def test_speed_violation(self):
        oi = OnlineInstance(Instance(1, (5,), [one(1, 1, 3, Fixed(1))]), (1,))
        with pytest.raises(PolicyViolation, match="speed"):
            simulate(oi, lambda view: {0: 2})

    def test_irrevocable_history(self):
        inst = Instance(2, (2, 0), [one(3, 2, 2)])
        oi = OnlineInstance(inst, (1,))
        charged = []

        def policy(view):
            charged.append(view.charged[0])
            return {0: 2} if view.t == 1 else {}

        assert simulate(oi, policy).welfare == 3
        assert charged == [0, 2]

    def test_release_range(self):
        with pytest.raises(InputError):
            OnlineInstance(Instance(2, (1, 1), [one(1, 1, 1)]), (3,))
        assert OnlineInstance(Instance(2, (1, 1), [one(1, 1, 1)]), (2,)).late == [0]


class TestGreedy:
    def _view(self, inst, t=1):
        from chargesched.online import OnlineView

        return OnlineView(t, inst.periods, inst.supply, dict(enumerate(inst.agents)), {i: 0 for i in range(inst.n)})

    def test_ample_supply(self):
        inst = Instance(1, (9,), [one(5, 1, 4)])
        assert greedy_policy(self._view(inst)) == {0: 4}

    def test_identical_agents(self):
        inst = Instance(1, (1,), [one(5, 1, 1), one(5, 1, 1)])
        assert greedy_policy(self._view(inst)) == {0: 1}

    def test_density_tie_prefers_earlier_deadline(self):
        inst = Instance(2, (1, 0), [one(2, 2, 1), one(2, 1, 1)])
        assert greedy_policy(self._view(inst)) == {1: 1}

    def test_skips_unreachable(self):
        inst = Instance(2, (1, 1), [one(100, 1, 2), one(1, 2, 1)])
        assert greedy_policy(self._view(inst)) == {1: 1}


class TestRatio:
    def test_replay_is_one(self):
        inst = Instance(2, (2, 1), [one(3, 1, 2), one(2, 2, 2), one(1, 2, 1)])
        assert competitive_ratio(OnlineInstance(inst, (1, 1, 1)), ReplanPolicy()) == 1

    def test_undefined(self):
        with pytest.raises(UndefinedRatio):
            competitive_ratio(OnlineInstance(Instance(1, (0,), [one(1, 1, 1)]), (1,)), greedy_policy)

    @settings(max_examples=80, deadline=None)
    @given(small_instances(n=4, periods=4), st.integers(0, 999))
    def test_bounded_by_one(self, inst, seed):
        oi = OnlineInstance(inst, gen_releases(inst, seed))
        for policy in (greedy_policy, ReplanPolicy()):
            try:
                r = competitive_ratio(oi, policy)
            except UndefinedRatio:
                return
            assert 0 <= r <= 1

    @settings(max_examples=60, deadline=None)
    @given(small_instances(n=4, periods=4))
    def test_full_information_replan_is_optimal(self, inst):
        oi = OnlineInstance(inst, (1,) * inst.n)
        assert simulate(oi, ReplanPolicy()).welfare == oracle_solve(inst).welfare

    def test_batch_summary(self):
        res = ratio_batch("greedy", range(10))
        assert len(res["rows"]) + res["skipped"] == 10
        assert res["min"] <= res["median"] <= 1
        assert res == ratio_batch("greedy", range(10))
