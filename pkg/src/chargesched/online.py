"""On-line simulation: agents appear at release times, charge is committed
period by period and can never be taken back.

A policy is any callable ``policy(view) -> {agent_index: amount}`` receiving an
:class:`OnlineView` that contains only agents released so far.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from .generators import gen_random, gen_releases
from .model import (
    Agent,
    Allocation,
    ChargeSchedError,
    Gaps,
    InputError,
    Instance,
    Solution,
    Triple,
    evaluate_welfare,
)
from .runner import Guards, solve


class PolicyViolation(ChargeSchedError):
    """A policy asked for an infeasible or out-of-view allocation."""


class UndefinedRatio(ChargeSchedError):
    """The offline optimum is zero, so no ratio exists."""


@dataclass(frozen=True)
class OnlineInstance:
    base: Instance
    releases: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "releases", tuple(self.releases))
        if len(self.releases) != self.base.n:
            raise InputError(f"expected {self.base.n} release times, got {len(self.releases)}", "releases")
        for i, r in enumerate(self.releases):
            if not isinstance(r, int) or not 1 <= r <= self.base.periods:
                raise InputError(f"release {r!r} outside 1..{self.base.periods}", f"releases[{i}]")

    @property
    def late(self) -> list[int]:
        """Agents released after their first deadline (allowed, but some triples are lost)."""
        return [i for i, (a, r) in enumerate(zip(self.base.agents, self.releases)) if r > a.triples[0].deadline]


@dataclass(frozen=True)
class OnlineView:
    t: int
    periods: int
    supply: tuple[int, ...]
    agents: Mapping[int, Agent]         # released agents only
    charged: Mapping[int, int]          # cumulative charge before period t


Policy = Callable[[OnlineView], Mapping[int, int]]


def simulate(oi: OnlineInstance, policy: Policy) -> Solution:
    inst = oi.base
    rows = [[0] * inst.periods for _ in range(inst.n)]
    for t in range(1, inst.periods + 1):
        released = {i: inst.agents[i] for i in range(inst.n) if oi.releases[i] <= t}
        charged = {i: sum(rows[i][: t - 1]) for i in released}
        view = OnlineView(t, inst.periods, inst.supply, dict(released), charged)
        decision = policy(view) or {}
        used = 0
        for i, amount in decision.items():
            if i not in released:
                raise PolicyViolation(f"period {t}: decision for unreleased agent {i}")
            if isinstance(amount, bool) or not isinstance(amount, int) or amount < 0:
                raise PolicyViolation(f"period {t}: agent {i} amount {amount!r} is not a nonnegative integer")
            cap = inst.agents[i].cap(t)
            if cap is not None and amount > cap:
                raise PolicyViolation(f"period {t}: agent {i} amount {amount} exceeds speed cap {cap}")
            used += amount
            rows[i][t - 1] = amount
        if used > inst.supply[t - 1]:
            raise PolicyViolation(f"period {t}: policy allocated {used} of supply {inst.supply[t - 1]}")
    return evaluate_welfare(inst, Allocation(rows))


def greedy_policy(view: OnlineView) -> dict[int, int]:
    """Serve unmet, still reachable triples by value per unit of missing charge.

    Ties go to the earlier deadline, then the lower agent index.  No
    competitive guarantee is claimed.
    """
    t = view.t
    queue = []
    for i, agent in view.agents.items():
        have = view.charged[i]
        for v, d, w in agent.triples:
            need = w - have
            if d < t or need <= 0 or v <= 0:
                continue
            reach = 0
            for u in range(t, d + 1):
                c = agent.cap(u)
                reach += view.supply[u - 1] if c is None else min(c, view.supply[u - 1])
            if reach < need:
                continue
            queue.append((-Fraction(v) / need, d, i, w))
    queue.sort()
    left = view.supply[t - 1]
    given: dict[int, int] = {}
    for _, _, i, w in queue:
        if left == 0:
            break
        cap = view.agents[i].cap(t)
        room = left if cap is None else min(left, cap - given.get(i, 0))
        need = w - view.charged[i] - given.get(i, 0)
        take = min(need, room)
        if take > 0:
            given[i] = given.get(i, 0) + take
            left -= take
    return given


class ReplanPolicy:
    """Re-solve the remaining problem exactly whenever new agents appear, and
    follow the current plan otherwise.

    With every agent released at period 1 this reproduces an offline optimum.
    """

    def __init__(self, method: str = "auto", guards: Guards = Guards()):
        self.method = method
        self.guards = guards
        self._known = None
        self._plan = {}
        self._start = 1

    def __call__(self, view: OnlineView) -> dict[int, int]:
        if self._known != set(view.agents):
            self._replan(view)
        k = view.t - self._start
        return {i: row[k] for i, row in self._plan.items() if row[k]}

    def _replan(self, view: OnlineView) -> None:
        t = view.t
        span = view.periods - t + 1
        ids, agents = [], []
        for i, agent in sorted(view.agents.items()):
            have = view.charged[i]
            triples = [Triple(v, d - t + 1, max(0, w - have)) for v, d, w in agent.triples if d >= t]
            if not triples:
                continue
            if isinstance(agent.speed, Gaps):
                speed = Gaps(agent.speed.available[t - 1:])
            else:
                speed = agent.speed
            ids.append(i)
            agents.append(Agent(triples, speed))
        rest = Instance(span, view.supply[t - 1:], agents)
        sol = solve(rest, self.method, self.guards)
        self._plan = {i: sol.allocation[j] for j, i in enumerate(ids)}
        self._known = set(view.agents)
        self._start = t


def offline_optimum(inst: Instance, guards: Guards = Guards()):
    return solve(inst, "auto", guards).welfare


def competitive_ratio(oi: OnlineInstance, policy: Policy, guards: Guards = Guards()) -> Fraction:
    best = offline_optimum(oi.base, guards)
    if best == 0:
        raise UndefinedRatio("offline optimum is 0; competitive ratio undefined")
    got = simulate(oi, policy).welfare
    return Fraction(got) / Fraction(best)


POLICIES = {"greedy": lambda: greedy_policy, "replan": ReplanPolicy}


def ratio_batch(
    policy: str,
    seeds,
    n: int = 5,
    periods: int = 4,
    max_supply: int = 3,
    max_demand: int = 4,
    max_value: int = 20,
    speed_kind: str = "unbounded",
    max_triples: int = 1,
) -> dict:
    """Empirical ratios over random instances; the minimum is the headline figure.

    Seeds whose offline optimum is zero are skipped and counted.
    """
    rows = []
    skipped = 0
    for seed in seeds:
        inst = gen_random(seed, n, periods, max_supply, max_demand, max_value, speed_kind, max_triples)
        oi = OnlineInstance(inst, gen_releases(inst, seed))
        try:
            ratio = competitive_ratio(oi, POLICIES[policy]())
        except UndefinedRatio:
            skipped += 1
            continue
        rows.append({"seed": seed, "ratio": ratio})
    ratios = [r["ratio"] for r in rows]
    return {
        "policy": policy,
        "rows": rows,
        "skipped": skipped,
        "min": min(ratios) if ratios else None,
        "mean": statistics.mean(ratios) if ratios else None,
        "median": statistics.median(ratios) if ratios else None,
    }
