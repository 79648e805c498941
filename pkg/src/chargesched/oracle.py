"""Brute-force ground truth: enumerate satisfaction sets, keep the best feasible one.

A satisfaction set is a frozenset of ``(agent, triple_index)`` pairs that a
schedule commits to meet.  For unbounded speeds, feasibility is the prefix
(Hall) condition on cumulative supply; in general it is decided with a
time-expanded circulation with lower bounds.
"""

from __future__ import annotations

from typing import FrozenSet, Iterable, Tuple

from .flow import FlowNetwork
from .model import (
    Allocation,
    Instance,
    InvariantError,
    GuardError,
    Solution,
    Unbounded,
    VariantError,
    check_feasible,
    evaluate_welfare,
)

SatisfactionSet = FrozenSet[Tuple[int, int]]

DEFAULT_MAX_BITS = 20


def requirements(inst: Instance, s: Iterable[tuple[int, int]]) -> dict[int, list[tuple[int, int]]]:
    """Per agent, the chosen ``(deadline, cumulative demand)`` steps in deadline order."""
    out: dict[int, list[tuple[int, int]]] = {}
    for i, k in sorted(set(s)):
        tr = inst.agents[i].triples[k]
        out.setdefault(i, []).append((tr.deadline, tr.demand))
    return out


def feasible_hall(inst: Instance, s: Iterable[tuple[int, int]]) -> bool:
    """Prefix-supply test; exact when every agent in ``s`` has unbounded speed."""
    req = requirements(inst, s)
    for i in req:
        if not isinstance(inst.agents[i].speed, Unbounded):
            raise VariantError(f"agent {i} is speed-capped; use feasible_flow")
    need = [0] * (inst.periods + 1)
    for steps in req.values():
        prev = 0
        for d, w in steps:
            if w > prev:
                need[d] += w - prev
                prev = w
    demand = supply = 0
    for t in range(1, inst.periods + 1):
        demand += need[t]
        supply += inst.supply[t - 1]
        if demand > supply:
            return False
    return True


def feasible_flow(inst: Instance, s: Iterable[tuple[int, int]]) -> bool:
    return _flow_witness(inst, s) is not None


def edf_witness(inst: Instance, s: Iterable[tuple[int, int]]) -> Allocation | None:
    """Earliest-deadline-first schedule for an unbounded-speed satisfaction set.

    Each increment of cumulative demand becomes a job due at its deadline;
    jobs run in (deadline, agent) order and draw on the earliest unused supply.
    Returns None when some job cannot be completed.
    """
    jobs = []
    for i, steps in requirements(inst, s).items():
        prev = 0
        for d, w in steps:
            if w > prev:
                jobs.append((d, i, w - prev))
                prev = w
    jobs.sort()
    left = list(inst.supply)
    rows = [[0] * inst.periods for _ in range(inst.n)]
    start = 0
    for d, i, amount in jobs:
        while start < inst.periods and left[start] == 0:
            start += 1
        for t in range(start, d):
            if amount == 0:
                break
            take = min(amount, left[t])
            left[t] -= take
            rows[i][t] += take
            amount -= take
        if amount:
            return None
    return Allocation(rows)


def _flow_witness(inst: Instance, s: Iterable[tuple[int, int]]) -> Allocation | None:
    net = FlowNetwork()
    for t in range(1, inst.periods + 1):
        net.add_arc("src", ("p", t), inst.supply[t - 1])
    charge_arcs = []
    for i, steps in requirements(inst, s).items():
        agent = inst.agents[i]
        top = steps[-1][1]
        lo_t = 1
        for j, (d, w) in enumerate(steps):
            window = ("w", i, j)
            for t in range(lo_t, d + 1):
                cap = agent.cap(t)
                cap = inst.supply[t - 1] if cap is None else min(cap, inst.supply[t - 1])
                if cap > 0:
                    charge_arcs.append((i, t, net.add_arc(("p", t), window, cap)))
            nxt = ("w", i, j + 1) if j + 1 < len(steps) else "sink"
            # flow leaving window j is the cumulative charge through deadline d
            net.add_arc(window, nxt, top, lower=w)
            lo_t = d + 1
    net.node("sink")
    if not net.feasible("src", "sink"):
        return None
    rows = [[0] * inst.periods for _ in range(inst.n)]
    for i, t, arc in charge_arcs:
        rows[i][t - 1] += net.flow(arc)
    return Allocation(rows)


def witness(inst: Instance, s: Iterable[tuple[int, int]]) -> Allocation | None:
    s = frozenset(s)
    if all(isinstance(inst.agents[i].speed, Unbounded) for i, _ in s):
        return edf_witness(inst, s)
    return _flow_witness(inst, s)


def is_feasible(inst: Instance, s: Iterable[tuple[int, int]]) -> bool:
    s = frozenset(s)
    if all(isinstance(inst.agents[i].speed, Unbounded) for i, _ in s):
        return feasible_hall(inst, s)
    return feasible_flow(inst, s)


def oracle_solve(inst: Instance, max_bits: int = DEFAULT_MAX_BITS) -> Solution:
    """Exhaustive optimum over all satisfaction sets.

    Sets are visited in order of decreasing chosen value (ties: smaller bitmask
    first), so the first feasible one is a maximum.  Refuses instances with
    more than ``max_bits`` triples in total.
    """
    bits = [(i, k) for i, a in enumerate(inst.agents) for k in range(len(a.triples))]
    if len(bits) > max_bits:
        raise GuardError(
            f"oracle refuses {len(bits)} triples (bound {max_bits})",
            guard="oracle-bits", bound=max_bits, size=len(bits),
        )
    values = [inst.agents[i].triples[k].value for i, k in bits]
    subset_value = [0] * (1 << len(bits))
    for mask in range(1, 1 << len(bits)):
        low = (mask & -mask).bit_length() - 1
        subset_value[mask] = subset_value[mask & (mask - 1)] + values[low]
    order = sorted(range(1 << len(bits)), key=lambda m: (-subset_value[m], m))
    checks = 0
    for mask in order:
        chosen = frozenset(b for j, b in enumerate(bits) if mask >> j & 1)
        checks += 1
        if not is_feasible(inst, chosen):
            continue
        alloc = witness(inst, chosen)
        if alloc is None:
            raise InvariantError(f"feasible set {sorted(chosen)} has no witness")
        sol = evaluate_welfare(inst, alloc)
        ok, why = check_feasible(inst, alloc)
        if not ok or sol.welfare != subset_value[mask]:
            raise InvariantError(f"oracle witness inconsistent: {why or sol.welfare}")
        sol.stats.update(method="oracle", subsets=1 << len(bits), checks=checks, chosen=sorted(chosen))
        return sol
    raise InvariantError("empty satisfaction set must be feasible")
