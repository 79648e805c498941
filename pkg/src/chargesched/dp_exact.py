"""Exact DP over residual supply vectors, valid for every variant.

``OPT(r, i)`` is the best welfare obtainable from agents ``1..i`` when ``r``
is the supply still uncommitted in each period.  Agent ``i`` is either
rejected, or given some vector ``a <= r`` and the rest is solved on
``r - a``.  Runtime is exponential in the number of periods.

Only *minimal* candidate vectors are tried: a vector is minimal when removing
any single unit of charge would unsatisfy one of the triples it satisfies.
Every other vector is dominated by a minimal one beneath it (same value,
componentwise less supply), and OPT is monotone in ``r``.
"""

from __future__ import annotations

import math
import sys
from typing import Iterator, Sequence

from .model import Allocation, GuardError, Instance, InvariantError, Solution, check_feasible, evaluate_welfare

DEFAULT_GUARD_STATES = 10 ** 7


def state_space(inst: Instance) -> int:
    return math.prod(m + 1 for m in inst.supply)


def minimal_vectors(caps: Sequence[int], triples) -> list[tuple[int, ...]]:
    """All minimal allocation vectors under per-period ``caps``, sorted ascending.

    ``triples`` are ``(value, deadline, demand)`` with increasing deadlines and
    nondecreasing demands.  The zero vector is always included.
    """
    periods = len(caps)
    deadlines = [tr[1] for tr in triples]
    demands = [tr[2] for tr in triples]
    horizon = deadlines[-1]
    top = demands[-1]
    found = []
    vec = [0] * periods

    def satisfied(cum: list[int]) -> list[bool]:
        return [cum[d] >= w for d, w in zip(deadlines, demands)]

    def is_minimal() -> bool:
        cum = [0]
        for a in vec:
            cum.append(cum[-1] + a)
        sat = satisfied(cum)
        # removing a unit at period t lowers cum[d] for every d >= t
        for t in range(1, horizon + 1):
            if vec[t - 1] == 0:
                continue
            if not any(ok and d >= t and cum[d] == w for ok, d, w in zip(sat, deadlines, demands)):
                return False
        return True

    def rec(t: int, total: int):
        if t > horizon:
            if is_minimal():
                found.append(tuple(vec))
            return
        for a in range(0, min(caps[t - 1], top - total) + 1):
            vec[t - 1] = a
            rec(t + 1, total + a)
        vec[t - 1] = 0

    rec(1, 0)
    found.sort()
    return found


def agent_candidates(inst: Instance, agent: int) -> list[tuple[int, ...]]:
    caps = [inst.cap(agent, t) for t in range(1, inst.periods + 1)]
    return minimal_vectors(caps, inst.agents[agent].triples)


def enumerate_agent_allocations(inst: Instance, agent: int, residual: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Non-dominated integer vectors for ``agent`` that fit inside ``residual``."""
    for vec in agent_candidates(inst, agent):
        if all(a <= r for a, r in zip(vec, residual)):
            yield vec


def dp_exact_solve(inst: Instance, guard_states: int = DEFAULT_GUARD_STATES) -> Solution:
    size = state_space(inst)
    if size > guard_states:
        raise GuardError(
            f"dp-exact refuses: state space prod(m_t+1) = {size} exceeds guard {guard_states}",
            guard="guard-states", bound=guard_states, size=size,
        )
    n = inst.n
    # vectors worth nothing can never beat rejecting the agent
    cands = []
    for i, agent in enumerate(inst.agents):
        scored = ((v, agent.value_of(v)) for v in agent_candidates(inst, i))
        cands.append([(v, val) for v, val in scored if val > 0])
    radix = [m + 1 for m in inst.supply]

    def encode(r: Sequence[int]) -> int:
        code = 0
        for x, base in zip(r, radix):
            code = code * base + x
        return code

    memo: dict[int, object] = {}

    def opt(r: tuple[int, ...], i: int):
        if i == 0:
            return 0
        key = (i - 1) * size + encode(r)
        hit = memo.get(key)
        if hit is not None:
            return hit
        best = opt(r, i - 1)
        for vec, val in cands[i - 1]:
            if all(a <= x for a, x in zip(vec, r)):
                rest = tuple(x - a for x, a in zip(r, vec))
                got = opt(rest, i - 1) + val
                if got > best:
                    best = got
        memo[key] = best
        return best

    limit = sys.getrecursionlimit()
    if limit < n + 100:
        sys.setrecursionlimit(n + 100)
    try:
        best = opt(tuple(inst.supply), n)
    finally:
        sys.setrecursionlimit(limit)

    if len(memo) > n * size:
        raise InvariantError(f"memo holds {len(memo)} states, bound {n * size}")

    # replay: reject on ties, otherwise the lexicographically smallest vector
    rows = [None] * n
    r = tuple(inst.supply)
    target = best
    for i in range(n, 0, -1):
        if opt(r, i - 1) == target:
            rows[i - 1] = (0,) * inst.periods
            continue
        for vec, val in cands[i - 1]:
            if all(a <= x for a, x in zip(vec, r)):
                rest = tuple(x - a for x, a in zip(r, vec))
                if opt(rest, i - 1) + val == target:
                    rows[i - 1] = vec
                    r = rest
                    target -= val
                    break
        else:
            raise InvariantError(f"replay found no choice for agent {i - 1}")

    alloc = Allocation(rows)
    sol = evaluate_welfare(inst, alloc)
    ok, why = check_feasible(inst, alloc)
    if not ok or sol.welfare != best:
        raise InvariantError(f"dp-exact reconstruction inconsistent: {why or sol.welfare} vs {best}")
    sol.stats.update(method="dp-exact", states=len(memo), state_bound=n * size, space=size)
    return sol
