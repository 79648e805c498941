"""Knapsack-style DP for single-deadline agents with unbounded charging speed.

Agents are sorted by deadline and ``M_i`` is the cumulative supply up to the
i-th sorted deadline.  ``OPT(m, i)`` is the best welfare from the first ``i``
sorted agents when ``m`` units of cumulative supply remain for them::

    OPT(m, 0) = 0
    OPT(m, i) = OPT(min(m, M_{i-1}), i-1)                         if m < w_i
              = max(OPT(min(m, M_{i-1}), i-1),
                    v_i + OPT(min(m - w_i, M_{i-1}), i-1))       otherwise

and the answer is ``OPT(M_n, n)``.  The table is filled level by level.
"""

from __future__ import annotations

from typing import Iterable

from .model import (
    Allocation,
    GuardError,
    InputError,
    Instance,
    InvariantError,
    Solution,
    Unbounded,
    VariantError,
    check_feasible,
    evaluate_welfare,
)

DEFAULT_GUARD_CELLS = 10 ** 8


def _check_variant(inst: Instance) -> None:
    for i, agent in enumerate(inst.agents):
        if len(agent.triples) != 1:
            raise VariantError(f"agent {i} has {len(agent.triples)} triples; dp-deadline needs one (use dp-exact)")
        if not isinstance(agent.speed, Unbounded):
            raise VariantError(f"agent {i} has a {agent.speed.kind} speed; dp-deadline needs unbounded (use dp-exact)")


def sort_by_deadline(inst: Instance) -> list[int]:
    """Agent indices in increasing deadline order; ties keep input order."""
    _check_variant(inst)
    return sorted(range(inst.n), key=lambda i: inst.agents[i].triples[0].deadline)


def cumulative_supply(inst: Instance, order: list[int]) -> list[int]:
    """``[M_0, M_1, ..., M_n]`` for the sorted agents, with ``M_0 = 0``."""
    prefix = [0]
    for m in inst.supply:
        prefix.append(prefix[-1] + m)
    return [0] + [prefix[inst.agents[i].triples[0].deadline] for i in order]


def dp_deadline_solve(inst: Instance, guard_cells: int = DEFAULT_GUARD_CELLS) -> Solution:
    order = sort_by_deadline(inst)
    n = len(order)
    M = cumulative_supply(inst, order)
    w = [0] + [inst.agents[i].triples[0].demand for i in order]
    v = [0] + [inst.agents[i].triples[0].value for i in order]

    # supply beyond what the first i agents could ever use is irrelevant
    cap = [0] * (n + 1)
    demand_so_far = 0
    for i in range(1, n + 1):
        demand_so_far += w[i]
        cap[i] = min(M[i], demand_so_far)

    bound = n * M[n]
    if bound > guard_cells:
        raise GuardError(
            f"dp-deadline refuses: n*M_n = {bound} exceeds guard {guard_cells}",
            guard="guard-cells", bound=guard_cells, size=bound,
        )

    # zero_col[i] = OPT(0, i): only zero-demand agents fit.  Keeping column 0
    # out of the table holds it to n*M_n cells.
    zero_col = [0] * (n + 1)
    for i in range(1, n + 1):
        zero_col[i] = zero_col[i - 1] + (v[i] if w[i] == 0 else 0)

    # table[i][m - 1] = OPT(m, i) for 1 <= m <= cap[i]; level n only needs cap[n]
    table: list[list] = [[]]
    cells = 0

    def lookup(m: int, i: int):
        m = min(m, cap[i])
        return zero_col[i] if m == 0 else table[i][m - 1]

    for i in range(1, n + 1):
        lo = cap[i] if i == n else 1
        row = [None] * cap[i]
        for m in range(max(lo, 1), cap[i] + 1):
            skip = lookup(min(m, M[i - 1]), i - 1)
            if m < w[i]:
                row[m - 1] = skip
            else:
                take = v[i] + lookup(min(m - w[i], M[i - 1]), i - 1)
                row[m - 1] = take if take > skip else skip
            cells += 1
        table.append(row)

    if cells > max(bound, 0):
        raise InvariantError(f"dp-deadline touched {cells} cells, bound {bound}")

    # walk back from OPT(M_n, n); prefer skipping on ties
    best = lookup(M[n], n)
    selected = []
    m = M[n]
    for i in range(n, 0, -1):
        here = lookup(m, i)
        skip = lookup(min(m, M[i - 1]), i - 1)
        if here == skip:
            m = min(m, M[i - 1])
        else:
            selected.append(order[i - 1])
            m = min(m - w[i], M[i - 1])
    selected.sort()

    alloc = recover_allocation(inst, selected)
    sol = evaluate_welfare(inst, alloc)
    ok, why = check_feasible(inst, alloc)
    if not ok or sol.welfare != best:
        raise InvariantError(f"dp-deadline reconstruction inconsistent: {why or sol.welfare} vs {best}")
    sol.stats.update(method="dp-deadline", cells=cells, cell_bound=bound, selected=selected, M_n=M[n])
    return sol


def recover_allocation(inst: Instance, selected: Iterable[int]) -> Allocation:
    """Serve ``selected`` agents in deadline order from the earliest unused supply.

    Raises InputError naming the violated prefix if the set is infeasible.
    """
    _check_variant(inst)
    chosen = sorted(set(selected), key=lambda i: (inst.agents[i].triples[0].deadline, i))
    left = list(inst.supply)
    rows = [[0] * inst.periods for _ in range(inst.n)]
    for i in chosen:
        _, d, need = inst.agents[i].triples[0]
        for t in range(d):
            if need == 0:
                break
            take = min(need, left[t])
            left[t] -= take
            rows[i][t] += take
            need -= take
        if need:
            raise InputError(
                f"selected agents are infeasible: demand due by period {d} exceeds cumulative supply "
                f"{sum(inst.supply[:d])} (agent {i} short by {need})",
                "selected",
            )
    return Allocation(rows)
