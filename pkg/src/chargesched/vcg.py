"""VCG payments computed with exact solvers.

Agent ``i`` pays ``W_{-i} - (W - v_i)``: the optimal welfare of the others
without ``i``, minus what the others actually get in the chosen allocation.
Truthfulness depends on the allocation being optimal, so only exact solvers
are accepted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Instance, Number, Solution
from .runner import Guards, solver_for

EXACT_METHODS = ("dp-exact", "dp-deadline", "oracle")


@dataclass(frozen=True)
class VcgOutcome:
    solution: Solution
    payments: tuple[Number, ...]

    def utility(self, inst: Instance, agent: int) -> Number:
        """Utility of ``agent`` under the valuations in ``inst``."""
        row = self.solution.allocation[agent]
        return inst.agents[agent].value_of(row) - self.payments[agent]


def vcg_solve(inst: Instance, method: str = "dp-exact", guards: Guards = Guards()) -> VcgOutcome:
    """Efficient allocation plus VCG payments; ``n + 1`` exact solves in total.

    Raises ValueError for a method that is not exact, and GuardError if any
    solve (including the sub-instances) is refused.
    """
    if method not in EXACT_METHODS:
        raise ValueError(f"VCG needs an exact solver, got {method!r}; choose from {EXACT_METHODS}")
    solve = solver_for(method, guards)
    sol = solve(inst)
    payments = []
    for i in range(inst.n):
        others_now = sol.welfare - sol.agent_value(inst, i)
        others_best = solve(inst.without(i)).welfare
        pay = others_best - others_now
        payments.append(pay)
    return VcgOutcome(sol, tuple(payments))
