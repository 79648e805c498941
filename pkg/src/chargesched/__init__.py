"""Exact solvers for welfare-maximizing charge scheduling."""

from .dp_deadline import dp_deadline_solve, recover_allocation, sort_by_deadline
from .dp_exact import dp_exact_solve, enumerate_agent_allocations
from .jsonio import emit_instance, parse_instance
from .model import (
    Agent,
    Allocation,
    Fixed,
    Gaps,
    GuardError,
    InputError,
    Instance,
    InvariantError,
    Solution,
    Triple,
    Unbounded,
    VariantError,
    check_feasible,
    classify,
    cumulative_alloc,
    evaluate_welfare,
)
from .oracle import feasible_flow, feasible_hall, oracle_solve
from .runner import Guards, dispatch, solve
from .vcg import VcgOutcome, vcg_solve

__version__ = "0.1.0"
