"""Solver dispatch, run reports and benchmark sweeps."""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field
from typing import Callable

from .dp_deadline import DEFAULT_GUARD_CELLS, dp_deadline_solve
from .dp_exact import DEFAULT_GUARD_STATES, dp_exact_solve
from .generators import (
    X3C_CORPUS,
    gen_knapsack,
    gen_random,
    gen_random_knapsack,
    gen_x3c_gaps,
    gen_x3c_multi,
)
from .jsonio import emit_instance
from .model import (
    GuardError,
    Instance,
    InvariantError,
    Number,
    Solution,
    check_feasible,
    classify,
    evaluate_welfare,
)
from .oracle import DEFAULT_MAX_BITS, oracle_solve

METHODS = ("auto", "oracle", "dp-exact", "dp-deadline")


@dataclass(frozen=True)
class Guards:
    states: int = DEFAULT_GUARD_STATES
    cells: int = DEFAULT_GUARD_CELLS
    oracle_bits: int = DEFAULT_MAX_BITS


@dataclass
class RunReport:
    method: str
    rule: str
    welfare: Number
    wall_time: float
    digest: str
    stats: dict = field(default_factory=dict)


class AllMethodsRefused(GuardError):
    def __init__(self, refusals: list[tuple[str, GuardError]]):
        self.refusals = refusals
        lines = [f"  {name}: {exc.guard} bound {exc.bound}, instance needs {exc.size}" for name, exc in refusals]
        first = refusals[0][1]
        super().__init__(
            "every applicable method refused the instance:\n" + "\n".join(lines),
            guard=first.guard, bound=first.bound, size=first.size,
        )


def digest(inst: Instance) -> str:
    return hashlib.sha256(emit_instance(inst).encode()).hexdigest()[:16]


def solver_for(method: str, guards: Guards = Guards()) -> Callable[[Instance], Solution]:
    if method == "oracle":
        return lambda inst: oracle_solve(inst, guards.oracle_bits)
    if method == "dp-exact":
        return lambda inst: dp_exact_solve(inst, guards.states)
    if method == "dp-deadline":
        return lambda inst: dp_deadline_solve(inst, guards.cells)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS[1:]}")


def plan(inst: Instance, method: str = "auto") -> tuple[list[str], str]:
    """Methods to try in order, and the selection rule that produced them."""
    if method != "auto":
        return [method], f"explicit --method {method}"
    tag = classify(inst)
    if tag.deadlines == "single" and tag.speed == "unbounded":
        return ["dp-deadline", "dp-exact", "oracle"], "single deadline + unbounded speed -> dp-deadline"
    return ["dp-exact", "oracle"], f"{tag.deadlines} deadline(s), {tag.speed} speed -> dp-exact"


def dispatch(inst: Instance, method: str = "auto", guards: Guards = Guards()) -> tuple[RunReport, Solution]:
    order, rule = plan(inst, method)
    refusals = []
    for name in order:
        start = time.perf_counter()
        try:
            sol = solver_for(name, guards)(inst)
        except GuardError as exc:
            refusals.append((name, exc))
            continue
        elapsed = time.perf_counter() - start
        if refusals:
            rule += "; fell back to " + name + " after " + ", ".join(n for n, _ in refusals) + " refused"
        _validate(inst, sol)
        report = RunReport(name, rule, sol.welfare, elapsed, digest(inst), dict(sol.stats))
        return report, sol
    if len(refusals) == 1:
        raise refusals[0][1]
    raise AllMethodsRefused(refusals)


def solve(inst: Instance, method: str = "auto", guards: Guards = Guards()) -> Solution:
    return dispatch(inst, method, guards)[1]


def _validate(inst: Instance, sol: Solution) -> None:
    ok, why = check_feasible(inst, sol.allocation)
    if not ok:
        raise InvariantError(f"solver emitted an infeasible allocation: {why}")
    if evaluate_welfare(inst, sol.allocation).welfare != sol.welfare:
        raise InvariantError("solver welfare does not match its allocation")


# -- benchmarking ------------------------------------------------------------

FAMILIES = ("knapsack", "x3c-gaps", "x3c-multi", "random")


def bench_instance(family: str, size: int, seed: int) -> Instance:
    if family == "knapsack":
        return gen_knapsack(gen_random_knapsack(seed, n_items=size))
    if family in ("x3c-gaps", "x3c-multi"):
        pool = [x for x in X3C_CORPUS["cover"] + X3C_CORPUS["no-cover"] if x.q == size]
        if not pool:
            raise ValueError(f"no bundled X3C input with q={size}")
        x = pool[seed % len(pool)]
        return gen_x3c_gaps(x) if family == "x3c-gaps" else gen_x3c_multi(x)
    if family == "random":
        return gen_random(seed, n=size, periods=3, max_supply=3, max_demand=4, max_value=20,
                          speed_kind="mixed", max_triples=2)
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def bench(family: str, sizes, seeds, methods=None, guards: Guards = Guards()) -> list[dict]:
    """Solve every (size, seed) instance with each applicable method.

    Each row records the memo cells/states the solver touched next to the
    space bound it must respect; a row over its bound raises InvariantError.
    """
    rows = []
    for size in sizes:
        for seed in seeds:
            inst = bench_instance(family, size, seed)
            tag = classify(inst)
            chosen = methods or (
                ["dp-deadline", "dp-exact"]
                if tag.deadlines == "single" and tag.speed == "unbounded" else ["dp-exact"]
            )
            for method in chosen:
                start = time.perf_counter()
                sol = solver_for(method, guards)(inst)
                elapsed = time.perf_counter() - start
                if method == "dp-deadline":
                    used, bound = sol.stats["cells"], sol.stats["cell_bound"]
                elif method == "dp-exact":
                    used, bound = sol.stats["states"], sol.stats["state_bound"]
                else:
                    used, bound = sol.stats["checks"], sol.stats["subsets"]
                if used > bound:
                    raise InvariantError(f"{method} on {family}/{size}/{seed}: {used} > bound {bound}")
                rows.append({
                    "family": family, "size": size, "seed": seed, "method": method,
                    "n": inst.n, "periods": inst.periods, "welfare": sol.welfare,
                    "wall_time": elapsed, "cells": used, "bound": bound,
                })
    return rows
