"""Core data model for charge scheduling.

An instance has ``periods`` time intervals with integer supply per interval
and a list of agents.  Each agent has a speed constraint and one or more
valuation triples ``(value, deadline, demand)``: the value is earned iff the
agent's cumulative charge up to and including ``deadline`` reaches ``demand``.

Periods are 1-based everywhere in the public API (deadlines, ``t`` arguments).
Allocation rows are plain tuples indexed from 0, so period ``t`` lives at
``row[t - 1]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import NamedTuple, Sequence, Union

Number = Union[int, Fraction]


class ChargeSchedError(Exception):
    """Base class for all package errors."""


class InputError(ChargeSchedError, ValueError):
    """Malformed or inconsistent input.  ``field`` names the offending location."""

    def __init__(self, message: str, field: str | None = None):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


class GuardError(ChargeSchedError):
    """A solver refused an instance because a size guard was exceeded."""

    def __init__(self, message: str, guard: str, bound: int, size: int):
        self.guard = guard
        self.bound = bound
        self.size = size
        super().__init__(message)


class VariantError(ChargeSchedError):
    """A solver was handed a problem variant it does not support."""


class InvariantError(ChargeSchedError):
    """An internal consistency check failed; always a bug."""


# -- speed constraints -------------------------------------------------------


@dataclass(frozen=True)
class Unbounded:
    kind = "unbounded"

    def cap(self, t: int) -> int | None:
        return None


@dataclass(frozen=True)
class Fixed:
    speed: int
    kind = "fixed"

    def __post_init__(self):
        if not _is_int(self.speed) or self.speed <= 0:
            raise InputError(f"fixed speed must be a positive integer, got {self.speed!r}", "speed.fixed")

    def cap(self, t: int) -> int | None:
        return self.speed


@dataclass(frozen=True)
class Gaps:
    available: tuple[bool, ...]
    kind = "gaps"

    def __post_init__(self):
        object.__setattr__(self, "available", tuple(self.available))
        for j, flag in enumerate(self.available):
            if not isinstance(flag, bool):
                raise InputError(f"expected boolean, got {flag!r}", f"speed.gaps[{j}]")

    def cap(self, t: int) -> int | None:
        return None if self.available[t - 1] else 0


SpeedConstraint = Union[Unbounded, Fixed, Gaps]


# -- agents and instances ----------------------------------------------------


class Triple(NamedTuple):
    value: Number
    deadline: int
    demand: int


@dataclass(frozen=True)
class Agent:
    triples: tuple[Triple, ...]
    speed: SpeedConstraint = field(default_factory=Unbounded)

    def __post_init__(self):
        triples = tuple(_normalize(Triple(*tr)) for tr in self.triples)
        object.__setattr__(self, "triples", triples)
        if not triples:
            raise InputError("agent needs at least one triple", "triples")
        for k, tr in enumerate(triples):
            where = f"triples[{k}]"
            if not _is_number(tr.value) or tr.value < 0:
                raise InputError(f"value must be a nonnegative number, got {tr.value!r}", where + ".value")
            if not _is_int(tr.deadline) or tr.deadline < 1:
                raise InputError(f"deadline must be a positive integer, got {tr.deadline!r}", where + ".deadline")
            if not _is_int(tr.demand) or tr.demand < 0:
                raise InputError(f"demand must be a nonnegative integer, got {tr.demand!r}", where + ".demand")
        for k in range(1, len(triples)):
            prev, cur = triples[k - 1], triples[k]
            if cur.deadline <= prev.deadline:
                raise InputError(
                    f"deadlines must be strictly increasing ({prev.deadline} then {cur.deadline})",
                    f"triples[{k}].deadline",
                )
            if cur.demand < prev.demand:
                raise InputError(
                    f"demands are cumulative thresholds and must be nondecreasing "
                    f"({prev.demand} by {prev.deadline}, then {cur.demand} by {cur.deadline})",
                    f"triples[{k}].demand",
                )

    @property
    def last_deadline(self) -> int:
        return self.triples[-1].deadline

    @property
    def max_demand(self) -> int:
        return self.triples[-1].demand

    def cap(self, t: int) -> int | None:
        return self.speed.cap(t)

    def value_of(self, row: Sequence[int]) -> Number:
        """Value this agent derives from its own allocation row."""
        total: Number = 0
        cum = _prefix(row)
        for tr in self.triples:
            if cum[tr.deadline] >= tr.demand:
                total += tr.value
        return total


@dataclass(frozen=True)
class Instance:
    periods: int
    supply: tuple[int, ...]
    agents: tuple[Agent, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "supply", tuple(self.supply))
        object.__setattr__(self, "agents", tuple(self.agents))
        if not _is_int(self.periods) or self.periods < 1:
            raise InputError(f"periods must be a positive integer, got {self.periods!r}", "periods")
        if len(self.supply) != self.periods:
            raise InputError(f"expected {self.periods} entries, got {len(self.supply)}", "supply")
        for t, m in enumerate(self.supply):
            if not _is_int(m) or m < 0:
                raise InputError(f"supply must be a nonnegative integer, got {m!r}", f"supply[{t}]")
        for i, agent in enumerate(self.agents):
            if not isinstance(agent, Agent):
                raise InputError("expected an Agent", f"agents[{i}]")
            for k, tr in enumerate(agent.triples):
                if tr.deadline > self.periods:
                    raise InputError(
                        f"deadline {tr.deadline} outside 1..{self.periods}",
                        f"agents[{i}].triples[{k}].deadline",
                    )
            if isinstance(agent.speed, Gaps) and len(agent.speed.available) != self.periods:
                raise InputError(
                    f"expected {self.periods} entries, got {len(agent.speed.available)}",
                    f"agents[{i}].speed.gaps",
                )

    @property
    def n(self) -> int:
        return len(self.agents)

    def without(self, index: int) -> "Instance":
        """Copy of the instance with agent ``index`` removed."""
        agents = self.agents[:index] + self.agents[index + 1:]
        return Instance(self.periods, self.supply, agents)

    def cap(self, agent: int, t: int) -> int:
        """Effective per-period cap for ``agent`` at period ``t``.

        Unbounded speeds become ``min(m_t, remaining demand)`` here so that no
        caller ever does arithmetic with an infinite cap.
        """
        a = self.agents[agent]
        limit = min(self.supply[t - 1], a.max_demand)
        c = a.cap(t)
        return limit if c is None else min(c, limit)


@dataclass(frozen=True)
class Allocation:
    amounts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "amounts", tuple(tuple(row) for row in self.amounts))

    @classmethod
    def zeros(cls, n: int, periods: int) -> "Allocation":
        return cls(tuple((0,) * periods for _ in range(n)))

    def __getitem__(self, agent: int) -> tuple[int, ...]:
        return self.amounts[agent]

    def __len__(self) -> int:
        return len(self.amounts)


@dataclass(frozen=True)
class Solution:
    allocation: Allocation
    welfare: Number
    satisfied: tuple[tuple[bool, ...], ...]
    stats: dict = field(default_factory=dict, compare=False)

    def agent_value(self, inst: Instance, agent: int) -> Number:
        return sum(
            (tr.value for tr, ok in zip(inst.agents[agent].triples, self.satisfied[agent]) if ok),
            0,
        )


class VariantTag(NamedTuple):
    speed: str          # "unbounded" | "fixed" | "gaps"
    deadlines: str      # "single" | "multiple"
    max_demand: int
    max_supply: int
    periods: int


# -- operations --------------------------------------------------------------


def cumulative_alloc(alloc: Allocation, agent: int, t: int) -> int:
    """Total charge given to ``agent`` in periods ``1..t``."""
    row = alloc[agent]
    if not _is_int(t) or not 1 <= t <= len(row):
        raise InputError(f"period {t!r} outside 1..{len(row)}", "t")
    return sum(row[:t])


def evaluate_welfare(inst: Instance, alloc: Allocation) -> Solution:
    """Score an allocation.  Feasibility is not checked here."""
    _check_dims(inst, alloc)
    satisfied = []
    welfare: Number = 0
    for agent, row in zip(inst.agents, alloc.amounts):
        cum = _prefix(row)
        flags = tuple(cum[tr.deadline] >= tr.demand for tr in agent.triples)
        welfare += sum((tr.value for tr, ok in zip(agent.triples, flags) if ok), 0)
        satisfied.append(flags)
    return Solution(alloc, welfare, tuple(satisfied))


def check_feasible(inst: Instance, alloc: Allocation) -> tuple[bool, str | None]:
    """Return ``(True, None)`` or ``(False, description of the first violation)``."""
    try:
        _check_dims(inst, alloc)
    except InputError as exc:
        return False, str(exc)
    for t in range(1, inst.periods + 1):
        used = 0
        for i, (agent, row) in enumerate(zip(inst.agents, alloc.amounts)):
            a = row[t - 1]
            if not _is_int(a) or a < 0:
                return False, f"agent {i} period {t}: amount {a!r} is not a nonnegative integer"
            cap = agent.cap(t)
            if cap is not None and a > cap:
                return False, f"agent {i} period {t}: amount {a} exceeds speed cap {cap}"
            used += a
        if used > inst.supply[t - 1]:
            return False, f"period {t}: allocated {used} exceeds supply {inst.supply[t - 1]}"
    return True, None


def classify(inst: Instance) -> VariantTag:
    kinds = {a.speed.kind for a in inst.agents}
    if "gaps" in kinds:
        speed = "gaps"
    elif "fixed" in kinds:
        speed = "fixed"
    else:
        speed = "unbounded"
    multiple = any(len(a.triples) > 1 for a in inst.agents)
    return VariantTag(
        speed=speed,
        deadlines="multiple" if multiple else "single",
        max_demand=max((a.max_demand for a in inst.agents), default=0),
        max_supply=max(inst.supply),
        periods=inst.periods,
    )


# -- helpers -----------------------------------------------------------------


def _prefix(row: Sequence[int]) -> list[int]:
    """``cum[t]`` is the charge received in periods ``1..t``; ``cum[0] == 0``."""
    cum = [0]
    for a in row:
        cum.append(cum[-1] + a)
    return cum


def _check_dims(inst: Instance, alloc: Allocation) -> None:
    if len(alloc) != inst.n:
        raise InputError(f"allocation has {len(alloc)} rows for {inst.n} agents", "allocation")
    for i, row in enumerate(alloc.amounts):
        if len(row) != inst.periods:
            raise InputError(f"row has {len(row)} entries for {inst.periods} periods", f"allocation[{i}]")


def _normalize(tr: Triple) -> Triple:
    # floats are converted exactly so welfare sums never round
    if isinstance(tr.value, float):
        return tr._replace(value=Fraction(tr.value))
    return tr


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _is_number(x) -> bool:
    return isinstance(x, Rational) and not isinstance(x, bool)
