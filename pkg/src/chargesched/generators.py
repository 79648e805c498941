"""Instance generators: reductions from knapsack and X3C, plus random families."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .model import Agent, Fixed, Gaps, InputError, Instance, Triple, Unbounded


@dataclass(frozen=True)
class KnapsackInput:
    capacity: int
    items: tuple[tuple[int, int], ...]     # (value, weight)

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(tuple(it) for it in self.items))
        if not isinstance(self.capacity, int) or self.capacity <= 0:
            raise InputError(f"capacity must be a positive integer, got {self.capacity!r}", "capacity")
        for j, (value, weight) in enumerate(self.items):
            if not isinstance(weight, int) or weight <= 0:
                raise InputError(f"weight must be a positive integer, got {weight!r}", f"items[{j}]")
            if value < 0:
                raise InputError(f"value must be nonnegative, got {value!r}", f"items[{j}]")


@dataclass(frozen=True)
class X3CInput:
    q: int
    collection: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "collection", tuple(tuple(c) for c in self.collection))
        if not isinstance(self.q, int) or self.q <= 0:
            raise InputError(f"q must be a positive integer, got {self.q!r}", "q")
        for j, c in enumerate(self.collection):
            if len(c) != 3 or len(set(c)) != 3:
                raise InputError(f"subset {c!r} must have 3 distinct elements", f"collection[{j}]")
            if not all(isinstance(x, int) and 1 <= x <= 3 * self.q for x in c):
                raise InputError(f"subset {c!r} has elements outside 1..{3 * self.q}", f"collection[{j}]")


def gen_knapsack(k: KnapsackInput) -> Instance:
    """One period with supply W; each item is an agent due at period 1."""
    agents = [Agent([Triple(value, 1, weight)]) for value, weight in k.items]
    return Instance(1, (k.capacity,), agents)


def gen_x3c_gaps(x: X3CInput) -> Instance:
    """Unit supply over 3q periods; each subset is an agent that may charge only in its three slots.

    Optimum equals q iff the collection contains an exact cover.
    """
    periods = 3 * x.q
    agents = []
    for c in x.collection:
        mask = [t in c for t in range(1, periods + 1)]
        agents.append(Agent([Triple(1, periods, 3)], Gaps(mask)))
    return Instance(periods, (1,) * periods, agents)


def gen_x3c_multi(x: X3CInput) -> Instance:
    """Unit supply over 3q periods; each subset ``x1 < x2 < x3`` becomes an
    unbounded-speed agent with cumulative triples

        (3q - x1 + 1, x1, 1), (3q - x2 + 2, x2, 2), (3q - x3 + 3, x3, 3).

    Optimum equals 9q^2/2 + 9q/2 iff the collection contains an exact cover.
    """
    n3 = 3 * x.q
    agents = []
    for j, c in enumerate(x.collection):
        if not c[0] < c[1] < c[2]:
            raise InputError(f"subset {c!r} must be listed in increasing order", f"collection[{j}]")
        agents.append(Agent([Triple(n3 - xk + k, xk, k) for k, xk in enumerate(c, start=1)]))
    return Instance(n3, (1,) * n3, agents)


def x3c_multi_target(q: int) -> int:
    """9q^2/2 + 9q/2, always an integer."""
    return 9 * q * (q + 1) // 2


# Tiny labelled corpus; labels are re-certified by brute force in the tests.
X3C_CORPUS: dict[str, list[X3CInput]] = {
    "cover": [
        X3CInput(1, [(1, 2, 3)]),
        X3CInput(1, [(1, 2, 3), (1, 2, 3)]),
        X3CInput(2, [(1, 2, 3), (4, 5, 6)]),
        X3CInput(2, [(1, 2, 3), (4, 5, 6), (1, 4, 5)]),
        X3CInput(2, [(1, 2, 4), (3, 5, 6), (1, 3, 5), (2, 4, 6)]),
        X3CInput(3, [(1, 2, 3), (4, 5, 6), (7, 8, 9)]),
        X3CInput(3, [(1, 2, 3), (1, 4, 7), (2, 5, 8), (3, 6, 9)]),
    ],
    "no-cover": [
        X3CInput(1, []),
        X3CInput(2, [(1, 2, 3), (1, 4, 5)]),
        X3CInput(2, [(1, 2, 3), (3, 4, 5), (2, 5, 6)]),
        X3CInput(2, [(1, 2, 4), (1, 3, 5), (2, 5, 6)]),
        X3CInput(3, [(1, 2, 3), (3, 4, 5), (6, 7, 8)]),
        X3CInput(3, [(1, 2, 4), (3, 5, 7), (1, 6, 8), (2, 3, 9)]),
    ],
}


SPEED_KINDS = ("unbounded", "fixed", "gaps", "mixed")


def gen_random(
    seed: int,
    n: int,
    periods: int,
    max_supply: int,
    max_demand: int,
    max_value: int,
    speed_kind: str = "unbounded",
    max_triples: int = 1,
) -> Instance:
    """Random instance; identical output for identical arguments."""
    if speed_kind not in SPEED_KINDS:
        raise InputError(f"unknown speed kind {speed_kind!r}; expected one of {SPEED_KINDS}", "speed_kind")
    rng = random.Random(seed)
    supply = [rng.randint(0, max_supply) for _ in range(periods)]
    agents = []
    for _ in range(n):
        k = rng.randint(1, min(max_triples, periods))
        deadlines = sorted(rng.sample(range(1, periods + 1), k))
        demands = sorted(rng.randint(0, max_demand) for _ in range(k))
        triples = [Triple(rng.randint(1, max_value), d, w) for d, w in zip(deadlines, demands)]
        kind = rng.choice(SPEED_KINDS[:3]) if speed_kind == "mixed" else speed_kind
        if kind == "fixed":
            speed = Fixed(rng.randint(1, max(1, max_demand)))
        elif kind == "gaps":
            speed = Gaps([rng.random() < 0.6 for _ in range(periods)])
        else:
            speed = Unbounded()
        agents.append(Agent(triples, speed))
    return Instance(periods, supply, agents)


def gen_releases(inst: Instance, seed: int) -> list[int]:
    """Release periods drawn uniformly from ``1..first deadline`` per agent."""
    rng = random.Random(seed)
    return [rng.randint(1, a.triples[0].deadline) for a in inst.agents]


def gen_random_knapsack(
    seed: int,
    max_items: int = 12,
    max_weight: int = 50,
    max_value: int = 100,
    n_items: int | None = None,
) -> KnapsackInput:
    """Random knapsack; item count is ``n_items`` or uniform in ``0..max_items``."""
    rng = random.Random(seed)
    count = rng.randint(0, max_items) if n_items is None else n_items
    items = [(rng.randint(0, max_value), rng.randint(1, max_weight)) for _ in range(count)]
    return KnapsackInput(rng.randint(1, max_weight), items)

