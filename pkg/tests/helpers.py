"""Independent brute-force oracles shared by the test modules.

None of these use the package's solvers; the allocation enumerator does not
even use the satisfaction-set machinery.
"""

from itertools import combinations, product

from hypothesis import strategies as st

from chargesched.generators import SPEED_KINDS, gen_random
from chargesched.model import Allocation, Instance, check_feasible, evaluate_welfare


@st.composite
def small_instances(draw, n=3, periods=3, supply=3, demand=4, triples=2, speeds=SPEED_KINDS):
    """Random small instances built through the package generator."""
    return gen_random(
        seed=draw(st.integers(0, 2 ** 32)),
        n=draw(st.integers(0, n)),
        periods=draw(st.integers(1, periods)),
        max_supply=supply,
        max_demand=demand,
        max_value=draw(st.integers(1, 20)),
        speed_kind=draw(st.sampled_from(speeds)),
        max_triples=triples,
    )


def brute_knapsack(capacity, items):
    best = 0
    for r in range(len(items) + 1):
        for combo in combinations(items, r):
            if sum(w for _, w in combo) <= capacity:
                best = max(best, sum(v for v, _ in combo))
    return best


def textbook_knapsack(capacity, items):
    """Classic O(n W) table, a second knapsack oracle."""
    table = [0] * (capacity + 1)
    for v, w in items:
        for c in range(capacity, w - 1, -1):
            table[c] = max(table[c], table[c - w] + v)
    return table[capacity]


def has_exact_cover(q, collection):
    universe = set(range(1, 3 * q + 1))
    for combo in combinations(collection, q):
        covered = [x for c in combo for x in c]
        if len(covered) == len(set(covered)) and set(covered) == universe:
            return True
    return False


def _splits(total, parts):
    """All tuples of ``parts`` nonnegative ints summing to at most ``total``."""
    for combo in product(range(total + 1), repeat=parts):
        if sum(combo) <= total:
            yield combo


def brute_allocations_optimum(inst: Instance):
    """Max welfare over every integer allocation matrix; tiny instances only."""
    n, T = inst.n, inst.periods
    per_period = [list(_splits(inst.supply[t], n)) for t in range(T)]
    best = 0
    for cols in product(*per_period):
        rows = [[cols[t][i] for t in range(T)] for i in range(n)]
        alloc = Allocation(rows)
        ok, _ = check_feasible(inst, alloc)
        if ok:
            best = max(best, evaluate_welfare(inst, alloc).welfare)
    return best


def satisfaction_sets(inst: Instance):
    bits = [(i, k) for i, a in enumerate(inst.agents) for k in range(len(a.triples))]
    for r in range(len(bits) + 1):
        for combo in combinations(bits, r):
            yield frozenset(combo)


def set_value(inst: Instance, s):
    return sum((inst.agents[i].triples[k].value for i, k in s), 0)
