"""Shared fixtures: worked examples with their frozen expected values."""

from __future__ import annotations

import random
from collections import Counter

from swapreach.core import Instance, Network, complete_order, replay, strict_instance
from swapreach.reductions import CnfFormula2P1N, Digraph

# Four agents on a path; agent 3 can obtain o1 in two swaps.
FOUR_ORDERS = [[2, 1, 3, 4], [4, 3, 1, 2], [1, 4, 3, 2], [3, 1, 2, 4]]
FOUR_SEQ = [(1, 2), (2, 3)]
FOUR_AFTER_TWO = (2, 3, 1, 4)


def four_agents() -> Instance:
    return strict_instance(FOUR_ORDERS)


# Eight agents, k = 5.  Each row lists the objects ranked at or above the
# agent's own object (best first); the rest follow in index order.
EIGHT_LISTED = {
    1: [2, 8, 7, 1],
    2: [5, 3, 4, 1, 8, 2],
    3: [6, 4, 1, 8, 5, 3],
    4: [8, 1, 6, 3, 2, 7, 5, 4],
    5: [1, 8, 3, 7, 6, 4, 2, 5],
    6: [3, 2, 5, 8, 4, 6],
    7: [4, 6, 2, 8, 1, 3, 7],
    8: [7, 3, 5, 4, 1, 8],
}
EIGHT_K = 5

# Table of left/right destinations as printed with the worked example.
EIGHT_CANDIDATES_PRINTED = {
    1: (None, 5), 2: (1, 6), 3: (2, 6), 4: (3, 7),
    5: (2, 6), 6: (3, 7), 7: (None, 8), 8: (4, None),
}
EIGHT_INITIAL_SETS_PRINTED = {
    1: {2}, 2: {3, 5}, 3: {4, 6}, 4: {8}, 5: {1}, 6: {2, 3, 5}, 7: {4, 6}, 8: {7},
}
EIGHT_UPDATED_SETS = {
    1: {2}, 2: {3, 5}, 3: {4, 6}, 4: {8}, 5: {1}, 6: {3, 5}, 7: {4, 6}, 8: {7},
}
# Agent clauses per set, written as frozensets of literals (unit = singleton).
EIGHT_AGENT_CLAUSES = {
    frozenset({-2}),
    frozenset({3, 5}), frozenset({-3, -5}),
    frozenset({4, 6}), frozenset({-4, -6}),
    frozenset({-8}),
    frozenset({1}),
    frozenset({7}),
}
EIGHT_COMPAT_CLAUSES_PRINTED = {frozenset({4, 5}), frozenset({-4, -5})}
EIGHT_MODEL = (1, 0, 0, 0, 1, 1, 1, 0)
EIGHT_ASSIGNMENT = (2, 3, 4, 8, 1, 5, 6, 7)
EIGHT_SWAPS = [(1, 2), (2, 3), (3, 4), (7, 8), (6, 7), (5, 6), (4, 5)]


def eight_agents() -> Instance:
    return strict_instance([complete_order(8, EIGHT_LISTED[i]) for i in range(1, 9)])


# 2P1N formulas.
FORMULA_N1 = CnfFormula2P1N.of(1, [[1], [1], [-1]])
FORMULA_N2 = CnfFormula2P1N.of(2, [[1, 2], [1, -2], [-1, 2]])
FORMULA_N2_MODEL = (True, True)

# Digraph with start s and a Hamiltonian path s, v, u, t.
HAM_DIGRAPH = Digraph.of(["s", "v", "t", "u"],
                      [("s", "v"), ("s", "t"), ("v", "u"), ("t", "v"), ("u", "t")], "s")
# Rows: agents a_c, a_s, a_v, a_t, a_u, a_sv, a_st, a_vu, a_tv, a_ut.
# Columns: objects in the same order.
HAM_DIGRAPH_VALUES = [
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [2, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 2, 0, 0, 2, 0],
    [0, 0, 0, 1, 0, 0, 2, 0, 0, 2],
    [0, 0, 0, 0, 1, 0, 0, 2, 0, 0],
    [0, 2, 0, 0, 0, 1, 0, 0, 0, 0],
    [0, 2, 0, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 2, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 2, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 2, 0, 0, 0, 0, 1],
]


# ------------------------------------------------------------------ checks


def satisfaction_monotone(inst: Instance, seq) -> bool:
    """Each agent's tier index never rises along the replay."""
    trail = replay(inst, seq)
    rank = inst.rank
    for before, after in zip(trail, trail[1:]):
        for i in range(1, inst.n + 1):
            if rank[i][after[i]] > rank[i][before[i]]:
                return False
    return True


def strict_improvement_on_swap(inst: Instance, seq) -> bool:
    trail = replay(inst, seq)
    rank = inst.rank
    for (i, j), before, after in zip(seq, trail, trail[1:]):
        for x in (i, j):
            if not rank[x][after[x]] < rank[x][before[x]]:
                return False
    return True


def tracks_monotone(inst: Instance, seq) -> bool:
    """Every object moves in one direction only."""
    trail = replay(inst, seq)
    for o in range(1, inst.n + 1):
        pos = [a.holder(o) for a in trail]
        steps = {(b > a) - (b < a) for a, b in zip(pos, pos[1:]) if a != b}
        if len(steps) > 1:
            return False
    return True


def simple_star_bound(seq, k: int, center: int) -> bool:
    count = Counter(x for s in seq for x in s)
    if k == center:
        return all(c <= 1 for a, c in count.items() if a != center)
    return all(c <= 1 for a, c in count.items() if a not in (k, center)) and count[k] <= 2


# --------------------------------------------------------------- planting


def planted_constrained(n: int, rng: random.Random, extra: float = 0.3) -> tuple[Instance, int]:
    """Strict path on which o_n ends at k-1 and o_1 at k along a planted run.

    Random adjacent swaps are applied (each object moving one way only and
    no agent receiving an object twice) until o_1 and o_n trade, followed by
    a few more that leave both alone.  Each agent then ranks the objects it
    received, latest first, above its own object.  With probability
    ``extra`` per object, a further object is spliced into that upper part
    so that other runs may exist too.  Returns the instance and ``k``.
    """
    if n < 2:
        raise ValueError("need at least two agents")
    while True:
        held = list(range(1, n + 1))
        received = {i: [i] for i in range(1, n + 1)}
        direction = {o: 0 for o in range(1, n + 1)}
        direction[1], direction[n] = 1, -1
        crossed, tail = False, rng.randint(0, n)

        def moves():
            out = []
            for x in range(1, n):
                a, b = held[x - 1], held[x]
                if direction[a] < 0 or direction[b] > 0:
                    continue
                if a in received[x + 1] or b in received[x]:
                    continue
                if crossed and {a, b} & {1, n}:
                    continue
                out.append(x)
            return out

        for _ in range(n * n):
            if crossed and tail == 0:
                break
            opts = moves()
            if not opts:
                break
            x = rng.choice(opts)
            a, b = held[x - 1], held[x]
            direction[a], direction[b] = 1, -1
            held[x - 1], held[x] = b, a
            received[x].append(b)
            received[x + 1].append(a)
            if (a, b) == (1, n):
                crossed = True
            elif crossed:
                tail -= 1
        if crossed:
            break

    orders = []
    for i in range(1, n + 1):
        top = list(reversed(received[i]))
        rest = [o for o in range(1, n + 1) if o not in top]
        rng.shuffle(rest)
        for o in list(rest):
            if rng.random() < extra:
                rest.remove(o)
                top.insert(rng.randint(0, len(top) - 1), o)
        orders.append(top + rest)
    k = held.index(1) + 1
    inst = Instance(n, Network.path(n), tuple(tuple((o,) for o in row) for row in orders))
    return inst, k
