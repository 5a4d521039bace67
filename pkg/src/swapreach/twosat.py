"""2-SAT via the implication graph and strongly connected components.

A literal is a nonzero int: ``+v`` is variable ``v`` true, ``-v`` is false.
A unit clause is written ``(l, l)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

Clause = tuple[int, int]


@dataclass
class TwoSatInstance:
    var_count: int
    clauses: list[Clause] = field(default_factory=list)

    def __post_init__(self):
        for a, b in self.clauses:
            for lit in (a, b):
                if lit == 0 or abs(lit) > self.var_count:
                    raise ValueError(f"literal {lit} outside 1..{self.var_count}")

    def add(self, a: int, b: int) -> None:
        for lit in (a, b):
            if lit == 0 or abs(lit) > self.var_count:
                raise ValueError(f"literal {lit} outside 1..{self.var_count}")
        self.clauses.append((a, b))


def _node(lit: int) -> int:
    # variable v -> nodes 2(v-1) (true) and 2(v-1)+1 (false)
    return 2 * (abs(lit) - 1) + (lit < 0)


def satisfies(clauses: Sequence[Clause], model: Sequence[bool]) -> bool:
    """``model[v - 1]`` is the value of variable ``v``."""
    def val(lit: int) -> bool:
        return model[abs(lit) - 1] == (lit > 0)
    return all(val(a) or val(b) for a, b in clauses)


def solve(ts: TwoSatInstance) -> Optional[list[bool]]:
    """Return a satisfying model, or ``None`` when the clauses are unsatisfiable."""
    n = 2 * ts.var_count
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in ts.clauses:
        # a or b  ==  (not a -> b) and (not b -> a)
        adj[_node(-a)].append(_node(b))
        adj[_node(-b)].append(_node(a))

    comp = _tarjan(adj)
    model = []
    for v in range(ts.var_count):
        t, f = comp[2 * v], comp[2 * v + 1]
        if t == f:
            return None
        # Tarjan numbers components in reverse topological order, so the
        # literal whose component comes later topologically has the smaller id.
        model.append(t < f)
    return model


def _tarjan(adj: list[list[int]]) -> list[int]:
    """Iterative Tarjan; returns a component id per node (reverse topological)."""
    n = len(adj)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, pos = work[-1]
            if pos < len(adj[v]):
                work[-1] = (v, pos + 1)
                w = adj[v][pos]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


@lru_cache(maxsize=32)
def _truth_masks(v: int) -> tuple[int, ...]:
    full = (1 << (1 << v)) - 1
    masks = []
    for var in range(v):
        half = 1 << var
        block = ((1 << half) - 1) << half  # period 2*half: half zeros, then half ones
        masks.append(block * (full // ((1 << (2 * half)) - 1)))
    return tuple(masks)


def brute_force(ts: TwoSatInstance) -> Optional[list[bool]]:
    """Exhaustive search over all ``2**var_count`` models; for small instances.

    The truth table is a big integer whose bit ``x`` is set when model
    number ``x`` (bit ``v-1`` of ``x`` = variable ``v``) satisfies every clause.
    """
    v = ts.var_count
    full = (1 << (1 << v)) - 1
    true_mask = _truth_masks(v)

    def lit_mask(lit: int) -> int:
        m = true_mask[abs(lit) - 1]
        return m if lit > 0 else full ^ m

    table = full
    for a, b in ts.clauses:
        table &= lit_mask(a) | lit_mask(b)
        if not table:
            return None
    x = (table & -table).bit_length() - 1
    return [bool(x >> var & 1) for var in range(v)]
