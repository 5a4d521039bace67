"""Brute-force breadth-first search over assignments.

This is the ground truth that the polynomial solvers are checked against.
States are stored as ``bytes`` (object of agent ``i`` at offset ``i - 1``).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .core import Assignment, Instance, MissingValues, Swap, SwapError, pareto_dominates

DEFAULT_CAP = 5_000_000


@dataclass
class SearchStats:
    states: int = 0
    frontier_peak: int = 0
    depth: int = 0


class CapExceeded(SwapError):
    def __init__(self, cap: int, stats: SearchStats):
        self.cap, self.stats = cap, stats
        super().__init__(f"state cap {cap} exceeded after {stats.states} states")


@dataclass
class ReachableSet:
    """All assignments reachable from the endowment, with BFS parent links."""

    instance: Instance
    parents: dict[bytes, Optional[tuple[bytes, Swap]]]
    stats: SearchStats = field(default_factory=SearchStats)

    def __len__(self) -> int:
        return len(self.parents)

    def __contains__(self, a) -> bool:
        return _encode(a) in self.parents

    def __iter__(self) -> Iterator[Assignment]:
        for s in self.parents:
            yield Assignment(tuple(s))

    def certificate(self, a) -> list[Swap]:
        return _trace(self.parents, _encode(a))


def _encode(a) -> bytes:
    held = a.held if isinstance(a, Assignment) else a
    return bytes(held)


def _trace(parents, state: bytes) -> list[Swap]:
    seq = []
    link = parents[state]
    while link is not None:
        state, swap = link
        seq.append(swap)
        link = parents[state]
    seq.reverse()
    return seq


def _edge_list(inst: Instance, edge_order: Optional[Sequence[Swap]]) -> list[tuple[int, int]]:
    edges = inst.network.sorted_edges() if edge_order is None else list(edge_order)
    return [(i - 1, j - 1) for i, j in edges]


def _bfs(inst: Instance, cap: int, goal=None, edge_order=None):
    """Generic BFS; ``goal(state)`` stops early and returns that state."""
    rank = [row[:] for row in inst.rank[1:]]
    edges = _edge_list(inst, edge_order)
    start = bytes(inst.endowment.held)
    parents: dict[bytes, Optional[tuple[bytes, Swap]]] = {start: None}
    stats = SearchStats(states=1, frontier_peak=1)
    if goal is not None and goal(start):
        return parents, stats, start
    queue = deque([(start, 0)])
    while queue:
        state, depth = queue.popleft()
        stats.depth = max(stats.depth, depth)
        for i, j in edges:
            oi, oj = state[i], state[j]
            ri, rj = rank[i], rank[j]
            if ri[oj] > ri[oi] or rj[oi] > rj[oj]:
                continue
            nxt = bytearray(state)
            nxt[i], nxt[j] = oj, oi
            nxt = bytes(nxt)
            if nxt in parents:
                continue
            parents[nxt] = (state, (i + 1, j + 1))
            stats.states += 1
            if goal is not None and goal(nxt):
                stats.depth = max(stats.depth, depth + 1)
                return parents, stats, nxt
            if stats.states > cap:
                raise CapExceeded(cap, stats)
            queue.append((nxt, depth + 1))
        stats.frontier_peak = max(stats.frontier_peak, len(queue))
    return parents, stats, None


def reachable_set(inst: Instance, cap: int = DEFAULT_CAP,
                  edge_order: Optional[Sequence[Swap]] = None) -> ReachableSet:
    parents, stats, _ = _bfs(inst, cap, edge_order=edge_order)
    return ReachableSet(inst, parents, stats)


def search(inst: Instance, k: int, obj: int,
           cap: int = DEFAULT_CAP) -> tuple[Optional[list[Swap]], SearchStats]:
    """Like :func:`is_reachable`, also returning the search statistics."""
    idx = k - 1
    parents, stats, hit = _bfs(inst, cap, goal=lambda s: s[idx] == obj)
    return (None if hit is None else _trace(parents, hit)), stats


def is_reachable(inst: Instance, k: int, obj: int, cap: int = DEFAULT_CAP) -> Optional[list[Swap]]:
    """Shortest certificate that gives ``obj`` to agent ``k``, or ``None``."""
    return search(inst, k, obj, cap)[0]


def pareto_frontier(inst: Instance, cap: int = DEFAULT_CAP) -> list[Assignment]:
    """Reachable assignments not Pareto-dominated by another reachable one."""
    rs = reachable_set(inst, cap)
    rank = inst.rank
    n = inst.n

    def vec(s: bytes) -> tuple[int, ...]:
        return tuple(rank[i + 1][s[i]] for i in range(n))

    # A dominator has a strictly smaller rank sum; scanning in that order lets
    # us compare only against frontier members found so far.
    items = sorted(((vec(s), s) for s in rs.parents), key=lambda t: (sum(t[0]), t[1]))
    frontier: list[tuple[tuple[int, ...], bytes]] = []
    for v, s in items:
        dominated = any(
            all(x <= y for x, y in zip(fv, v)) and fv != v for fv, _ in frontier
        )
        if not dominated:
            frontier.append((v, s))
    out = [Assignment(tuple(s)) for _, s in frontier]
    return out


def max_welfare(inst: Instance, cap: int = DEFAULT_CAP) -> tuple[int, Assignment]:
    if inst.values is None:
        raise MissingValues("instance carries no value function")
    rs = reachable_set(inst, cap)
    vals = inst.values
    n = inst.n
    best, arg = None, None
    for s in rs.parents:
        w = sum(vals[i][s[i] - 1] for i in range(n))
        if best is None or w > best or (w == best and s < arg):
            best, arg = w, s
    return best, Assignment(tuple(arg))


def frontier_is_antichain(inst: Instance, frontier: Sequence[Assignment]) -> bool:
    return not any(pareto_dominates(inst, a, b) for a in frontier for b in frontier)
