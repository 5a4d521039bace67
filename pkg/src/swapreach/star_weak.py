"""Object reachability on a star, weak preferences allowed.

After relabeling, the target object is o_1 (held by agent 1) and the
center is agent n.  Reachability reduces to a directed path from n to 1 in
an auxiliary digraph whose arcs are the trades the center can make while
each leaf still holds its initial object.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import (
    Instance, Network, STAR, PATH, NotAStar, Swap, check_instance, restrict, star_center,
    verify_sequence,
)


@dataclass(frozen=True)
class AuxDigraph:
    n: int
    arcs: frozenset[tuple[int, int]]

    def successors(self, v: int) -> list[int]:
        return sorted(w for u, w in self.arcs if u == v)


def find_center(inst: Instance) -> int:
    if inst.network.kind not in (STAR, PATH) or (inst.network.kind == PATH and inst.n > 2):
        raise NotAStar("network is not a star")
    return star_center(inst)


def _relabel(inst: Instance, holder: int, center: int) -> tuple[Instance, list[int]]:
    """Put ``holder`` first and ``center`` last; objects follow their initial holders."""
    order = [holder] + [a for a in range(1, inst.n + 1) if a not in (holder, center)] + [center]
    sub, _ = restrict(inst, order)
    sub = Instance(sub.n, Network.star(sub.n), sub.prefs, None, sub.values,
                   sub.labels, sub.object_labels)
    return sub, [0] + order


def prune(inst: Instance, k: int) -> tuple[Instance, list[int]]:
    """Drop leaves that can never help deliver o_1 to ``k``.

    Returns the reduced instance and the map from its agents to the input's
    agents (index 0 unused).  Agents 1, ``k`` and the center are kept.
    """
    n = inst.n
    r = inst.rank[n]
    keep = [1] + [i for i in range(2, n) if i == k or not (r[i] < r[1] or r[n] < r[i])]
    keep.append(n)
    if len(keep) == n:
        return inst, list(range(n + 1))
    sub, _ = restrict(inst, keep)
    sub = Instance(sub.n, Network.star(sub.n), sub.prefs, None, sub.values,
                   sub.labels, sub.object_labels)
    return sub, [0] + keep


def quick_reject(inst: Instance, k: int) -> bool:
    """True when o_1 certainly cannot reach ``k`` (instance already pruned)."""
    n = inst.n
    rk, rn = inst.rank[k], inst.rank[n]
    if rk[k] < rk[1] or rn[n] < rn[1]:
        return True
    return k != n and rn[1] < rn[k]


def build_aux(inst: Instance, k: int) -> AuxDigraph:
    n = inst.n
    rank = inst.rank
    rn = rank[n]
    arcs = set()
    for i in range(1, n + 1):
        for j in range(1, n):
            if j == i or j == k:
                continue
            # center holds o_i, leaf j still holds o_j
            if rank[j][i] <= rank[j][j] and rn[j] <= rn[i]:
                arcs.add((i, j))
    if k != n:
        rk = rank[k]
        for i in range(2, n + 1):
            if i == k:
                continue
            if rk[1] <= rk[i] <= rk[k] and rn[k] <= rn[i] <= rn[1]:
                arcs.add((i, k))
    return AuxDigraph(n, frozenset(arcs))


def find_path(g: AuxDigraph, src: int, dst: int) -> Optional[list[int]]:
    """Depth-first search; neighbors visited in increasing order."""
    succ = {v: g.successors(v) for v in range(1, g.n + 1)}
    parent = {src: None}
    stack = [(src, iter(succ[src]))]
    while stack:
        v, it = stack[-1]
        w = next(it, None)
        if w is None:
            stack.pop()
            continue
        if w in parent:
            continue
        parent[w] = v
        if w == dst:
            path = [w]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path[::-1]
        stack.append((w, iter(succ[w])))
    return None


def solve(inst: Instance, k: int, obj: int) -> Optional[list[Swap]]:
    """Swap sequence giving ``obj`` to agent ``k``, or ``None`` if unreachable."""
    check_instance(inst)
    center = find_center(inst)
    holder = inst.endowment.holder(obj)
    if holder == k:
        return []
    if holder == center:
        rk, rc = inst.rank[k], inst.rank[center]
        ok = rk[obj] <= rk[inst.endowment[k]] and rc[inst.endowment[k]] <= rc[obj]
        return [(center, k)] if ok else None

    work, to_orig = _relabel(inst, holder, center)
    kk = to_orig.index(k)
    pruned, to_work = prune(work, kk)
    kp = to_work.index(kk)
    if quick_reject(pruned, kp):
        return None
    n = pruned.n
    path = find_path(build_aux(pruned, kp), n, 1)
    if path is None:
        return None
    local = [(n, v) for v in path[1:]]
    if kp != n:
        local.append((n, kp))
    seq = [(to_orig[to_work[a]], to_orig[to_work[b]]) for a, b in local]
    if verify_sequence(inst, seq)[k] != obj:
        raise AssertionError("star solver produced a certificate that misses the target")
    return seq
