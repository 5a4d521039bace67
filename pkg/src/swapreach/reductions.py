"""Hardness gadgets built as concrete instances, plus brute-force checkers.

Two constructions:

* ``sat_to_weak_path`` turns a 2P1N formula (each variable occurs twice
  positively, once negatively) into a weak-preference path where a fixed
  clause agent can obtain object ``t`` iff the formula is satisfiable.
* ``digraph_to_star_welfare`` turns a digraph with start vertex ``s`` into a
  valued star whose best reachable welfare hits ``3|V|+|A|-1`` iff there is a
  Hamiltonian path from ``s``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import (
    Assignment, Instance, Network, Query, Swap, SwapError, apply_swap, is_rational_swap,
    verify_sequence,
)


class Invalid2P1N(SwapError):
    def __init__(self, diagnostics: Sequence[str]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


class ModelDoesNotSatisfy(SwapError):
    pass


class TooLarge(SwapError):
    pass


class StartHasIncomingArc(SwapError):
    pass


class DeliveryFailed(SwapError):
    pass


# --------------------------------------------------------------------- 2P1N


@dataclass(frozen=True)
class CnfFormula2P1N:
    """Clauses are tuples of signed variable indices (``-v`` is negated)."""

    n_vars: int
    clauses: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, n_vars: int, clauses: Sequence[Sequence[int]]) -> "CnfFormula2P1N":
        return cls(n_vars, tuple(tuple(c) for c in clauses))

    @property
    def m(self) -> int:
        return len(self.clauses)

    def occurrences(self, v: int) -> tuple[list[int], list[int]]:
        """1-based clause indices of the positive and negative occurrences of ``v``."""
        pos, neg = [], []
        for ci, clause in enumerate(self.clauses, start=1):
            for lit in clause:
                if lit == v:
                    pos.append(ci)
                elif lit == -v:
                    neg.append(ci)
        return pos, neg


def validate_2p1n(f: CnfFormula2P1N) -> list[str]:
    diags = []
    if f.n_vars < 1:
        diags.append("formula needs at least one variable")
    for ci, clause in enumerate(f.clauses, start=1):
        if not clause:
            diags.append(f"clause {ci} is empty")
        for lit in clause:
            if lit == 0 or abs(lit) > f.n_vars:
                diags.append(f"clause {ci}: literal {lit} out of range")
    for v in range(1, f.n_vars + 1):
        pos, neg = f.occurrences(v)
        if len(pos) != 2 or len(neg) != 1:
            diags.append(f"variable {v}: {len(pos)} positive and {len(neg)} negative occurrences "
                         "(need 2 and 1)")
    return diags


def brute_sat(f: CnfFormula2P1N) -> bool:
    return brute_sat_model(f) is not None


def brute_sat_model(f: CnfFormula2P1N) -> Optional[tuple[bool, ...]]:
    if f.n_vars > 20:
        raise TooLarge(f"{f.n_vars} variables exceeds the brute-force limit of 20")
    for bits in itertools.product((True, False), repeat=f.n_vars):
        if satisfies(f, bits):
            return bits
    return None


def satisfies(f: CnfFormula2P1N, model: Sequence[bool]) -> bool:
    return all(any(model[abs(l) - 1] == (l > 0) for l in clause) for clause in f.clauses)


@dataclass(frozen=True)
class PathGadget:
    """Agent indices of the weak-path gadget (agent ``x`` initially holds object ``x``)."""

    n_vars: int
    m: int

    @property
    def size(self) -> int:
        return 6 * self.n_vars + self.m + 1

    def block(self, i: int) -> int:
        return 6 * (self.n_vars - i) + 1

    def xbar(self, i: int) -> int:
        return self.block(i)

    def xp(self, i: int) -> int:
        return self.block(i) + 1

    def xq(self, i: int) -> int:
        return self.block(i) + 2

    def a(self, i: int, level: int) -> int:
        return self.block(i) + 6 - level

    def clause(self, j: int) -> int:
        return 6 * self.n_vars + self.m + 1 - j

    @property
    def t(self) -> int:
        return self.size


def _literal_objects(f: CnfFormula2P1N, g: PathGadget) -> dict[int, list[int]]:
    """Per clause, the objects standing for its literals (one per occurrence)."""
    L: dict[int, list[int]] = {j: [] for j in range(1, f.m + 1)}
    for v in range(1, f.n_vars + 1):
        (p, q), (nn,) = f.occurrences(v)
        L[p].append(g.xp(v))
        L[q].append(g.xq(v))
        L[nn].append(g.xbar(v))
    return {j: sorted(objs) for j, objs in L.items()}


def _tiers_with_rest(size: int, tiers: list[list[int]]) -> tuple[tuple[int, ...], ...]:
    listed = set()
    out = []
    for t in tiers:
        t = [o for o in t if o not in listed]
        if t:
            listed.update(t)
            out.append(tuple(sorted(t)))
    rest = tuple(o for o in range(1, size + 1) if o not in listed)
    if rest:
        out.append(rest)
    return tuple(out)


def sat_to_weak_path(f: CnfFormula2P1N) -> tuple[Instance, tuple[int, int]]:
    """Build the gadget and the query ``(agent C_m, object t)``."""
    diags = validate_2p1n(f)
    if diags:
        raise Invalid2P1N(diags)
    n, m = f.n_vars, f.m
    g = PathGadget(n, m)
    size = g.size
    L = _literal_objects(f, g)
    prefs: list = [None] * (size + 1)

    prefs[g.t] = [L[1], [g.t]]
    for i in range(1, m + 1):
        tiers = [L[i + 1], [g.t]] if i < m else [[g.t]]
        tiers.append(L[i])
        for s in range(1, i):
            tiers += [[g.clause(s)], L[i - s]]
        tiers.append([g.clause(i)])
        prefs[g.clause(i)] = tiers

    c_objs = [g.clause(j) for j in range(1, m + 1)]
    for i in range(1, n + 1):
        W = set(c_objs)
        W |= {g.xbar(j) for j in range(i + 1, n + 1)}
        W |= {g.xp(j) for j in range(1, n + 1) if j != i}
        W |= {g.xq(j) for j in range(i + 1, n + 1)}
        W |= {g.a(j, lv) for j in range(1, i) for lv in (1, 2, 3)}
        a1, a2, a3 = g.a(i, 1), g.a(i, 2), g.a(i, 3)
        ob, op, oq = g.xbar(i), g.xp(i), g.xq(i)
        prefs[ob] = [sorted(W | {a1, a2, a3, op, oq}), [ob]]
        prefs[oq] = [sorted(W | {a1, a2, a3, ob, op}), [oq]]
        prefs[op] = [sorted(W | {a1, a2, a3, oq, ob}), [op]]
        prefs[a1] = [sorted(W | {a1, a2, a3, op, oq, ob})]
        prefs[a2] = [sorted(W | {a1, a2, a3, op, oq, ob})]
        prefs[a3] = [sorted(W | {a1, a2, op, oq}), [ob], [a3]]

    labels, olabels = _path_gadget_labels(f, g)
    inst = Instance(size, Network.path(size),
                    tuple(_tiers_with_rest(size, prefs[x]) for x in range(1, size + 1)),
                    None, None, labels, olabels,
                    Query("object-reachability", g.clause(m), g.t))
    return inst, (g.clause(m), g.t)


def _path_gadget_labels(f: CnfFormula2P1N, g: PathGadget):
    labels = [""] * (g.size + 1)
    olabels = [""] * (g.size + 1)
    for v in range(1, f.n_vars + 1):
        (p, q), (nn,) = f.occurrences(v)
        for agent, a_name, o_name in (
            (g.xbar(v), f"Xbar_{v}^{nn}", f"obar_{v}^{nn}"),
            (g.xp(v), f"X_{v}^{p}", f"o_{v}^{p}"),
            (g.xq(v), f"X_{v}^{q}", f"o_{v}^{q}"),
            (g.a(v, 3), f"A_{v}^3", f"a_{v}^3"),
            (g.a(v, 2), f"A_{v}^2", f"a_{v}^2"),
            (g.a(v, 1), f"A_{v}^1", f"a_{v}^1"),
        ):
            labels[agent], olabels[agent] = a_name, o_name
    for j in range(1, g.m + 1):
        labels[g.clause(j)], olabels[g.clause(j)] = f"C_{j}", f"c_{j}"
    labels[g.t], olabels[g.t] = "T", "t"
    return tuple(labels[1:]), tuple(olabels[1:])


def block_swaps(g: PathGadget, i: int, value: bool) -> list[Swap]:
    """In-block moves parking the true objects of variable ``i``."""
    xb, xp, xq, a3, a2 = g.xbar(i), g.xp(i), g.xq(i), g.a(i, 3), g.a(i, 2)
    if value:
        # o^p ends at A^3, o^q at A^2
        return [(xq, a3), (a3, a2), (xp, xq), (xq, a3)]
    # obar ends at A^2
    return [(xb, xp), (xp, xq), (xq, a3), (a3, a2)]


def intended_sequence(f: CnfFormula2P1N, model: Sequence[bool]) -> list[Swap]:
    """A verified certificate that ``C_m`` obtains ``t`` under a satisfying ``model``.

    Steps: park the true objects of each block, deliver one true object to
    each clause agent (lowest clause first), then pass ``t`` down the clause
    chain.  Objects blocking a delivery are shuffled locally ahead of the
    moving object; the search for that shuffle is confined to a few agents.
    """
    inst, (goal_agent, t) = sat_to_weak_path(f)
    if len(model) != f.n_vars or not satisfies(f, model):
        raise ModelDoesNotSatisfy("model does not satisfy the formula")
    g = PathGadget(f.n_vars, f.m)

    seq: list[Swap] = []
    cur = inst.endowment
    for i in range(f.n_vars, 0, -1):
        for s in block_swaps(g, i, bool(model[i - 1])):
            cur = _step(inst, cur, s, seq)

    # the object standing for a true literal in each clause
    true_obj: dict[int, int] = {}
    for v in range(1, f.n_vars + 1):
        (p, q), (nn,) = f.occurrences(v)
        if model[v - 1]:
            true_obj.setdefault(p, g.xp(v))
            true_obj.setdefault(q, g.xq(v))
        else:
            true_obj.setdefault(nn, g.xbar(v))
    for j in range(1, f.m + 1):
        if j not in true_obj:
            for lit in f.clauses[j - 1]:
                v = abs(lit)
                if model[v - 1] == (lit > 0):
                    (p, q), (nn,) = f.occurrences(v)
                    true_obj[j] = g.xbar(v) if lit < 0 else (g.xp(v) if j == p else g.xq(v))
                    break

    delivered = {g.t}
    for j in range(1, f.m + 1):
        dest = g.clause(j)
        cur = _deliver(inst, cur, true_obj[j], dest, delivered, seq)
        delivered.add(dest)

    for j in range(1, f.m + 1):
        cur = _step(inst, cur, (g.clause(j), g.clause(j - 1) if j > 1 else g.t), seq)
    seq = [(min(a, b), max(a, b)) for a, b in seq]
    if verify_sequence(inst, seq)[goal_agent] != t:
        raise DeliveryFailed("constructed sequence does not end with t at the last clause agent")
    return seq


def _step(inst: Instance, cur: Assignment, swap: Swap, seq: list[Swap]) -> Assignment:
    i, j = min(swap), max(swap)
    if not is_rational_swap(inst, cur, i, j):
        raise DeliveryFailed(f"swap ({inst.label(i)},{inst.label(j)}) is not rational")
    seq.append((i, j))
    return apply_swap(cur, i, j)


def _deliver(inst: Instance, cur: Assignment, obj: int, dest: int, frozen: set[int],
             seq: list[Swap], window: int = 6) -> Assignment:
    """Walk ``obj`` rightwards to ``dest``, clearing obstacles just ahead of it."""
    pos = cur.holder(obj)
    if pos > dest:
        raise DeliveryFailed(f"{inst.object_label(obj)} is already right of its clause agent")
    while pos < dest:
        if not is_rational_swap(inst, cur, pos, pos + 1):
            hi = min(dest, pos + window)
            fix = _local_repair(inst, cur, pos, hi, frozen)
            if fix is None:
                raise DeliveryFailed(
                    f"cannot move {inst.object_label(obj)} past {inst.label(pos + 1)}")
            for s in fix:
                cur = _step(inst, cur, s, seq)
        cur = _step(inst, cur, (pos, pos + 1), seq)
        pos += 1
    return cur


def _local_repair(inst: Instance, cur: Assignment, pos: int, hi: int,
                  frozen: set[int]) -> Optional[list[Swap]]:
    """Shortest run of rational swaps among agents pos+1..hi enabling (pos, pos+1)."""
    agents = [a for a in range(pos + 1, hi + 1) if a not in frozen]
    edges = [(a, a + 1) for a in agents if a + 1 in agents]
    start = cur
    parents = {start.held: None}
    queue = deque([start])
    while queue:
        a = queue.popleft()
        if is_rational_swap(inst, a, pos, pos + 1):
            out = []
            key = a.held
            while parents[key] is not None:
                key, s = parents[key]
                out.append(s)
            return out[::-1]
        for i, j in edges:
            if is_rational_swap(inst, a, i, j):
                b = apply_swap(a, i, j)
                if b.held not in parents:
                    parents[b.held] = (a.held, (i, j))
                    queue.append(b)
    return None


# ------------------------------------------------------------ Hamiltonian


@dataclass(frozen=True)
class Digraph:
    vertices: tuple[str, ...]
    arcs: tuple[tuple[str, str], ...]
    start: str

    @classmethod
    def of(cls, vertices: Sequence[str], arcs: Sequence[Sequence[str]], start: str) -> "Digraph":
        return cls(tuple(vertices), tuple((u, v) for u, v in arcs), start)

    def without_arc(self, u: str, v: str) -> "Digraph":
        return Digraph(self.vertices, tuple(e for e in self.arcs if e != (u, v)), self.start)


def validate_digraph(d: Digraph) -> list[str]:
    diags = []
    vs = set(d.vertices)
    if len(vs) != len(d.vertices):
        diags.append("repeated vertex name")
    if d.start not in vs:
        diags.append(f"start vertex {d.start!r} is not a vertex")
    for u, v in d.arcs:
        if u not in vs or v not in vs:
            diags.append(f"arc {u}->{v} uses an unknown vertex")
        if u == v:
            diags.append(f"arc {u}->{v} is a loop")
    if len(set(d.arcs)) != len(d.arcs):
        diags.append("repeated arc")
    return diags


def star_welfare_order(d: Digraph) -> list[str]:
    """Agent names: center, start vertex, remaining vertices, then arcs."""
    rest = [v for v in d.vertices if v != d.start]
    return ["c", d.start, *rest, *(f"{u}{v}" for u, v in d.arcs)]


def digraph_to_star_welfare(d: Digraph) -> tuple[Instance, int]:
    """Valued star instance (center is agent 1) and its welfare threshold."""
    diags = validate_digraph(d)
    if diags:
        raise ValueError("; ".join(diags))
    if any(v == d.start for _, v in d.arcs):
        raise StartHasIncomingArc(f"start vertex {d.start!r} has an incoming arc")
    rest = [v for v in d.vertices if v != d.start]
    vert_idx = {v: i for i, v in enumerate([d.start, *rest], start=2)}
    arc_idx = {e: i for i, e in enumerate(d.arcs, start=2 + len(d.vertices))}
    size = 1 + len(d.vertices) + len(d.arcs)
    values = [[0] * size for _ in range(size)]

    s = vert_idx[d.start]
    values[s - 1][s - 1] = 1
    values[s - 1][0] = 2
    for v, a in vert_idx.items():
        if v == d.start:
            continue
        values[a - 1][a - 1] = 1
        for e, x in arc_idx.items():
            if e[1] == v:
                values[a - 1][x - 1] = 2
    for (u, _), x in arc_idx.items():
        values[x - 1][x - 1] = 1
        values[x - 1][vert_idx[u] - 1] = 2

    prefs = []
    for row in values:
        levels = sorted(set(row), reverse=True)
        prefs.append(tuple(tuple(o for o in range(1, size + 1) if row[o - 1] == lv)
                           for lv in levels))
    labels = ["a_c"] + [f"a_{v}" for v in [d.start, *rest]] + [f"a_{u}{v}" for u, v in d.arcs]
    olabels = ["o_c"] + [f"o_{v}" for v in [d.start, *rest]] + [f"o_{u}{v}" for u, v in d.arcs]
    inst = Instance(size, Network.star(size, 1), tuple(prefs), None,
                    tuple(tuple(r) for r in values), tuple(labels), tuple(olabels),
                    Query("max-welfare", threshold=3 * len(d.vertices) + len(d.arcs) - 1))
    return inst, inst.query.threshold


def brute_ham_path(d: Digraph) -> bool:
    return brute_ham_path_witness(d) is not None


def brute_ham_path_witness(d: Digraph) -> Optional[list[str]]:
    if len(d.vertices) > 10:
        raise TooLarge(f"{len(d.vertices)} vertices exceeds the brute-force limit of 10")
    arcs = set(d.arcs)
    rest = [v for v in d.vertices if v != d.start]
    for perm in itertools.permutations(rest):
        path = [d.start, *perm]
        if all((path[x], path[x + 1]) in arcs for x in range(len(path) - 1)):
            return path
    return None
