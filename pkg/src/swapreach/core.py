"""Housing-market instances, rational swaps and certificate replay.

Agents and objects are both numbered ``1..n``.  Object ``o_i`` is the integer
``i``.  An assignment is stored as a tuple ``held`` where ``held[i - 1]`` is
the object of agent ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

PATH = "path"
STAR = "star"
GENERAL = "general"
NETWORK_KINDS = (PATH, STAR, GENERAL)

Swap = tuple[int, int]
SwapSequence = list[Swap]


class SwapError(Exception):
    """Base class for errors raised by this package."""


class InvalidInstance(SwapError):
    def __init__(self, diagnostics: Sequence[str]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


class NotNeighbors(SwapError):
    def __init__(self, i: int, j: int, step: Optional[int] = None):
        self.i, self.j, self.step = i, j, step
        where = "" if step is None else f"step {step}: "
        super().__init__(f"{where}agents {i} and {j} are not neighbors")


class NotRational(SwapError):
    def __init__(self, step: int, i: int, j: int, before: tuple[int, int], after: tuple[int, int]):
        self.step, self.i, self.j = step, i, j
        self.before, self.after = before, after
        super().__init__(
            f"step {step}: swap ({i},{j}) is not rational "
            f"(agent {i}: o{before[0]} -> o{after[0]}, agent {j}: o{before[1]} -> o{after[1]})"
        )


class MissingValues(SwapError):
    pass


class NotAPath(SwapError):
    pass


class NotAStar(SwapError):
    pass


class NotStrict(SwapError):
    pass


@dataclass(frozen=True)
class Network:
    kind: str
    edges: frozenset[frozenset[int]]

    @classmethod
    def from_pairs(cls, kind: str, pairs: Iterable[Sequence[int]]) -> "Network":
        return cls(kind, frozenset(frozenset((int(a), int(b))) for a, b in pairs))

    @classmethod
    def path(cls, n: int) -> "Network":
        return cls.from_pairs(PATH, [(i, i + 1) for i in range(1, n)])

    @classmethod
    def star(cls, n: int, center: Optional[int] = None) -> "Network":
        c = n if center is None else center
        return cls.from_pairs(STAR, [(c, i) for i in range(1, n + 1) if i != c])

    def has_edge(self, i: int, j: int) -> bool:
        return frozenset((i, j)) in self.edges

    def sorted_edges(self) -> list[Swap]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)


@dataclass(frozen=True)
class Assignment:
    held: tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> "Assignment":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.held)

    def __getitem__(self, agent: int) -> int:
        return self.held[agent - 1]

    @cached_property
    def _inverse(self) -> tuple[int, ...]:
        inv = [0] * (len(self.held) + 1)
        for agent, obj in enumerate(self.held, start=1):
            inv[obj] = agent
        return tuple(inv)

    def holder(self, obj: int) -> int:
        return self._inverse[obj]

    def __repr__(self) -> str:
        return "(" + ",".join(f"o{o}" for o in self.held) + ")"


QUERY_KINDS = ("object-reachability", "pareto-frontier", "max-welfare")


@dataclass(frozen=True)
class Query:
    kind: str = "object-reachability"
    agent: Optional[int] = None
    object: Optional[int] = None
    threshold: Optional[int] = None


@dataclass(frozen=True)
class Instance:
    """A housing market on a social network.

    ``prefs[i - 1]`` is the tier list of agent ``i``: a tuple of tiers, each a
    tuple of objects, best tier first.  ``values[i - 1][o - 1]`` is agent
    ``i``'s integer value for object ``o`` when present.  ``labels`` and
    ``object_labels`` are optional display names.
    """

    n: int
    network: Network
    prefs: tuple[tuple[tuple[int, ...], ...], ...]
    endowment: Assignment = None  # type: ignore[assignment]
    values: Optional[tuple[tuple[int, ...], ...]] = None
    labels: Optional[tuple[str, ...]] = None
    object_labels: Optional[tuple[str, ...]] = None
    query: Optional[Query] = field(default=None, compare=False)

    def __post_init__(self):
        if self.endowment is None:
            object.__setattr__(self, "endowment", Assignment.identity(self.n))
        elif not isinstance(self.endowment, Assignment):
            object.__setattr__(self, "endowment", Assignment(tuple(self.endowment)))
        prefs = tuple(tuple(tuple(t) for t in agent) for agent in self.prefs)
        object.__setattr__(self, "prefs", prefs)
        if self.values is not None:
            object.__setattr__(self, "values", tuple(tuple(row) for row in self.values))

    @cached_property
    def rank(self) -> tuple[tuple[int, ...], ...]:
        """``rank[i][o]`` is the tier index (0 = best) of object ``o`` for agent ``i``.

        Index 0 of both axes is padding so lookups stay 1-based.
        """
        rows = [(0,) * (self.n + 1)]
        for tiers in self.prefs:
            row = [0] * (self.n + 1)
            for t, tier in enumerate(tiers):
                for o in tier:
                    row[o] = t
            rows.append(tuple(row))
        return tuple(rows)

    @property
    def is_strict(self) -> bool:
        return all(len(t) == 1 for tiers in self.prefs for t in tiers)

    def prefers(self, agent: int, a: int, b: int) -> bool:
        """``a`` strictly better than ``b`` for ``agent``."""
        r = self.rank[agent]
        return r[a] < r[b]

    def weakly_prefers(self, agent: int, a: int, b: int) -> bool:
        r = self.rank[agent]
        return r[a] <= r[b]

    def label(self, agent: int) -> str:
        return self.labels[agent - 1] if self.labels else str(agent)

    def object_label(self, obj: int) -> str:
        return self.object_labels[obj - 1] if self.object_labels else f"o{obj}"

    def with_query(self, query: Optional[Query]) -> "Instance":
        return Instance(self.n, self.network, self.prefs, self.endowment, self.values,
                        self.labels, self.object_labels, query)


def strict_instance(orders: Sequence[Sequence[int]], kind: str = PATH, **kw) -> Instance:
    """Build an instance from complete strict orders (best first)."""
    n = len(orders)
    network = kw.pop("network", None) or (Network.star(n) if kind == STAR else Network.path(n))
    prefs = tuple(tuple((o,) for o in order) for order in orders)
    return Instance(n, network, prefs, **kw)


def complete_order(n: int, listed: Sequence[int]) -> list[int]:
    """Extend a partial best-first list with the missing objects in index order."""
    seen = set(listed)
    return list(listed) + [o for o in range(1, n + 1) if o not in seen]


def validate_instance(inst: Instance) -> list[str]:
    """Return every invariant violation found; an empty list means valid."""
    diags: list[str] = []
    n = inst.n
    if n < 1:
        return ["n must be at least 1"]
    agents = set(range(1, n + 1))

    for e in inst.network.edges:
        pair = sorted(e)
        if len(pair) != 2:
            diags.append(f"edge {pair}: self loop")
        elif not set(pair) <= agents:
            diags.append(f"edge {pair}: vertex out of range 1..{n}")
    kind = inst.network.kind
    if kind not in NETWORK_KINDS:
        diags.append(f"unknown network kind {kind!r}")
    elif kind == PATH:
        if inst.network.edges != Network.path(n).edges:
            diags.append("path edge set mismatch")
    elif kind == STAR and n >= 2:
        if _star_center(inst.network, n) is None:
            diags.append("star edge set mismatch")

    held = inst.endowment.held
    if len(held) != n or set(held) != agents:
        diags.append("endowment is not a bijection onto o1..o%d" % n)

    if len(inst.prefs) != n:
        diags.append(f"expected {n} preference lists, got {len(inst.prefs)}")
    for i, tiers in enumerate(inst.prefs, start=1):
        flat = [o for t in tiers for o in t]
        if any(len(t) == 0 for t in tiers):
            diags.append(f"agent {i}: empty tier")
        if len(flat) != len(set(flat)):
            diags.append(f"agent {i}: preference repeats an object")
        if set(flat) - agents:
            diags.append(f"agent {i}: preference names unknown objects {sorted(set(flat) - agents)}")
        missing = agents - set(flat)
        if missing:
            diags.append(f"agent {i}: preference incomplete, missing {sorted(missing)}")

    if inst.values is not None:
        if len(inst.values) != n or any(len(row) != n for row in inst.values):
            diags.append("values must be an n x n matrix")
        elif not diags:
            for i in range(1, n + 1):
                row = inst.values[i - 1]
                r = inst.rank[i]
                for a in range(1, n + 1):
                    for b in range(a + 1, n + 1):
                        if (row[a - 1] > row[b - 1]) != (r[a] < r[b]) or \
                                (row[a - 1] == row[b - 1]) != (r[a] == r[b]):
                            diags.append(f"agent {i}: values disagree with tiers on o{a}, o{b}")
                            break
                    else:
                        continue
                    break

    if inst.query is not None and inst.query.kind not in QUERY_KINDS:
        diags.append(f"unknown query kind {inst.query.kind!r}")
    if inst.query is not None and inst.query.kind == "object-reachability":
        q = inst.query
        if q.agent not in agents:
            diags.append(f"query agent {q.agent} out of range")
        if q.object not in agents:
            diags.append(f"query object {q.object} out of range")
    return diags


def check_instance(inst: Instance) -> Instance:
    diags = validate_instance(inst)
    if diags:
        raise InvalidInstance(diags)
    return inst


def _star_center(network: Network, n: int) -> Optional[int]:
    if n == 1:
        return 1
    if len(network.edges) != n - 1:
        return None
    if n == 2:
        return 2
    for v in range(1, n + 1):
        if network.degree(v) == n - 1:
            return v
    return None


def is_rational_swap(inst: Instance, a: Assignment, i: int, j: int) -> bool:
    """Both agents weakly gain by exchanging their current objects."""
    if not inst.network.has_edge(i, j):
        raise NotNeighbors(i, j)
    oi, oj = a[i], a[j]
    ri, rj = inst.rank[i], inst.rank[j]
    return ri[oj] <= ri[oi] and rj[oi] <= rj[oj]


def apply_swap(a: Assignment, i: int, j: int) -> Assignment:
    held = list(a.held)
    held[i - 1], held[j - 1] = held[j - 1], held[i - 1]
    return Assignment(tuple(held))


def replay(inst: Instance, seq: Iterable[Swap], verbose: bool = False) -> list[Assignment]:
    """Replay ``seq`` from the endowment and return every intermediate assignment.

    Raises on the first illegal step.  With ``verbose`` the error message
    carries the full trail of assignments up to the failure.
    """
    trail = [inst.endowment]
    cur = inst.endowment
    for step, (i, j) in enumerate(seq):
        if not inst.network.has_edge(i, j):
            raise NotNeighbors(i, j, step)
        if not is_rational_swap(inst, cur, i, j):
            err = NotRational(step, i, j, (cur[i], cur[j]), (cur[j], cur[i]))
            if verbose:
                err.args = (err.args[0] + "\n" + "\n".join(map(repr, trail)),)
            raise err
        cur = apply_swap(cur, i, j)
        trail.append(cur)
    return trail


def verify_sequence(inst: Instance, seq: Iterable[Swap], verbose: bool = False) -> Assignment:
    return replay(inst, seq, verbose)[-1]


def welfare(inst: Instance, a: Assignment) -> int:
    if inst.values is None:
        raise MissingValues("instance carries no value function")
    return sum(inst.values[i - 1][a[i] - 1] for i in range(1, inst.n + 1))


def tier_rank_values(inst: Instance) -> tuple[tuple[int, ...], ...]:
    """Canonical valuation: with ``T`` tiers, tier ``t`` (0-based) is worth ``T - 1 - t``."""
    rows = []
    for i in range(1, inst.n + 1):
        top = len(inst.prefs[i - 1]) - 1
        rows.append(tuple(top - inst.rank[i][o] for o in range(1, inst.n + 1)))
    return tuple(rows)


def pareto_dominates(inst: Instance, a: Assignment, b: Assignment) -> bool:
    strict = False
    for i in range(1, inst.n + 1):
        ra, rb = inst.rank[i][a[i]], inst.rank[i][b[i]]
        if ra > rb:
            return False
        if ra < rb:
            strict = True
    return strict


def restrict(inst: Instance, agents: Sequence[int]) -> tuple[Instance, list[int]]:
    """Sub-instance on ``agents`` (in the given order) and the objects they hold.

    Agents are renumbered ``1..len(agents)`` and the object held by new agent
    ``i`` becomes ``o_i``, so the sub-instance has the identity endowment.
    Returns the sub-instance and the list mapping new agent index to old.
    The network of the result is a path or star built over the new labels
    and must be supplied by the caller when neither fits; see callers.
    """
    old_obj = [inst.endowment[a] for a in agents]
    new_of_obj = {o: k for k, o in enumerate(old_obj, start=1)}
    prefs = []
    for a in agents:
        tiers = []
        for tier in inst.prefs[a - 1]:
            t = tuple(sorted(new_of_obj[o] for o in tier if o in new_of_obj))
            if t:
                tiers.append(t)
        prefs.append(tuple(tiers))
    values = None
    if inst.values is not None:
        values = tuple(tuple(inst.values[a - 1][o - 1] for o in old_obj) for a in agents)
    m = len(agents)
    index = {a: k for k, a in enumerate(agents, start=1)}
    edges = [(index[x], index[y]) for x, y in inst.network.sorted_edges()
             if x in index and y in index]
    network = Network.from_pairs(inst.network.kind, edges)
    labels = tuple(inst.label(a) for a in agents) if inst.labels else None
    olabels = tuple(inst.object_label(o) for o in old_obj) if inst.object_labels else None
    return Instance(m, network, tuple(prefs), None, values, labels, olabels), list(agents)


def mirror(inst: Instance, query: Optional[tuple[int, int]] = None):
    """Reverse a path: agent ``i`` becomes ``n+1-i`` and object ``o_i`` becomes ``o_{n+1-i}``.

    Returns ``(mirrored, mirrored_query)``; the query is an ``(agent, object)``
    pair or ``None``.
    """
    if inst.network.kind != PATH:
        raise NotAPath("mirror needs a path network")
    n = inst.n
    flip = lambda x: n + 1 - x  # noqa: E731
    prefs = tuple(
        tuple(tuple(sorted(flip(o) for o in t)) for t in inst.prefs[flip(i) - 1])
        for i in range(1, n + 1)
    )
    held = tuple(flip(inst.endowment[flip(i)]) for i in range(1, n + 1))
    values = None
    if inst.values is not None:
        values = tuple(tuple(inst.values[flip(i) - 1][flip(o) - 1] for o in range(1, n + 1))
                       for i in range(1, n + 1))
    labels = tuple(reversed(inst.labels)) if inst.labels else None
    olabels = tuple(reversed(inst.object_labels)) if inst.object_labels else None
    q = None
    if inst.query is not None and inst.query.agent is not None:
        q = Query(inst.query.kind, flip(inst.query.agent), flip(inst.query.object),
                  inst.query.threshold)
    out = Instance(n, inst.network, prefs, Assignment(held), values, labels, olabels, q)
    mq = None if query is None else (flip(query[0]), flip(query[1]))
    return out, mq


def normalize_endowment(inst: Instance) -> tuple[Instance, list[int]]:
    """Rename objects so that agent ``i`` holds ``o_i`` initially.

    Returns the renamed instance and ``old_of_new`` where ``old_of_new[i]`` is
    the original name of new object ``i`` (index 0 unused).
    """
    if inst.endowment.held == tuple(range(1, inst.n + 1)):
        return inst, list(range(inst.n + 1))
    sub, _ = restrict(inst, list(range(1, inst.n + 1)))
    sub = Instance(sub.n, inst.network, sub.prefs, None, sub.values, sub.labels,
                   sub.object_labels)
    return sub, [0] + list(inst.endowment.held)


def star_center(inst: Instance) -> int:
    if inst.network.kind == PATH and inst.n <= 2:
        return inst.n
    c = _star_center(inst.network, inst.n)
    if c is None:
        raise NotAStar("network is not a star")
    return c


def object_tracks(inst: Instance, seq: Sequence[Swap]) -> dict[int, list[int]]:
    """Positions occupied by each object over a replayed sequence."""
    trail = replay(inst, seq)
    return {o: [a.holder(o) for a in trail] for o in range(1, inst.n + 1)}
