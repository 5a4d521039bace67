"""Object reachability on a path with strict preferences.

Pipeline for a query "can agent k obtain o_1" (after trimming and mirroring):
for each last agent n' = k..n, keep agents 1..n', ask for an assignment in
which o_1 ends at k and o_{n'} ends at k-1, and decide that with 2-SAT.
Every object other than o_1 and o_{n'} has at most one admissible left
destination and one admissible right destination, so a boolean per object
(``True`` = right) describes the whole final assignment.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import twosat
from .core import (
    PATH, Assignment, Instance, Network, NotAPath, NotStrict, Swap, SwapError,
    apply_swap, check_instance, mirror, normalize_endowment, restrict, verify_sequence,
)


class InvalidConstraint(SwapError):
    pass


class NoInstance(SwapError):
    """Raised when a constrained sub-instance cannot be satisfied."""


@dataclass
class ConstrainedInstance:
    """Agents 1..n' on a path with identity endowment, o_1 -> k and o_{n'} -> k-1."""

    base: Instance
    k: int
    candidates: dict[int, tuple[Optional[int], Optional[int]]] = field(default_factory=dict)
    position_sets: dict[int, set[int]] = field(default_factory=dict)
    initial_sets: dict[int, set[int]] = field(default_factory=dict)

    @property
    def n_prime(self) -> int:
        return self.base.n

    def better(self, agent: int, a: int, b: int) -> bool:
        r = self.base.rank[agent]
        return r[a] < r[b]

    def literal(self, obj: int, agent: int) -> int:
        """2-SAT literal meaning "object ``obj`` ends at ``agent``"."""
        left, right = self.candidates[obj]
        if agent == right:
            return obj
        if agent == left:
            return -obj
        raise ValueError(f"o{obj} has no candidate at agent {agent}")


def _require_path(inst: Instance) -> None:
    if inst.network.kind != PATH or inst.network.edges != Network.path(inst.n).edges:
        raise NotAPath("instance network is not a path 1-2-...-n")


def _require_strict(inst: Instance) -> None:
    if not inst.is_strict:
        raise NotStrict("path solver needs strict preferences")


def trim_left(inst: Instance, k: int, target: int) -> tuple[Instance, int, list[int]]:
    """Drop agents and objects left of the target's holder.

    Expects the identity endowment and ``target < k``.  Returns the trimmed
    instance (target renamed to o_1), the new index of ``k``, and the list
    mapping new agent index to old (index 0 unused).
    """
    if target == 1:
        return inst, k, list(range(inst.n + 1))
    agents = list(range(target, inst.n + 1))
    sub, _ = restrict(inst, agents)
    sub = Instance(sub.n, Network.path(sub.n), sub.prefs, None, sub.values,
                   sub.labels, sub.object_labels)
    return sub, k - target + 1, [0] + agents


def make_neat(inst: Instance, k: int, n_prime: int) -> ConstrainedInstance:
    if n_prime < k:
        raise InvalidConstraint(f"n'={n_prime} is smaller than k={k}")
    if n_prime > inst.n:
        raise InvalidConstraint(f"n'={n_prime} exceeds n={inst.n}")
    if n_prime == inst.n:
        return ConstrainedInstance(inst, k)
    sub, _ = restrict(inst, list(range(1, n_prime + 1)))
    sub = Instance(sub.n, Network.path(sub.n), sub.prefs, None, sub.values,
                   sub.labels, sub.object_labels)
    return ConstrainedInstance(sub, k)


def compute_candidates(ci: ConstrainedInstance, i: int) -> tuple[Optional[int], Optional[int]]:
    """Left and right destination of ``o_i`` admissible in a compatible assignment."""
    n, k = ci.n_prime, ci.k
    if i == 1:
        return None, k
    if i == n:
        return k - 1, None
    better = ci.better
    first, last = 1, n
    if i < k:
        # Left: o_i must pass o_1 going right.  Agents c..i must prefer o_1,
        # agent c-1 must prefer o_i; o_i stops at c-1.
        left = None
        j = i
        while j >= 1 and better(j, first, i):
            j -= 1
        if j < i and j >= 1:
            left = j
        # Right: o_i must pass o_{n'} going left, beyond agent k.
        right = None
        j = k - 1
        while j <= n and better(j, last, i):
            j += 1
        if k + 1 <= j <= n:
            right = j
        return left, right

    # i >= k: the mirror image of the case above.
    right = None
    j = i
    while j <= n and better(j, last, i):
        j += 1
    if i < j <= n:
        right = j
    left = None
    j = k
    while j >= 1 and better(j, first, i):
        j -= 1
    if 1 <= j <= k - 2:
        left = j
    return left, right


def build_position_sets(ci: ConstrainedInstance) -> dict[int, set[int]]:
    """Fill candidates and the per-agent sets of possible objects, then prune.

    Raises :class:`NoInstance` when some agent is left without a possible object.
    """
    n, k = ci.n_prime, ci.k
    ci.candidates = {i: compute_candidates(ci, i) for i in range(1, n + 1)}
    sets: dict[int, set[int]] = {j: set() for j in range(1, n + 1)}
    sets[k - 1].add(n)
    sets[k].add(1)
    for i in range(2, n):
        left, right = ci.candidates[i]
        if left is None and right is None:
            ci.initial_sets = {j: set(s) for j, s in sets.items()}
            raise NoInstance(f"o{i} has no admissible destination")
        if left is not None:
            sets[left].add(i)
        if right is not None:
            sets[right].add(i)
    ci.initial_sets = {j: set(s) for j, s in sets.items()}

    changed = True
    while changed:
        changed = False
        for j in range(1, n + 1):
            if not sets[j]:
                ci.position_sets = sets
                raise NoInstance(f"agent {j} has no possible object")
        for j in range(1, n + 1):
            if len(sets[j]) != 1:
                continue
            (obj,) = sets[j]
            for other in range(1, n + 1):
                if other != j and obj in sets[other]:
                    sets[other].discard(obj)
                    changed = True
    ci.position_sets = sets
    return sets


def pair_compatible(ci: ConstrainedInstance, a: int, a_dest: int, b: int, b_dest: int) -> bool:
    """Can ``o_a`` end at ``a_dest`` and ``o_b`` at ``b_dest`` (with ``a < b``)?"""
    if a > b:
        a, a_dest, b, b_dest = b, b_dest, a, a_dest
    k = ci.k
    better = ci.better
    lo = max(min(a, a_dest), min(b, b_dest))
    hi = min(max(a, a_dest), max(b, b_dest))
    if lo > hi:
        return True
    a_right, b_right = a_dest > a, b_dest > b
    if a_right and b_right:
        return a_dest < b_dest and all(better(q, a, b) for q in range(lo, hi + 1))
    if not a_right and not b_right:
        return a_dest < b_dest and all(better(q, b, a) for q in range(lo, hi + 1))
    if a_right and not b_right:
        c = a_dest + b_dest - k + 1
        if not (lo <= c <= hi and c != a):
            return False
        return (all(better(q, b, a) for q in range(max(a, b_dest), c))
                and all(better(q, a, b) for q in range(c, min(a_dest, b) + 1)))
    # a moves left, b moves right: the intervals cannot meet since a < b.
    return True


def is_compatible(ci: ConstrainedInstance, assignment: Assignment) -> bool:
    """Every object moved and every pair of objects compatible."""
    n = ci.n_prime
    dest = {assignment[j]: j for j in range(1, n + 1)}
    if any(dest[i] == i for i in range(1, n + 1)):
        return False
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            if not pair_compatible(ci, a, dest[a], b, dest[b]):
                return False
    return True


def build_twosat(ci: ConstrainedInstance) -> twosat.TwoSatInstance:
    n = ci.n_prime
    sets = ci.position_sets
    ts = twosat.TwoSatInstance(n)
    seen: set[frozenset[int]] = set()

    def add(x: int, y: int) -> None:
        key = frozenset((x, y))
        if key not in seen:
            seen.add(key)
            ts.add(x, y)

    for j in range(1, n + 1):
        objs = sorted(sets[j])
        lits = [ci.literal(o, j) for o in objs]
        if len(lits) == 1:
            add(lits[0], lits[0])
        elif len(lits) == 2:
            add(lits[0], lits[1])
            add(-lits[0], -lits[1])
        else:
            raise NoInstance(f"agent {j} has {len(lits)} possible objects")

    for p in range(1, n + 1):
        for q in range(p + 1, n + 1):
            for a in sets[p]:
                for b in sets[q]:
                    if a != b and not pair_compatible(ci, a, p, b, q):
                        add(-ci.literal(a, p), -ci.literal(b, q))
    return ts


def assignment_from_model(ci: ConstrainedInstance, model: list[bool]) -> Assignment:
    n = ci.n_prime
    held = [0] * n
    for i in range(1, n + 1):
        left, right = ci.candidates[i]
        dest = right if model[i - 1] else left
        if dest is None or held[dest - 1]:
            raise NoInstance(f"model places o{i} nowhere or on an occupied agent")
        held[dest - 1] = i
    return Assignment(tuple(held))


def extract_sequence(ci: ConstrainedInstance, target: Assignment) -> list[Swap]:
    """Bring ``target(i)`` to agent ``i`` for i = 1..k-1 by adjacent swaps."""
    cur = ci.base.endowment
    seq: list[Swap] = []
    for i in range(1, ci.k):
        pos = cur.holder(target[i])
        while pos > i:
            seq.append((pos - 1, pos))
            cur = apply_swap(cur, pos - 1, pos)
            pos -= 1
    return seq


def solve_constrained(ci: ConstrainedInstance) -> Optional[list[Swap]]:
    try:
        build_position_sets(ci)
        ts = build_twosat(ci)
    except NoInstance:
        return None
    model = twosat.solve(ts)
    if model is None:
        return None
    target = assignment_from_model(ci, model)
    return extract_sequence(ci, target)


def solve(inst: Instance, k: int, obj: int) -> Optional[list[Swap]]:
    """Swap sequence giving ``obj`` to agent ``k``, or ``None`` if unreachable."""
    _require_path(inst)
    check_instance(inst)
    _require_strict(inst)
    if inst.endowment[k] == obj:
        return []

    k0 = k
    work, old_of_new = normalize_endowment(inst)
    new_of_old = {o: i for i, o in enumerate(old_of_new) if i}
    target = new_of_old[obj]
    agent_map = list(range(work.n + 1))  # work agent -> original agent
    mirrored = False
    if target > k:
        work, (k, target) = mirror(work, (k, target))
        mirrored = True
        n = work.n
        agent_map = [0] + [n + 1 - a for a in range(1, n + 1)]

    trimmed, kk, back = trim_left(work, k, target)
    seq = None
    for n_prime in range(kk, trimmed.n + 1):
        seq = solve_constrained(make_neat(trimmed, kk, n_prime))
        if seq is not None:
            break
    if seq is None:
        return None

    def orig(a: int) -> int:
        return agent_map[back[a]]

    out = []
    for x, y in seq:
        u, v = orig(x), orig(y)
        out.append((min(u, v), max(u, v)) if mirrored else (u, v))
    if verify_sequence(inst, out)[k0] != obj:
        raise AssertionError("path solver produced a certificate that misses the target")
    return out
