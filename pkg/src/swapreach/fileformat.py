"""Text formats: instances (canonical JSON), 2P1N formulas (DIMACS), digraphs.

Instance files are JSON with a fixed key order and one line per matrix row,
so normalized files round-trip byte for byte::

    {
      "n": 3,
      "network": {"kind": "path", "edges": [[1, 2], [2, 3]]},
      "preferences": [
        [[2], [1], [3]],
        ...
      ],
      "endowment": [1, 2, 3],
      "query": {"kind": "object-reachability", "agent": 3, "object": 1}
    }

Optional keys: ``endowment`` (identity when absent), ``values``, ``labels``,
``object_labels``, ``query``.  A query may carry ``threshold``.
"""

from __future__ import annotations

import json
from typing import Optional

from .core import Assignment, Instance, Network, Query, check_instance
from .reductions import CnfFormula2P1N, Digraph


class FormatError(ValueError):
    pass


def _dump(x) -> str:
    return json.dumps(x, separators=(", ", ": "))


def dumps_instance(inst: Instance) -> str:
    lines = ["{", f'  "n": {inst.n},']
    net = {"kind": inst.network.kind, "edges": [list(e) for e in inst.network.sorted_edges()]}
    lines.append(f'  "network": {_dump(net)},')
    lines.append('  "preferences": [')
    rows = [_dump([list(t) for t in tiers]) for tiers in inst.prefs]
    lines += [f"    {r}," for r in rows[:-1]] + [f"    {rows[-1]}"]
    lines.append("  ],")
    lines.append(f'  "endowment": {_dump(list(inst.endowment.held))},')
    if inst.values is not None:
        lines.append('  "values": [')
        rows = [_dump(list(r)) for r in inst.values]
        lines += [f"    {r}," for r in rows[:-1]] + [f"    {rows[-1]}"]
        lines.append("  ],")
    if inst.labels:
        lines.append(f'  "labels": {_dump(list(inst.labels))},')
    if inst.object_labels:
        lines.append(f'  "object_labels": {_dump(list(inst.object_labels))},')
    if inst.query is not None:
        q = {"kind": inst.query.kind}
        for key in ("agent", "object", "threshold"):
            val = getattr(inst.query, key)
            if val is not None:
                q[key] = val
        lines.append(f'  "query": {_dump(q)},')
    lines[-1] = lines[-1].rstrip(",")
    lines.append("}")
    return "\n".join(lines) + "\n"


def loads_instance(text: str, validate: bool = True) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"not valid JSON: {e}") from None
    try:
        n = int(doc["n"])
        net = Network.from_pairs(doc["network"]["kind"], doc["network"]["edges"])
        prefs = tuple(tuple(tuple(int(o) for o in tier) for tier in row)
                      for row in doc["preferences"])
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"missing or malformed field: {e}") from None
    endowment = doc.get("endowment")
    values = doc.get("values")
    q = doc.get("query")
    query = None
    if q is not None:
        query = Query(q.get("kind", "object-reachability"), q.get("agent"), q.get("object"),
                      q.get("threshold"))
    inst = Instance(
        n, net, prefs,
        Assignment(tuple(endowment)) if endowment is not None else None,
        tuple(tuple(r) for r in values) if values is not None else None,
        tuple(doc["labels"]) if doc.get("labels") else None,
        tuple(doc["object_labels"]) if doc.get("object_labels") else None,
        query,
    )
    return check_instance(inst) if validate else inst


def read_instance(path: str, validate: bool = True) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return loads_instance(fh.read(), validate)


def write_instance(path: str, inst: Instance) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_instance(inst))


# ------------------------------------------------------------------ DIMACS


def dumps_cnf(f: CnfFormula2P1N) -> str:
    lines = [f"p cnf {f.n_vars} {f.m}"]
    lines += [" ".join(map(str, c)) + " 0" for c in f.clauses]
    return "\n".join(lines) + "\n"


def loads_cnf(text: str) -> CnfFormula2P1N:
    n_vars: Optional[int] = None
    clauses: list[list[int]] = []
    cur: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormatError(f"bad problem line: {line!r}")
            n_vars = int(parts[2])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(cur)
                cur = []
            else:
                cur.append(lit)
    if cur:
        clauses.append(cur)
    if n_vars is None:
        raise FormatError("missing 'p cnf' line")
    return CnfFormula2P1N.of(n_vars, clauses)


# ------------------------------------------------------------------ digraph


def dumps_digraph(d: Digraph) -> str:
    lines = [f"start {d.start}", "vertices " + " ".join(d.vertices)]
    lines += [f"arc {u} {v}" for u, v in d.arcs]
    return "\n".join(lines) + "\n"


def loads_digraph(text: str) -> Digraph:
    start, vertices, arcs = None, None, []
    for raw in text.splitlines():
        parts = raw.split("#", 1)[0].split()
        if not parts:
            continue
        key, rest = parts[0], parts[1:]
        if key == "start" and len(rest) == 1:
            start = rest[0]
        elif key == "vertices":
            vertices = rest
        elif key == "arc" and len(rest) == 2:
            arcs.append((rest[0], rest[1]))
        else:
            raise FormatError(f"cannot parse digraph line: {raw!r}")
    if start is None:
        raise FormatError("missing 'start' line")
    if vertices is None:
        seen: list[str] = [start]
        for e in arcs:
            for v in e:
                if v not in seen:
                    seen.append(v)
        vertices = seen
    return Digraph.of(vertices, arcs, start)
