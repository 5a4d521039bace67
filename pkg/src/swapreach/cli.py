"""Command-line front end.

Exit codes: 0 yes (or success), 1 no, 2 error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import oracle, path_strict, star_weak
from .core import (
    PATH, STAR, Instance, SwapError, replay, welfare,
)
from .fileformat import (
    FormatError, dumps_instance, loads_cnf, loads_digraph, read_instance,
)
from .generate import KINDS, generate
from .reductions import digraph_to_star_welfare, sat_to_weak_path, validate_2p1n

YES, NO, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, text: str, payload: dict) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _fmt_seq(inst: Instance, seq) -> str:
    return " ".join(f"({inst.label(a)},{inst.label(b)})" for a, b in seq) or "(empty)"


def _fmt_assignment(inst: Instance, held) -> str:
    return " ".join(f"{inst.label(i)}:{inst.object_label(o)}" for i, o in enumerate(held, 1))


def _query(inst: Instance, args) -> tuple[int, int]:
    q = inst.query
    agent = args.agent if args.agent is not None else (q.agent if q else None)
    obj = args.object if args.object is not None else (q.object if q else None)
    if agent is None or obj is None:
        raise UsageError("no reachability query: give --agent and --object or a query in the file")
    if not (1 <= agent <= inst.n and 1 <= obj <= inst.n):
        raise UsageError(f"query ({agent}, {obj}) out of range 1..{inst.n}")
    return agent, obj


def _report(args, inst: Instance, agent: int, obj: int, seq, method: str,
            stats: Optional[oracle.SearchStats] = None) -> int:
    payload = {"answer": "reachable" if seq is not None else "unreachable",
               "agent": agent, "object": obj, "method": method}
    lines = []
    if seq is None:
        lines.append("UNREACHABLE")
    else:
        final = replay(inst, seq)[-1]
        ok = final[agent] == obj
        lines += ["REACHABLE", f"certificate: {_fmt_seq(inst, seq)}",
                  f"verified: {'yes' if ok else 'NO'}"]
        payload.update(certificate=[list(s) for s in seq], verified=ok,
                       final=list(final.held), swaps=len(seq))
    lines.append(f"method: {method}")
    if stats is not None:
        payload["statistics"] = {"states": stats.states, "frontier_peak": stats.frontier_peak,
                                 "depth": stats.depth}
        lines.append(f"states explored: {stats.states}")
    _emit(args, "\n".join(lines), payload)
    return YES if seq is not None else NO


def cmd_solve(args) -> int:
    inst = read_instance(args.instance)
    agent, obj = _query(inst, args)
    kind = inst.network.kind
    if kind == PATH and inst.is_strict:
        return _report(args, inst, agent, obj, path_strict.solve(inst, agent, obj), "path-strict")
    if kind == STAR or (kind == PATH and inst.n <= 2):
        return _report(args, inst, agent, obj, star_weak.solve(inst, agent, obj), "star")
    if not args.oracle:
        why = ("weak preferences on a path make this problem NP-hard"
               if kind == PATH else "no polynomial algorithm is known for this network")
        raise UsageError(f"{why}; rerun with --oracle to use exhaustive search")
    return cmd_oracle(args)


def cmd_oracle(args) -> int:
    inst = read_instance(args.instance)
    agent, obj = _query(inst, args)
    seq, stats = oracle.search(inst, agent, obj, cap=args.cap)
    return _report(args, inst, agent, obj, seq, "oracle", stats)


def _parse_swaps(text: str) -> list[tuple[int, int]]:
    out = []
    for tok in text.replace(",", " ").replace("-", " ").split():
        out.append(int(tok))
    if len(out) % 2:
        raise UsageError("swap list has an odd number of agent indices")
    return list(zip(out[::2], out[1::2]))


def cmd_verify(args) -> int:
    inst = read_instance(args.instance)
    text = args.swaps
    if args.swaps_file:
        with open(args.swaps_file, encoding="utf-8") as fh:
            text = fh.read()
    seq = _parse_swaps(text or "")
    try:
        final = replay(inst, seq, verbose=args.verbose)[-1]
    except SwapError as e:
        _emit(args, f"INVALID\n{e}", {"valid": False, "error": str(e)})
        return NO
    text_out = f"VALID\nfinal: {_fmt_assignment(inst, final.held)}"
    _emit(args, text_out, {"valid": True, "final": list(final.held)})
    return YES


def cmd_pareto(args) -> int:
    inst = read_instance(args.instance)
    front = oracle.pareto_frontier(inst, cap=args.cap)
    lines = [f"{len(front)} Pareto-optimal reachable assignment(s)"]
    lines += [_fmt_assignment(inst, a.held) for a in front]
    _emit(args, "\n".join(lines), {"frontier": [list(a.held) for a in front]})
    return YES


def cmd_welfare(args) -> int:
    inst = read_instance(args.instance)
    best, arg = oracle.max_welfare(inst, cap=args.cap)
    start = welfare(inst, inst.endowment)
    threshold = args.threshold
    if threshold is None and inst.query is not None:
        threshold = inst.query.threshold
    lines = [f"endowment welfare: {start}", f"max reachable welfare: {best}",
             f"witness: {_fmt_assignment(inst, arg.held)}"]
    payload = {"endowment_welfare": start, "max_welfare": best, "witness": list(arg.held)}
    code = YES
    if threshold is not None:
        met = best >= threshold
        lines.append(f"threshold {threshold}: {'met' if met else 'not met'}")
        payload.update(threshold=threshold, met=met)
        code = YES if met else NO
    _emit(args, "\n".join(lines), payload)
    return code


def _write(args, inst: Instance) -> None:
    text = dumps_instance(inst)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_reduce_sat(args) -> int:
    with open(args.source, encoding="utf-8") as fh:
        f = loads_cnf(fh.read())
    diags = validate_2p1n(f)
    if diags:
        raise UsageError("invalid 2P1N formula: " + "; ".join(diags))
    inst, _ = sat_to_weak_path(f)
    _write(args, inst)
    return YES


def cmd_reduce_ham(args) -> int:
    with open(args.source, encoding="utf-8") as fh:
        d = loads_digraph(fh.read())
    inst, _ = digraph_to_star_welfare(d)
    _write(args, inst)
    return YES


def cmd_gen(args) -> int:
    if args.n < 1:
        raise UsageError("n must be at least 1")
    inst = generate(args.kind, args.n, args.seed)
    _write(args, inst)
    return YES


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="swapreach",
                                description="Object reachability via rational swaps.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP,
                        help="state limit for exhaustive search")
    sub = p.add_subparsers(dest="command", required=True)

    def query_args(sp):
        sp.add_argument("instance")
        sp.add_argument("--agent", type=int)
        sp.add_argument("--object", type=int)

    sp = sub.add_parser("solve", parents=[common], help="decide reachability with the best solver")
    query_args(sp)
    sp.add_argument("--oracle", action="store_true",
                    help="fall back to exhaustive search when no fast solver applies")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("oracle", parents=[common], help="decide reachability by exhaustive search")
    query_args(sp)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("verify", parents=[common], help="replay a swap sequence")
    sp.add_argument("instance")
    sp.add_argument("--swaps", help='pairs such as "1-2 2-3"')
    sp.add_argument("--swaps-file")
    sp.add_argument("--verbose", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("pareto", parents=[common], help="list Pareto-optimal reachable assignments")
    sp.add_argument("instance")
    sp.set_defaults(func=cmd_pareto)

    sp = sub.add_parser("welfare", parents=[common], help="maximum reachable welfare")
    sp.add_argument("instance")
    sp.add_argument("--threshold", type=int)
    sp.set_defaults(func=cmd_welfare)

    sp = sub.add_parser("reduce-sat", parents=[common], help="2P1N formula to weak path instance")
    sp.add_argument("source")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_reduce_sat)

    sp = sub.add_parser("reduce-ham", parents=[common], help="digraph to valued star instance")
    sp.add_argument("source")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_reduce_ham)

    sp = sub.add_parser("gen", parents=[common], help="seeded random instance")
    sp.add_argument("kind", choices=KINDS)
    sp.add_argument("n", type=int)
    sp.add_argument("seed", type=int)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gen)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, SwapError, FormatError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
