"""Command-line front end.

Machine-readable JSON goes to stdout, human logs to stderr.  Exit codes:
0 = yes / valid, 1 = no / invalid, 2 = promise violation, >= 10 = errors
(10 usage, 11 parse, 12 size guard, 13 internal).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from . import __version__
from .certificates import Witness, verify_witness
from .graph import (
    Graph,
    GraphError,
    ParseError,
    clique_with_pendant_cycle,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    format_graph,
    gnp_graph,
    parse_graph,
    path_graph,
)
from .oct_fpt import solve_unbreakable_oct
from .oracle import (
    OracleSizeError,
    breakability_witness,
    enumerate_minimal_octs,
    enumerate_minimal_st_separators,
    exists_induced_odd_cycle_through,
    exists_induced_st_path_through,
    maxmin_oct_bruteforce,
    maxmin_stsep_bruteforce,
)
from .reductions import odd_path_to_odd_cycle_gadget, stsep_to_oct
from .stsep_fpt import solve_unbreakable_stsep

EXIT_YES = 0
EXIT_NO = 1
EXIT_PROMISE = 2
EXIT_USAGE = 10
EXIT_PARSE = 11
EXIT_SIZE = 12
EXIT_INTERNAL = 13

_VERDICT_EXIT = {"yes": EXIT_YES, "no": EXIT_NO, "promise_violation": EXIT_PROMISE}


def _log(msg: str) -> None:
    print(msg, file=sys.stderr)


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _load_graph(path: str) -> tuple[Graph, str]:
    data = Path(path).read_bytes()
    return parse_graph(data.decode()), hashlib.sha256(data).hexdigest()


def _report(
    args: argparse.Namespace,
    path: str,
    sha: str,
    g: Graph,
    verdict: str,
    witness: Witness | None,
    counters: dict,
    started: float,
    notes: tuple[str, ...] = (),
) -> int:
    deterministic = getattr(args, "deterministic", False)
    _emit(
        {
            "command": sys.argv[1:],
            "instance": {"path": path, "sha256": sha, "n": g.n, "m": g.m},
            "verdict": verdict,
            "witness": witness.to_json_dict(sha) if witness is not None else None,
            "counters": counters,
            "notes": list(notes),
            "wall_time_s": None if deterministic else round(time.monotonic() - started, 6),
        }
    )
    return _VERDICT_EXIT[verdict]


def _resolve_jobs(args: argparse.Namespace) -> int:
    if getattr(args, "deterministic", False):
        return 1
    if args.jobs is not None:
        return args.jobs
    env = os.environ.get("MAXMINSEP_JOBS")
    return int(env) if env else 1


def cmd_solve_stsep(args: argparse.Namespace) -> int:
    started = time.monotonic()
    g, sha = _load_graph(args.graph)
    s, t = args.s - 1, args.t - 1
    if s == t:
        raise UsageError("--s and --t must be distinct")
    if args.oracle:
        w = maxmin_stsep_bruteforce(g, s, t, args.k, jobs=_resolve_jobs(args))
        verdict = "yes" if w is not None else "no"
        return _report(args, args.graph, sha, g, verdict, w, {"mode": "oracle"}, started)
    result = solve_unbreakable_stsep(
        g, s, t, args.k, args.q, verify_promise=args.verify_promise, debug=args.debug
    )
    return _report(
        args,
        args.graph,
        sha,
        g,
        result.verdict,
        result.witness,
        result.counters.as_dict(),
        started,
        result.notes,
    )


def cmd_solve_oct(args: argparse.Namespace) -> int:
    started = time.monotonic()
    g, sha = _load_graph(args.graph)
    if args.oracle:
        w = maxmin_oct_bruteforce(g, args.k, jobs=_resolve_jobs(args))
        verdict = "yes" if w is not None else "no"
        return _report(args, args.graph, sha, g, verdict, w, {"mode": "oracle"}, started)
    result = solve_unbreakable_oct(
        g,
        args.k,
        args.q,
        force_fpt_path=args.force_fpt_path,
        verify_promise=args.verify_promise,
        cutoff_override=args.cutoff_override,
        debug=args.debug,
    )
    return _report(
        args,
        args.graph,
        sha,
        g,
        result.verdict,
        result.witness,
        result.counters.as_dict(),
        started,
        result.notes,
    )


def cmd_oracle(args: argparse.Namespace) -> int:
    started = time.monotonic()
    g, sha = _load_graph(args.graph)
    max_n = 10**9 if args.unsafe_large else 22
    jobs = _resolve_jobs(args)
    out: dict
    if args.oracle_cmd == "enum-stsep":
        seps = enumerate_minimal_st_separators(
            g, args.s - 1, args.t - 1, size_cap=args.size_cap, max_n=max_n, jobs=jobs
        )
        out = {"separators": [[v + 1 for v in sorted(z)] for z in seps]}
    elif args.oracle_cmd == "enum-oct":
        octs = enumerate_minimal_octs(g, size_cap=args.size_cap, max_n=max_n, jobs=jobs)
        out = {"octs": [[v + 1 for v in sorted(z)] for z in octs]}
    elif args.oracle_cmd == "breakability":
        verdict = breakability_witness(g, args.q, args.k, max_n=max_n)
        out = {"breakable": verdict.breakable}
        if verdict.witness is not None:
            out["witness"] = {
                "x_side": [v + 1 for v in sorted(verdict.witness.x_side)],
                "y_side": [v + 1 for v in sorted(verdict.witness.y_side)],
                "order": verdict.witness.order,
            }
    elif args.oracle_cmd == "induced-path-through":
        ok, path = exists_induced_st_path_through(
            g, args.s - 1, args.t - 1, args.v - 1, max_n=max_n
        )
        out = {"exists": ok, "path": [v + 1 for v in path] if path else None}
    elif args.oracle_cmd == "odd-cycle-through":
        ok, cyc = exists_induced_odd_cycle_through(g, args.v - 1, max_n=max_n)
        out = {"exists": ok, "cycle": [v + 1 for v in cyc.vertices] if cyc else None}
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown oracle subcommand {args.oracle_cmd}")
    _emit(
        {
            "command": sys.argv[1:],
            "instance": {"path": args.graph, "sha256": sha, "n": g.n, "m": g.m},
            "result": out,
            "wall_time_s": None
            if getattr(args, "deterministic", False)
            else round(time.monotonic() - started, 6),
        }
    )
    return EXIT_YES


def cmd_reduce(args: argparse.Namespace) -> int:
    g, sha = _load_graph(args.graph)
    if args.reduce_cmd == "stsep-to-oct":
        res = stsep_to_oct(g, args.s - 1, args.t - 1, args.k)
        meta = {"s": args.s, "t": args.t, "k": res.k_out}
    else:
        res = odd_path_to_odd_cycle_gadget(g, args.a - 1, args.b - 1)
        meta = {"a": args.a, "b": args.b}
    graph_text = format_graph(res.output_graph)
    sidecar = {
        "case_tag": res.case_tag,
        "added_vertices": [v + 1 for v in sorted(res.added_vertices)],
        "input_sha256": sha,
        **meta,
    }
    out_path = Path(args.out)
    out_path.write_text(graph_text)
    side_path = out_path.with_suffix(out_path.suffix + ".json")
    side_path.write_text(json.dumps(sidecar, indent=2, sort_keys=True) + "\n")
    _log(f"wrote {out_path} and {side_path}")
    _emit({"graph_file": str(out_path), "sidecar": sidecar})
    return EXIT_YES


def cmd_gen(args: argparse.Namespace) -> int:
    kind = args.gen_cmd
    p = args.params
    try:
        if kind == "path":
            g = path_graph(int(p[0]))
        elif kind == "cycle":
            g = cycle_graph(int(p[0]))
        elif kind == "clique":
            g = complete_graph(int(p[0]))
        elif kind == "complete-bipartite":
            g = complete_bipartite_graph(int(p[0]), int(p[1]))
        elif kind == "gnp":
            g = gnp_graph(int(p[0]), float(p[1]), int(p[2]))
        elif kind == "clique-with-cycle":
            g = clique_with_pendant_cycle(int(p[0]), int(p[1]))
        else:  # pragma: no cover
            raise UsageError(f"unknown generator {kind}")
    except (IndexError, ValueError) as exc:
        raise UsageError(f"bad generator parameters {p}: {exc}") from exc
    text = format_graph(g, comment=f"gen {kind} {' '.join(p)}")
    if args.out:
        Path(args.out).write_text(text)
        _log(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_YES


def cmd_verify(args: argparse.Namespace) -> int:
    g, sha = _load_graph(args.graph)
    data = json.loads(Path(args.witness).read_text())
    try:
        witness, recorded_sha = Witness.from_json_dict(data)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"witness JSON is missing or mistypes a field: {exc}") from exc
    if recorded_sha is not None and recorded_sha != sha:
        raise UsageError("graph hash mismatch: witness was produced for another graph")
    try:
        ok = verify_witness(g, witness)
    except (GraphError, ValueError) as exc:
        _log(f"witness malformed: {exc}")
        ok = False
    _emit({"valid": ok, "kind": witness.kind, "size": len(witness.solution)})
    return EXIT_YES if ok else EXIT_NO


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maxminsep",
        description="MaxMin minimal st-separator / minimal OCT solver suite",
    )
    parser.add_argument("--version", action="version", version=f"maxminsep {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--jobs", type=int, default=None, help="worker count (oracle enumerations)")
        p.add_argument("--deterministic", action="store_true", help="single worker, stable stdout")
        p.add_argument("--seed", type=int, default=None, help="recorded in reports; solvers are deterministic")
        p.add_argument("--debug", action="store_true", help="re-check state invariants while solving")

    p = sub.add_parser("solve-stsep", help="MaxMin minimal st-separator")
    p.add_argument("--graph", required=True)
    p.add_argument("--s", type=int, required=True, help="1-indexed")
    p.add_argument("--t", type=int, required=True, help="1-indexed")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--verify-promise", action="store_true")
    p.add_argument("--oracle", action="store_true", help="brute force instead of the branching solver")
    add_common(p)
    p.set_defaults(func=cmd_solve_stsep)

    p = sub.add_parser("solve-oct", help="MaxMin minimal odd cycle transversal")
    p.add_argument("--graph", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--verify-promise", action="store_true")
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--force-fpt-path", action="store_true")
    p.add_argument("--cutoff-override", type=int, default=None)
    add_common(p)
    p.set_defaults(func=cmd_solve_oct)

    p = sub.add_parser("oracle", help="desk-scale exhaustive queries")
    osub = p.add_subparsers(dest="oracle_cmd", required=True)
    for name in ("enum-stsep", "enum-oct", "breakability", "induced-path-through", "odd-cycle-through"):
        op = osub.add_parser(name)
        op.add_argument("--graph", required=True)
        if name in ("enum-stsep", "induced-path-through"):
            op.add_argument("--s", type=int, required=True)
            op.add_argument("--t", type=int, required=True)
        if name in ("induced-path-through", "odd-cycle-through"):
            op.add_argument("--v", type=int, required=True)
        if name == "breakability":
            op.add_argument("-q", type=int, required=True)
            op.add_argument("-k", type=int, required=True)
        if name.startswith("enum"):
            op.add_argument("--size-cap", type=int, default=None)
        op.add_argument("--unsafe-large", action="store_true")
        add_common(op)
        op.set_defaults(func=cmd_oracle)

    p = sub.add_parser("reduce", help="gadget instance transformers")
    rsub = p.add_subparsers(dest="reduce_cmd", required=True)
    rp = rsub.add_parser("stsep-to-oct")
    rp.add_argument("--graph", required=True)
    rp.add_argument("--s", type=int, required=True)
    rp.add_argument("--t", type=int, required=True)
    rp.add_argument("-k", type=int, required=True)
    rp.add_argument("--out", required=True)
    rp.set_defaults(func=cmd_reduce)
    rp = rsub.add_parser("odd-path-gadget")
    rp.add_argument("--graph", required=True)
    rp.add_argument("--a", type=int, required=True)
    rp.add_argument("--b", type=int, required=True)
    rp.add_argument("--out", required=True)
    rp.set_defaults(func=cmd_reduce)

    p = sub.add_parser("gen", help="instance generators")
    p.add_argument(
        "gen_cmd",
        choices=["path", "cycle", "clique", "complete-bipartite", "gnp", "clique-with-cycle"],
    )
    p.add_argument("params", nargs="*")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="re-check a witness JSON against a graph file")
    p.add_argument("--graph", required=True)
    p.add_argument("--witness", required=True)
    p.set_defaults(func=cmd_verify)

    return parser


def _emit_error(kind: str, exc: Exception, code: int) -> int:
    _log(f"{kind}: {exc}")
    _emit(
        {
            "command": sys.argv[1:],
            "verdict": "error",
            "witness": None,
            "error": {"kind": kind, "message": str(exc)},
        }
    )
    return code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help/--version, 2 for usage errors
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        return _emit_error("usage error", exc, EXIT_USAGE)
    except (ParseError, json.JSONDecodeError, FileNotFoundError) as exc:
        return _emit_error("input error", exc, EXIT_PARSE)
    except OracleSizeError as exc:
        return _emit_error("size guard", exc, EXIT_SIZE)
    except (GraphError, ValueError) as exc:
        return _emit_error("invalid instance", exc, EXIT_USAGE)
    except AssertionError as exc:
        return _emit_error("internal error", exc, EXIT_INTERNAL)


if __name__ == "__main__":
    sys.exit(main())
