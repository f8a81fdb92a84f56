"""Command-line interface.

Every subcommand reads a plain-text graph file (see :mod:`chipfire.textio`)
and prints either human-readable lines or, with ``--json``, one stable JSON
object.  Exit codes: 0 success, 1 domain error (bad input data, property
failure), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Iterable

from .divisor import Divisor, equivalence_script, rank_lower_bound
from .errors import ChipfireError
from .graph import Graph, hat_graph, strip_weights_and_loops, subdivide_loops
from .rank import DEFAULT_BUDGET, clifford_check, rank, riemann_roch_residual
from .reduction import dhar, reduce_divisor, saturate
from .sweep import SweepConfig, run_sweep
from .textio import parse_divisor, parse_graph, render_divisor, render_graph, render_script


def _load_graph(path: str) -> Graph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ChipfireError(f"cannot read graph file {path!r}: {exc}") from exc
    return parse_graph(text).graph


def _ordered(graph: Graph, members: Iterable[str]) -> list[str]:
    chosen = set(members)
    return [v for v in graph.vertex_ids if v in chosen]


def _set_text(graph: Graph, members: Iterable[str]) -> str:
    return "{" + ",".join(_ordered(graph, members)) + "}"


def _literal(divisor_like) -> str:
    text = ",".join(f"{v}={x}" for v, x in divisor_like.nonzero_items())
    return text or "0"


def _graph_payload(graph: Graph) -> dict:
    return {
        "vertices": [[v, w] for v, w in graph.vertex_items],
        "edges": [[a, b, m] for (a, b), m in graph.edge_items()],
        "genus": graph.genus(),
    }


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in lines:
            print(line)


def _cmd_genus(args) -> int:
    graph = _load_graph(args.graph)
    value = graph.genus()
    _emit(args, {"genus": value}, [f"genus = {value}"])
    return 0


def _cmd_canonical(args) -> int:
    graph = _load_graph(args.graph)
    divisor = graph.canonical_divisor()
    _emit(
        args,
        {"divisor": divisor.as_dict(), "degree": divisor.degree},
        [f"canonical divisor: {_literal(divisor)} (degree {divisor.degree})"],
    )
    return 0


def _cmd_hat(args) -> int:
    graph = _load_graph(args.graph)
    embedding = hat_graph(graph)
    payload = _graph_payload(embedding.target)
    payload["added"] = {v: list(zs) for v, zs in embedding.added.items()}
    lines = [render_graph(embedding.target).rstrip()]
    for v, zs in embedding.added.items():
        if zs:
            lines.append(f"# added for {v}: {' '.join(zs)}")
    _emit(args, payload, lines)
    return 0


def _cmd_g0(args) -> int:
    graph = _load_graph(args.graph)
    stripped = strip_weights_and_loops(graph)
    _emit(args, _graph_payload(stripped), [render_graph(stripped).rstrip()])
    return 0


def _cmd_bullet(args) -> int:
    graph = _load_graph(args.graph)
    subdivided, added = subdivide_loops(graph)
    payload = _graph_payload(subdivided)
    payload["added"] = {v: list(zs) for v, zs in added.items()}
    lines = [render_graph(subdivided).rstrip()]
    for v, zs in added.items():
        if zs:
            lines.append(f"# added for {v}: {' '.join(zs)}")
    _emit(args, payload, lines)
    return 0


def _cmd_rank(args) -> int:
    graph = _load_graph(args.graph)
    divisor = parse_divisor(args.divisor, graph)
    result = rank(divisor, budget=args.budget, exhaustive=args.exhaustive)
    payload = {
        "rank": result.rank,
        "method": result.method,
        "witness": result.witness.as_dict() if result.witness is not None else None,
        "witness_degree": result.witness.degree if result.witness is not None else None,
    }
    lines = [f"rank = {result.rank} (method: {result.method})"]
    if result.witness is not None:
        lines.append(
            f"witness: {_literal(result.witness)} (degree {result.witness.degree})"
        )
    _emit(args, payload, lines)
    return 0


def _cmd_reduce(args) -> int:
    graph = _load_graph(args.graph)
    divisor = parse_divisor(args.divisor, graph)
    reduced, script = reduce_divisor(divisor, args.base)
    payload = {"reduced": reduced.as_dict(), "script": script.as_dict()}
    _emit(
        args,
        payload,
        [f"reduced: {_literal(reduced)}", f"script: {_literal(script)}"],
    )
    return 0


def _cmd_dhar(args) -> int:
    graph = _load_graph(args.graph)
    divisor = parse_divisor(args.divisor, graph)
    decomposition = dhar(divisor, args.base)
    payload = {
        "layers": [_ordered(graph, layer) for layer in decomposition.layers],
        "unburned": _ordered(graph, decomposition.unburned),
        "reduced": decomposition.is_reduced,
    }
    lines = [
        "layers: " + " ".join(_set_text(graph, layer) for layer in decomposition.layers),
        f"unburned: {_set_text(graph, decomposition.unburned)}",
        f"reduced: {'yes' if decomposition.is_reduced else 'no'}",
    ]
    _emit(args, payload, lines)
    return 0


def _cmd_equiv(args) -> int:
    graph = _load_graph(args.graph)
    d1 = parse_divisor(args.divisor, graph)
    d2 = parse_divisor(args.other, graph)
    script = equivalence_script(d1, d2)
    payload = {
        "equivalent": script is not None,
        "script": script.as_dict() if script is not None else None,
    }
    lines = [f"equivalent: {'yes' if script is not None else 'no'}"]
    if script is not None:
        lines.append(f"script: {_literal(script)}")
    _emit(args, payload, lines)
    return 0


def _cmd_saturate(args) -> int:
    graph = _load_graph(args.graph)
    divisor = parse_divisor(args.divisor, graph)
    saturated, added = saturate(divisor, args.base)
    payload = {"added_edges": added, "graph": _graph_payload(saturated)}
    _emit(
        args,
        payload,
        [f"added edges: m = {added}", render_graph(saturated).rstrip()],
    )
    return 0


def _cmd_rr_check(args) -> int:
    graph = _load_graph(args.graph)
    divisor = parse_divisor(args.divisor, graph)
    residual = riemann_roch_residual(divisor, budget=args.budget)
    ok = residual == 0
    _emit(
        args,
        {"residual": residual, "ok": ok},
        [f"riemann-roch residual = {residual} ({'ok' if ok else 'VIOLATION'})"],
    )
    return 0 if ok else 1


def _cmd_clifford(args) -> int:
    graph = _load_graph(args.graph)
    divisor = parse_divisor(args.divisor, graph)
    ok = clifford_check(divisor, budget=args.budget)
    value = rank(divisor, budget=args.budget).rank
    applicable = 0 <= divisor.degree <= 2 * graph.genus() - 2 and value >= 0
    payload = {
        "ok": ok,
        "applicable": applicable,
        "rank": value,
        "degree": divisor.degree,
        "genus": graph.genus(),
    }
    if applicable:
        line = f"clifford: rank {value} <= {divisor.degree // 2}: {'ok' if ok else 'VIOLATION'}"
    else:
        line = "clifford: not applicable (vacuously ok)"
    _emit(args, payload, [line])
    return 0 if ok else 1


def _cmd_sweep(args) -> int:
    config = SweepConfig(
        trials=args.trials,
        max_vertices=args.vertices,
        max_edges=args.max_edges,
        max_weight=args.max_weight,
        seed=args.seed,
    )
    report = run_sweep(config)
    payload = {
        "seed": config.seed,
        "trials": report.trials,
        "resampled": report.resampled,
        "checks": report.checks,
        "failures": report.failures,
        "ok": report.ok,
    }
    lines = [
        f"trials: {report.trials} (seed {config.seed}, resampled {report.resampled})",
    ]
    for name, count in report.checks.items():
        lines.append(f"check {name}: {count} run")
    lines.append(f"failures: {len(report.failures)}")
    lines.extend(report.failures)
    lines.append("result: PASS" if report.ok else "result: FAIL")
    _emit(args, payload, lines)
    return 0 if report.ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chipfire",
        description="Exact divisor theory on finite multigraphs: ranks, reduced divisors, burning.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, *, graph_file=True, divisor=False, base=False,
            other=False, budget=False):
        sub = commands.add_parser(name, help=help_text)
        if graph_file:
            sub.add_argument("graph", help="path to a plain-text graph file")
        if divisor:
            sub.add_argument("-d", "--divisor", required=True,
                             help="divisor literal, e.g. 'v1=1,v3=4'")
        if other:
            sub.add_argument("-e", "--other", required=True,
                             help="second divisor literal")
        if base:
            sub.add_argument("-u", "--base", required=True, help="base vertex id")
        if budget:
            sub.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                             help="max candidates per enumeration level")
        sub.add_argument("--json", action="store_true", help="machine-readable output")
        sub.set_defaults(func=func)
        return sub

    add("genus", _cmd_genus, "total weight plus first Betti number")
    add("canonical", _cmd_canonical, "the canonical divisor and its degree")
    add("hat", _cmd_hat, "weightless loopless surrogate graph")
    add("g0", _cmd_g0, "loop-stripped weightless simplification")
    add("bullet", _cmd_bullet, "subdivide every loop with a fresh vertex")
    rank_cmd = add("rank", _cmd_rank, "combinatorial rank with witness", divisor=True, budget=True)
    rank_cmd.add_argument("--exhaustive", action="store_true",
                          help="skip fast paths; enumerate from the definition")
    add("reduce", _cmd_reduce, "unique base-reduced representative and script",
        divisor=True, base=True)
    add("dhar", _cmd_dhar, "burning decomposition from a base vertex",
        divisor=True, base=True)
    add("equiv", _cmd_equiv, "linear equivalence with witnessing script",
        divisor=True, other=True)
    add("saturate", _cmd_saturate, "recipe saturation at a base vertex",
        divisor=True, base=True)
    add("rr-check", _cmd_rr_check, "Riemann-Roch residual (must be zero)",
        divisor=True, budget=True)
    add("clifford", _cmd_clifford, "Clifford inequality verdict",
        divisor=True, budget=True)
    sweep_cmd = add("sweep", _cmd_sweep, "seeded randomized property suite", graph_file=False)
    sweep_cmd.add_argument("--vertices", type=int, default=6, help="max vertices per instance")
    sweep_cmd.add_argument("--max-edges", type=int, default=12,
                           help="max total edge multiplicity per instance")
    sweep_cmd.add_argument("--max-weight", type=int, default=2, help="max vertex weight")
    sweep_cmd.add_argument("--trials", type=int, default=500, help="number of instances")
    sweep_cmd.add_argument("--seed", type=int, default=0, help="random seed")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ChipfireError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
