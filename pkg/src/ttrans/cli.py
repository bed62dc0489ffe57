"""Command-line front end: ``ttrans <command> ...``; every command prints one JSON report.

Exit codes: 0 success, 1 negative verdict (invalid partition, not split, claim
violation), 2 parse error or bad flags, 3 infeasible input, 4 size ceiling exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from . import families, oracle, reduction, splitgraph, tree
from .errors import (
    CapExceededError,
    CeilingExceededError,
    ClaimViolation,
    GraphParseError,
    InfeasibleError,
    NotSplitError,
    PartitionStructureError,
    StructureError,
)
from .graph import is_tree, parse_edge_list, to_edge_list
from .partition import Kind, VertexPartition, validate

SCHEMA = 1

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_CEILING = 4


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _digest(*blobs: bytes) -> str:
    h = hashlib.sha256()
    for blob in blobs:
        h.update(blob)
    return h.hexdigest()


def _read_bytes(path) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise CliError(EXIT_USAGE, f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path):
    data = _read_bytes(path)
    try:
        return parse_edge_list(data.decode()), data
    except (GraphParseError, UnicodeDecodeError) as exc:
        raise CliError(EXIT_USAGE, f"{path}: {exc}") from None


def _load_json(path):
    data = _read_bytes(path)
    try:
        return json.loads(data), data
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise CliError(EXIT_USAGE, f"{path}: invalid JSON: {exc}") from None


def _load_partition(path) -> tuple[VertexPartition, bytes]:
    doc, data = _load_json(path)
    # accept a solve report as well as a bare partition document
    if isinstance(doc, dict) and "result" in doc and isinstance(doc["result"], dict):
        doc = doc["result"].get("certificate", doc["result"].get("partition"))
    try:
        return VertexPartition.from_dict(doc), data
    except PartitionStructureError as exc:
        raise CliError(EXIT_USAGE, f"{path}: {exc}") from None


def _write(path, text: str) -> None:
    Path(path).write_text(text)


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def cmd_solve(args):
    g, data = _load_graph(args.input)
    mode = Kind.parse(args.mode)
    engine = args.engine
    if engine == "auto":
        engine = "tree" if mode is Kind.TOTAL and g.n >= 2 and is_tree(g) else "oracle"
    if engine == "tree":
        if mode is not Kind.TOTAL:
            raise CliError(EXIT_USAGE, "the tree engine only computes total transitivity")
        if not is_tree(g) or g.n < 2:
            raise CliError(EXIT_USAGE, "the tree engine needs a tree with at least two vertices")
        res = tree.solve(g, jobs=args.jobs)
        result = {
            "mode": mode.value,
            "value": res.value,
            "best_root": res.best_root,
            "per_vertex": res.per_vertex,
            "certificate": res.certificate.to_dict(),
        }
    else:
        dp = oracle.PeelDp(g, mode, args.ceiling)
        cert = dp.chain_to(dp.best_last())
        numbers = dp.vertex_numbers()
        result = {
            "mode": mode.value,
            "value": cert.k,
            "per_vertex": [numbers[v] for v in range(g.n)],
            "certificate": cert.to_dict(),
        }
    return engine, result, [data], EXIT_OK


def cmd_validate(args):
    g, gdata = _load_graph(args.input)
    p, pdata = _load_partition(args.partition)
    kind = Kind.parse(args.kind) if args.kind else p.kind
    try:
        violation = validate(g, p, kind)
    except PartitionStructureError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from None
    result = {
        "kind": kind.value,
        "k": p.k,
        "valid": violation is None,
        "violation": violation.to_dict() if violation else None,
    }
    return None, result, [gdata, pdata], EXIT_OK if violation is None else EXIT_NEGATIVE


_RANDOM = {"random_tree", "random_split"}


def _family_params(args) -> dict:
    names = {
        "complete": ("n",),
        "path": ("n",),
        "cycle": ("n",),
        "complete_bipartite": ("m", "n"),
        "star": ("n",),
        "tcmbt": ("k",),
        "figure1_split": ("q",),
        "random_tree": ("n", "seed"),
        "random_split": ("q", "s", "p_edge", "seed"),
    }[args.family]
    params = {}
    for name in names:
        value = getattr(args, name)
        if value is None:
            raise CliError(EXIT_USAGE, f"family {args.family} needs --{name.replace('_', '-')}")
        params[name] = value
    return params


def cmd_gen(args):
    params = _family_params(args)
    spec = families.FamilySpec(args.family, params)
    try:
        gen = families.generate(spec)
    except ValueError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from None
    try:
        closed = families.closed_form(spec)
    except ValueError:
        closed = families.NO_CLOSED_FORM
    text = to_edge_list(gen.graph)
    meta = {"family": args.family, "params": params, "closed_form": closed, **gen.metadata()}
    _write(args.out, text)
    _write(args.out + ".meta.json", _dump(meta))
    spec_bytes = json.dumps({"family": args.family, "params": params}, sort_keys=True).encode()
    result = dict(meta, edges_sha256=_digest(text.encode()))
    return "closed_form", result, [spec_bytes], EXIT_OK


def cmd_split_check(args):
    g, data = _load_graph(args.input)
    try:
        d = splitgraph.decompose(g)
    except NotSplitError as exc:
        result = {"split": False, "witness": {"kind": exc.witness_kind, "vertices": list(exc.witness)}}
        return "closed_form", result, [data], EXIT_NEGATIVE
    dom = splitgraph.dom_K_S(d)
    ok1, reason1 = splitgraph.ttr_eq_1_reason(d)
    w = splitgraph.ttr_eq_omega_minus_1_witness(d)
    lo, hi = splitgraph.bounds(d)
    result = {
        "split": True,
        "decomposition": d.to_dict(),
        "dom_K_S": None if dom is None else {"size": dom[0], "witness": list(dom[1])},
        "bounds": [lo, hi],
        "ttr_eq_1": {"verdict": ok1, "reason": reason1},
        "ttr_eq_omega_minus_1": {
            "verdict": w is not None,
            "reason": "structure found" if w is not None else "no dominator/ordering structure exists",
            "witness": None if w is None else w.to_dict(),
        },
    }
    if args.p is not None:
        try:
            nec = splitgraph.check_necessary(d, args.p)
        except ValueError as exc:
            raise CliError(EXIT_USAGE, str(exc)) from None
        result["necessary"] = {"p": args.p, "passes": nec.passes, "reason": nec.reason}
    return "closed_form", result, [data], EXIT_OK


def cmd_reduce(args):
    g, data = _load_graph(args.input)
    try:
        r = reduction.build(g)
    except StructureError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from None
    side = r.sidecar()
    _write(args.out, to_edge_list(r.gprime))
    if args.map:
        _write(args.map, _dump(side))
    result = {key: val for key, val in side.items() if key != "vertex_map"}
    return None, result, [data], EXIT_OK


def _parse_coloring(doc, n: int) -> dict[int, int]:
    if isinstance(doc, dict) and "coloring" in doc:
        doc = doc["coloring"]
    if isinstance(doc, list):
        return {i: c for i, c in enumerate(doc)}
    if isinstance(doc, dict):
        try:
            return {int(k): v for k, v in doc.items()}
        except ValueError:
            pass
    raise CliError(EXIT_USAGE, "colouring must be a list or an object keyed by vertex")


def cmd_witness(args):
    g, data = _load_graph(args.input)
    try:
        r = reduction.build(g)
    except StructureError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from None
    blobs = [data]
    if args.direction == "forward":
        if args.coloring:
            doc, cdata = _load_json(args.coloring)
            blobs.append(cdata)
            coloring = _parse_coloring(doc, g.n)
        else:
            coloring = reduction.find_three_coloring(g)
            if coloring is None:
                raise CliError(EXIT_INFEASIBLE, "graph is not 3-colourable")
        try:
            p = reduction.coloring_to_partition(r, coloring)
        except ValueError as exc:
            raise CliError(EXIT_USAGE, str(exc)) from None
        if args.out:
            _write(args.out, p.to_json() + "\n")
        result = {
            "k": r.k,
            "coloring": [coloring[i] for i in range(g.n)],
            "partition": p.to_dict(),
        }
        return None, result, blobs, EXIT_OK
    if not args.partition:
        raise CliError(EXIT_USAGE, "witness backward needs --partition")
    p, pdata = _load_partition(args.partition)
    blobs.append(pdata)
    try:
        coloring = reduction.partition_to_coloring(r, p)
    except ClaimViolation as exc:
        result = {"claim_violation": {"vertex": exc.vertex, "part": exc.part_index}}
        return None, result, blobs, EXIT_NEGATIVE
    except PartitionStructureError as exc:
        raise CliError(EXIT_NEGATIVE, str(exc)) from None
    return None, {"k": r.k, "coloring": [coloring[i] for i in range(g.n)]}, blobs, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ttrans", description="Total transitivity toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute the invariant with a certificate")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--engine", choices=("auto", "oracle", "tree"), default="auto")
    p.add_argument("--mode", choices=("total", "modified", "transitive"), default="total")
    p.add_argument("--ceiling", type=int, default=None, help="oracle size limit (default: $TTRANS_CEILING or 16)")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("validate", help="check a partition against a graph")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--partition", required=True)
    p.add_argument("--kind", choices=("total", "modified", "transitive"), default=None)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("gen", help="write a family member as an edge list")
    p.add_argument("--family", choices=families.FAMILIES, required=True)
    for name in ("n", "m", "k", "q", "s", "seed"):
        p.add_argument(f"--{name}", type=int, default=None)
    p.add_argument("--p-edge", dest="p_edge", type=float, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("split-check", help="split-graph decomposition and structural checks")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--p", type=int, default=None)
    p.set_defaults(func=cmd_split_check)

    p = sub.add_parser("reduce", help="build the bipartite instance from a 3-colouring instance")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--map", default=None)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("witness", help="map colourings to partitions and back")
    p.add_argument("direction", choices=("forward", "backward"))
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--coloring", default=None)
    p.add_argument("--partition", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_witness)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "gen" and args.family in _RANDOM and args.seed is None:
        print(f"ttrans: family {args.family} needs --seed", file=sys.stderr)
        return EXIT_USAGE
    start = time.perf_counter()
    report = {"schema": SCHEMA, "command": args.command}
    try:
        engine, result, blobs, code = args.func(args)
    except CliError as exc:
        code, error = exc.code, str(exc)
    except InfeasibleError as exc:
        code, error = EXIT_INFEASIBLE, str(exc)
    except (CeilingExceededError, CapExceededError) as exc:
        code, error = EXIT_CEILING, str(exc)
    else:
        report.update(engine=engine, input_digest=_digest(*blobs), result=result)
        report["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
        sys.stdout.write(_dump(report))
        return code
    report.update(error=error, exit_code=code)
    sys.stdout.write(_dump(report))
    print(f"ttrans: {error}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
