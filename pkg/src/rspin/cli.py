"""Command-line front end: ``rspin <subcommand> [flags]``.

Results go to stdout as compact JSON (or CSV with a header row). Any
input problem exits with status 1 and a one-line diagnostic on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Sequence

from . import arith, localroot, monodromy, nodalnets, rewrite

ORBIT_STATE_CAP = 1 << 21


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_twists(text: str | None) -> list[int]:
    if text is None:
        return []
    text = text.strip()
    if not text:
        return []
    try:
        return [int(part.strip()) for part in text.split(",")]
    except ValueError:
        raise UsageError(f"--m expects comma-separated integers, got {text!r}") from None


def _twists(args, r: int) -> tuple[list[int], dict]:
    raw = parse_twists(args.m)
    norm = arith.normalize_twists(r, raw)
    extra = {"notice": f"twists normalized mod {r} to {norm}"} if norm != raw else {}
    return norm, extra


def _params(args, m: Sequence[int]) -> arith.LevelParams:
    return arith.LevelParams(args.g, args.r, len(m))


def _classes_record(part: monodromy.OrbitPartition) -> dict:
    return {"count": len(part), "classes": [{"label": c.label, "size": c.size} for c in part.classes]}


def cmd_components(args) -> dict:
    m, extra = _twists(args, args.r)
    params = _params(args, m)
    return {**_classes_record(monodromy.component_partition(params, m)), **extra}


def cmd_orbits(args) -> dict:
    m, extra = _twists(args, args.r)
    params = _params(args, m)
    states = args.r ** (2 * args.g)
    if states > ORBIT_STATE_CAP:
        raise UsageError(f"state space r^(2g)={states} exceeds the cap {ORBIT_STATE_CAP}")
    gens = monodromy.generator_set(params, m, args.mode)
    return {**_classes_record(monodromy.orbits(gens, params)), **extra}


def cmd_counts(args) -> dict:
    m, extra = _twists(args, args.r)
    params = _params(args, m)
    g, r = args.g, args.r
    lvl = arith.ell(params, m)
    record = {
        "g": g,
        "r": r,
        "m": m,
        "exists": arith.exists_spin(params, m),
        "ell": lvl,
        "components": arith.component_count(params, m),
        "total": r ** (2 * g),
    }
    if r % 2 == 0 and g >= 1:
        even, odd = arith.parity_counts(g, r)
        record["parity"] = {"even": even, "odd": odd}
    if g == 1:
        record["orders"] = [{"d": d, "count": arith.exact_order_count(r, d)} for d in arith.divisors(r)]
    return {**record, **extra}


def cmd_local(args) -> dict:
    u, v, d = args.u, args.v, args.d
    if u < 1 or v < 1:
        raise UsageError("--u and --v must be positive")
    pe = localroot.power_exponents(u, v, d)
    images = []
    for i in range(d + 1):
        gen = rewrite.delta(i, d)
        images.append({"generator": str(gen), "image": str(rewrite.power_map_image(u, v, d, gen))})
    report = rewrite.verify_power_map(u, v, d)
    return {
        "u": u,
        "v": v,
        "d": d,
        "exponents": list(pe.as_tuple()),
        "free_target": pe.free_target,
        "cokernel_length": localroot.cokernel_length(u, v, d),
        "images": images,
        "verified": report.verified,
    }


def cmd_rewrite_check(args) -> dict:
    u, v, d = args.u, args.v, args.d
    if u < 1 or v < 1:
        raise UsageError("--u and --v must be positive")
    if args.trials < 0:
        raise UsageError("--trials must be non-negative")
    ring = rewrite.target_ring(u, v, d)
    failures = rewrite.confluence_trials(ring, args.trials, args.seed)
    report = rewrite.verify_power_map(u, v, d)
    return {
        "u": u,
        "v": v,
        "d": d,
        "ring": {"s": ring.s, "u": ring.u_t, "v": ring.v_t, "free": ring.free},
        "trials": args.trials,
        "failures": failures,
        "relations": len(report.checks),
        "verified": report.verified and failures == 0,
    }


def _load_graph(path: str) -> nodalnets.DualGraph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read graph file {path}: {exc.strerror}") from None
    try:
        return nodalnets.DualGraph.from_json(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"graph file {path} is not valid JSON: {exc.msg}") from None


def cmd_nodal(args) -> dict:
    graph = _load_graph(args.graph)
    ok, problems = nodalnets.validate(graph)
    if not ok:
        raise UsageError("invalid graph: " + "; ".join(problems))
    raw = parse_twists(args.m)
    extra = {}
    if raw:
        if len(raw) != len(graph.legs):
            raise UsageError(f"--m has {len(raw)} entries but the graph has {len(graph.legs)} legs")
        graph = graph.with_twists(raw)
    norm = arith.normalize_twists(args.r, graph.twists)
    if norm != graph.twists:
        extra["notice"] = f"twists normalized mod {args.r} to {norm}"
    strata = nodalnets.enumerate_strata(graph, args.r, norm)
    rows = [
        {
            "orders": [list(o) if o is not None else None for o in s.orders],
            "degrees": list(s.degrees),
            "count": nodalnets.count_nets(s),
            "ramification": nodalnets.deformation_profile(s),
        }
        for s in strata
    ]
    return {"genus": nodalnets.genus(graph), "strata": rows, **extra}


def cmd_degree_check(args) -> dict:
    ok = nodalnets.degree_identity_check(args.g, args.r)
    graph = nodalnets.one_loop_graph(args.g)
    return {
        "g": args.g,
        "r": args.r,
        "weighted": nodalnets.weighted_boundary_count(graph, args.r),
        "expected": args.r ** (2 * args.g),
        "identity": ok,
    }


def _add_level(p: argparse.ArgumentParser, m: bool = True) -> None:
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    if m:
        p.add_argument("--m", default="", help="comma-separated twists; use --m=-1,4 for negatives")


def _add_local(p: argparse.ArgumentParser) -> None:
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--d", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rspin", description="Counts and checks for r-spin moduli.")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("components", help="component partition and class sizes")
    _add_level(p)
    p.set_defaults(func=cmd_components)

    p = sub.add_parser("orbits", help="orbits of the generator set by direct enumeration")
    _add_level(p)
    p.add_argument("--mode", choices=("paper", "mod2_full"), default="paper")
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("counts", help="closed-form counts")
    _add_level(p)
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("local", help="power-map exponents and images at a node")
    _add_local(p)
    p.set_defaults(func=cmd_local)

    p = sub.add_parser("rewrite-check", help="relation checks and confluence trials")
    _add_local(p)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_rewrite_check)

    p = sub.add_parser("nodal", help="boundary strata over a dual graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--m", default="", help="overrides leg twists when non-empty")
    p.set_defaults(func=cmd_nodal)

    p = sub.add_parser("degree-check", help="weighted one-loop boundary identity")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_degree_check)

    for name, action in sub.choices.items():
        action.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    return parser


def _cell(value) -> str:
    if isinstance(value, (list, tuple)):
        return ";".join("-" if x is None else _cell(x) for x in value)
    if isinstance(value, dict):
        return json.dumps(value, separators=(",", ":"))
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def to_csv(record: dict) -> str:
    rows = None
    for key in ("classes", "strata", "images", "orders"):
        if key in record and isinstance(record[key], list):
            rows = record[key]
            break
    if rows is None:
        rows = [{k: v for k, v in record.items()}]
    buf = io.StringIO()
    fields = list(rows[0].keys()) if rows else ["label", "size"]
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for row in rows:
        writer.writerow([_cell(row[f]) for f in fields])
    return buf.getvalue()


def render(record: dict, fmt: str) -> str:
    if fmt == "csv":
        return to_csv(record)
    return json.dumps(record, separators=(",", ":")) + "\n"


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        record = args.func(args)
    except (UsageError, ValueError, OverflowError) as exc:
        message = " ".join(str(exc).split()) or exc.__class__.__name__
        err.write(f"rspin: error: {message}\n")
        return 1
    out.write(render(record, args.format))
    return 0


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
