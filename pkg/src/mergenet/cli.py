"""Command-line front end: gen, analyze, search, count, bounds, verify, export."""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

from . import (
    aa_merging_identity,
    all_aa_sequences,
    block_decomposition,
    bound_m,
    bound_m_star,
    count_extremal_two_n,
    count_mergings,
    decode,
    encode,
    errors,
    find_mergings,
    fixture,
    generate,
    is_covered,
    is_reroutable,
    recipe,
    search_m,
    search_m_star,
    search_with_added_path,
    set_edge_limit,
    to_dot,
    to_json,
    upper_m_3n,
)
from .codec import MergingSequence
from .errors import MergeNetError, NotTwoByN
from .io import from_json
from .network import MergeNetwork
from .search import SearchLimits, verify_known_table

USAGE_ERROR, CHECK_FAILED = 1, 2


def _emit(args, net: MergeNetwork) -> None:
    fmt = args.format
    if fmt == "json":
        out = to_json(net)
    elif fmt == "dot":
        out = to_dot(net)
    elif fmt == "seq":
        out = encode(net).text() + "\n"
    else:
        raise errors.MergeNetError(f"unknown format {fmt!r}")
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out if out.endswith("\n") else out + "\n")
    else:
        sys.stdout.write(out if out.endswith("\n") else out + "\n")


def _load(path_or_dash: str) -> MergeNetwork:
    if path_or_dash == "-":
        return from_json(sys.stdin.read())
    with open(path_or_dash) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return from_json(text)
    return decode(MergingSequence.parse(text.strip().splitlines()[0]))


def _cmd_gen(args) -> int:
    if args.fixture:
        net = fixture(args.fixture)
    elif args.from_seq:
        net = decode(MergingSequence.parse(args.from_seq))
    else:
        params = tuple(args.params)
        net = generate(args.family, params)
        if args.check:
            rec = recipe(args.family, params)
            got = count_mergings(net)
            if got != rec.expected_mergings:
                print(f"merging count {got} != expected {rec.expected_mergings}", file=sys.stderr)
                return CHECK_FAILED
    _emit(args, net)
    return 0


def _cmd_analyze(args) -> int:
    net = _load(args.input)
    mergings = find_mergings(net)
    report = {
        "cuts": list(net.cuts),
        "mode": net.mode,
        "covered": is_covered(net),
        "mergings": len(mergings),
        "merging_list": [
            {
                "start_edge": m.start_edge,
                "run": list(m.run),
                "head": m.head,
                "tail": m.tail,
                "participants": sorted(list(p) for p in m.participants),
            }
            for m in mergings
        ],
        "reroutable": is_reroutable(net),
    }
    if len(net.groups) == 2 and not report["reroutable"]:
        try:
            walks = all_aa_sequences(net)
            lhs, rhs, holds = aa_merging_identity(net)
            report["aa_lengths"] = [w.length for w in walks]
            report["aa_identity"] = {"mergings": lhs, "half_sum": rhs, "holds": holds}
        except MergeNetError as exc:
            report["aa_identity"] = {"error": str(exc)}
        try:
            bd = block_decomposition(net)
            report["block_decomposition"] = {
                "x": bd.x, "y": bd.y, "z": bd.z,
                "mini_blocks": [list(b) for b in bd.mini_blocks],
                "medium_blocks": [list(b) for b in bd.medium_blocks],
            }
        except (NotTwoByN, MergeNetError):
            pass
    if args.json:
        print(json.dumps(report, sort_keys=True, indent=2, default=str))
    else:
        print(f"cuts: {tuple(net.cuts)}; mode: {net.mode}")
        print(f"covered: {report['covered']}")
        print(f"reroutable: {report['reroutable']}; mergings: {report['mergings']}")
        if "holds" in report.get("aa_identity", {}):
            aa = report["aa_identity"]
            print(f"aa lengths: {report['aa_lengths']}; identity holds: {aa['holds']}")
        if "block_decomposition" in report:
            bd = report["block_decomposition"]
            print(f"blocks: x={bd['x']} y={bd['y']} z={bd['z']}")
    return 0


def _limits(args) -> SearchLimits:
    return SearchLimits(max_nodes=args.max_nodes, max_seconds=args.max_seconds)


def _print_outcome(out) -> None:
    print(json.dumps(dataclasses.asdict(out), sort_keys=True, indent=2, default=str))


def _cmd_search(args) -> int:
    params = tuple(args.params)
    limits = _limits(args)
    if args.type == "m":
        out = search_m(params[0], params[1], limits)
    elif args.type == "mstar":
        out = search_m_star(params[0], limits)
    elif args.type == "count":
        out = count_extremal_two_n(params[0], limits)
    else:
        out = search_with_added_path((params[0], params[1]), args.added, limits)
    _print_outcome(out)
    return 0


def _cmd_count(args) -> int:
    out = count_extremal_two_n(args.n, _limits(args))
    _print_outcome(out)
    return 0


def _cmd_bounds(args) -> int:
    if args.m is not None and args.n is not None:
        table = bound_m(args.m, args.n)
        print(f"M({args.m},{args.n}): lower {table.lower} upper {table.upper}")
        if args.m == 3:
            print(f"M(3,n) linear bound: {upper_m_3n(args.n)}")
    elif args.n is not None:
        table = bound_m_star(args.n)
        print(f"M*({args.n},{args.n}): lower {table.lower} upper {table.upper}")
    else:
        raise MergeNetError("bounds needs --n (for M*) or --m and --n (for M)")
    return 0


def _cmd_verify(args) -> int:
    report = verify_known_table(_limits(args), deep=not args.quick)
    for e in report.entries:
        star = "*" if e.kind == "mstar" else ""
        name = f"M{star}{e.params}"
        detail = f"value={e.value}" if e.value is not None else f"lower={e.lower} upper={e.upper}"
        flag = "ok" if e.ok else "MISMATCH"
        print(f"{flag:8s} {name:18s} expected={e.expected:<4d} {e.status:24s} {detail} {e.note}")
    print(f"{'PASS' if report.ok else 'FAIL'}: {len(report.entries)} entries")
    return 0 if report.ok else CHECK_FAILED


def _cmd_export(args) -> int:
    net = _load(args.input)
    _emit(args, net)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mergenet",
        description="Merging calculus for groups of Menger's paths in acyclic networks.",
    )
    sub = ap.add_subparsers(dest="verb", required=True)

    def add_output(p):
        p.add_argument("--format", choices=["json", "dot", "seq"], default="json")
        p.add_argument("--output", "-o", default=None)

    def add_limits(p):
        p.add_argument("--max-nodes", type=int, default=500_000)
        p.add_argument("--max-seconds", type=float, default=600.0)

    p = sub.add_parser("gen", help="emit a family instance or fixture")
    p.add_argument("--family", default=None)
    p.add_argument("--params", type=int, nargs="*", default=[])
    p.add_argument("--n", type=int, default=None, help="shorthand for --params N")
    p.add_argument("--fixture", default=None)
    p.add_argument("--from-seq", default=None, help="merging sequence text 'm n : (i,j) ...'")
    p.add_argument("--check", action="store_true", help="verify the recipe's expected count")
    add_output(p)
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("analyze", help="merging count, AA walks, reroutability, blocks")
    p.add_argument("input", help="network JSON file, sequence text file, or - for stdin")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_analyze)

    p = sub.add_parser("search", help="exhaustive extremal-value search")
    p.add_argument("--type", choices=["m", "mstar", "count", "added-path"], required=True)
    p.add_argument("--params", type=int, nargs="+", required=True)
    p.add_argument("--added", type=int, default=1)
    add_limits(p)
    p.set_defaults(fn=_cmd_search)

    p = sub.add_parser("count", help="count extremal (2,n) networks up to isomorphism")
    p.add_argument("--n", type=int, required=True)
    add_limits(p)
    p.set_defaults(fn=_cmd_count)

    p = sub.add_parser("bounds", help="closed-form lower/upper bounds")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.set_defaults(fn=_cmd_bounds)

    p = sub.add_parser("verify", help="recompute or witness the known-values table")
    p.add_argument("--quick", action="store_true", help="skip the exhaustive searches")
    add_limits(p)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("export", help="convert between JSON, sequence text, and DOT")
    p.add_argument("input")
    add_output(p)
    p.set_defaults(fn=_cmd_export)
    return ap


def main(argv: list[str] | None = None) -> int:
    limit = os.environ.get("MERGE_MAX_EDGES")
    if limit:
        set_edge_limit(int(limit))
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.verb == "gen" and args.n is not None and not args.params:
        args.params = [args.n]
    if args.verb == "gen" and not (args.family or args.fixture or args.from_seq):
        ap.error("gen needs --family, --fixture, or --from-seq")
    try:
        return args.fn(args)
    except MergeNetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
