"""Command-line entry point: ``fracgraph <command> ...``.

Exit status is 0 on success, 1 when a check fails (or a search budget runs
out), and 2 for usage and input errors.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .audit import audit_patterns
from .coloring import (
    chromatic_number,
    find_demand_coloring,
    fractional_chromatic_number,
    paper_demand,
    verify_set_coloring,
    weighted_cover_value,
)
from .enumerate import EnumerationSpec, enumerate_graphs
from .errors import InputError, ResourceError
from .graph import clique_number
from .graph6 import read_graph6_file, write_graph6
from .ops import complete_graph, cycle_graph, strong_product
from .patterns import c82
from .verify import verify_theorem


def _fmt(x) -> str:
    return str(x)


def _load(path: str):
    if not Path(path).is_file():
        raise InputError(f"no such file: {path}")
    return read_graph6_file(path)


def cmd_chif(args) -> int:
    for g in _load(args.file):
        print(f"{write_graph6(g)} {_fmt(fractional_chromatic_number(g))}")
    return 0


def cmd_demand(args) -> int:
    status = 0
    for g in _load(args.file):
        h = paper_demand(g)
        value = weighted_cover_value(g, h)
        feasible = value <= 1
        print(f"{write_graph6(g)} cover={_fmt(value)} feasible={'yes' if feasible else 'no'}")
        if not feasible:
            status = 1
            continue
        if args.n is not None:
            c = find_demand_coloring(g, h, args.n)
            if c is None:
                print(f"no colouring with palette {args.n}")
                status = 1
                continue
            verdict = verify_set_coloring(g, h, c)
            if not verdict:
                print(f"internal check failed: {verdict.reason}", file=sys.stderr)
                status = 1
                continue
            sys.stdout.write(c.to_text())
    return status


def cmd_verify(args) -> int:
    spec = EnumerationSpec(args.max_n, args.max_degree, args.forbid_clique, True)
    report = verify_theorem(spec, jobs=args.jobs)
    if args.out:
        Path(args.out).write_text("\n".join(report.lines(args.timings)) + "\n")
    bad = report.violations()
    inconsistent = [r for r in report.records if not r.consistent]
    exc = report.exceptions()
    gap = report.gap
    print(f"graphs: {len(report.records)}")
    print(f"exceptions: {len(exc)} {' '.join(r.graph6 for r in exc)}".rstrip())
    print(f"violations: {len(bad)}")
    print(f"bound/demand disagreements: {len(inconsistent)}")
    if gap.min_gap is not None:
        print(f"min gap: {gap.min_gap} (witness {gap.witness})")
    for r in bad:
        print(f"violation: {r.graph6} chi_f={r.chi_f} demand_feasible={r.demand_feasible}")
    return 1 if bad or inconsistent else 0


def cmd_enumerate(args) -> int:
    spec = EnumerationSpec(args.max_n, args.max_degree, args.forbid_clique, not args.all)
    out = open(args.out, "w") if args.out else sys.stdout
    count = 0
    try:
        for g in enumerate_graphs(spec):
            out.write(write_graph6(g) + "\n")
            count += 1
    finally:
        if args.out:
            out.close()
    if args.out:
        print(f"wrote {count} graphs to {args.out}")
    return 0


def cmd_patterns(args) -> int:
    for g in _load(args.file):
        print(write_graph6(g))
        for entry in audit_patterns(g):
            mark = "yes" if entry.present else "no"
            where = f" {entry.embedding}" if entry.present else ""
            print(f"  {entry.name}: {mark}{where}")
    return 0


def exceptional_rows():
    c5 = cycle_graph(5)
    graphs = [
        ("C8^2", c82()),
        ("C5xK2", strong_product(c5, complete_graph(2))),
        ("C5xK3", strong_product(c5, complete_graph(3))),
    ]
    rows = []
    for name, g in graphs:
        rows.append((name, fractional_chromatic_number(g), chromatic_number(g), clique_number(g), g.max_degree))
    return rows


def cmd_exceptional(args) -> int:
    print(f"{'graph':<7} {'chi_f':>6} {'chi':>4} {'omega':>6} {'Delta':>6}")
    for name, cf, chi, om, delta in exceptional_rows():
        print(f"{name:<7} {_fmt(cf):>6} {chi:>4} {om:>6} {delta:>6}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fracgraph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chif", help="exact fractional chromatic number per graph6 line")
    p.add_argument("file")
    p.set_defaults(func=cmd_chif)

    p = sub.add_parser("demand", help="feasibility of the degree-based demand")
    p.add_argument("file")
    p.add_argument("--n", type=int, help="also print an explicit colouring with this palette")
    p.set_defaults(func=cmd_demand)

    p = sub.add_parser("verify", help="check the bound over all enumerated graphs")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="write a JSON-lines report here")
    p.add_argument("--timings", action="store_true", help="include per-graph timings in the report")
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--forbid-clique", type=int, default=4)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="one graph6 line per isomorphism class")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--forbid-clique", type=int, default=4)
    p.add_argument("--all", action="store_true", help="include disconnected graphs")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("patterns", help="audit built-in patterns and predicates")
    p.add_argument("file")
    p.set_defaults(func=cmd_patterns)

    p = sub.add_parser("exceptional", help="table of the exceptional graphs")
    p.set_defaults(func=cmd_exceptional)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be at least 1")
    if getattr(args, "n", None) is not None and args.n < 1:
        parser.error("--n must be positive")
    try:
        return args.func(args)
    except ResourceError as exc:
        print(f"fracgraph: {exc}", file=sys.stderr)
        return 1
    except (InputError, OSError) as exc:
        print(f"fracgraph: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
