"""Command line entry point: ``hcpres generate|solve|export|verify|resistance|bench``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import generators
from .bench import BenchConfig, render_table, run_benchmark, write_report
from .errors import HCPError
from .graph import format_edge_list, read_graph
from .resistance import kirchhoff_index, resistance_matrix
from .solver import Budget, solve_exact, solve_heuristic, verify_cycle
from .tsplib import ExportFormat, ExportOptions, export
from .weighting import Scheme, SchemeTag, apply_scheme

log = logging.getLogger("hcpres")

SCHEMES = [t.value for t in SchemeTag]


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_generate(args) -> int:
    comments = []
    if args.family == "flower":
        if args.k is None:
            raise SystemExit("generate flower needs --k")
        if args.modified:
            res = generators.modified_flower_snark(args.k)
            g = res.graph
            comments.append(f"added_edge {res.added_edge[0]} {res.added_edge[1]}")
        else:
            g = generators.flower_snark(args.k)
    else:
        if args.n is None:
            raise SystemExit(f"generate {args.family} needs --n")
        g = {
            "cycle": generators.cycle_graph,
            "path": generators.path_graph,
            "complete": generators.complete_graph,
        }[args.family](args.n)
    _write(format_edge_list(g, comments), args.out)
    return 0


def _scheme(args) -> Scheme:
    return Scheme.parse(args.scheme, seed=args.seed, scale=args.scale)


def cmd_solve(args) -> int:
    g = read_graph(args.file)
    inst = apply_scheme(g, _scheme(args))
    budget = Budget(args.max_nodes, args.max_time)
    if args.heuristic:
        res = solve_heuristic(inst, budget)
    else:
        res = solve_exact(inst, budget, optimal=args.optimal)
    if args.json:
        print(json.dumps(res.to_dict()))
    else:
        print(res.summary())
    return 0 if res.found else 1


def cmd_export(args) -> int:
    g = read_graph(args.file)
    inst = apply_scheme(g, _scheme(args))
    name = args.name or Path(args.file).stem
    opts = ExportOptions(ExportFormat(args.format), name, args.big_m)
    _write(export(inst, opts), args.out)
    return 0


def cmd_verify(args) -> int:
    g = read_graph(args.file)
    if args.cycle is not None:
        tokens = args.cycle.replace(",", " ").split()
    else:
        tokens = Path(args.tour).read_text().split()
    ok = verify_cycle(g, tokens)
    print("valid" if ok else "invalid")
    return 0 if ok else 1


def cmd_resistance(args) -> int:
    g = read_graph(args.file)
    r = resistance_matrix(g)
    if args.out:
        Path(args.out).write_text(r.to_csv())
    if r.connected:
        print(f"kirchhoff_index {kirchhoff_index(r):.12g}")
    else:
        print("kirchhoff_index inf")
    return 0


def cmd_bench(args) -> int:
    cfg = BenchConfig.load(args.config)
    if args.workers is not None:
        cfg.workers = args.workers
    records = run_benchmark(cfg)
    md, csv_path = write_report(records, args.out)
    sys.stdout.write(render_table(records))
    log.info("wrote %s and %s", md, csv_path)
    return 0


def _add_scheme_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--scheme", choices=SCHEMES, default="unit")
    p.add_argument("--seed", type=int, default=None, help="random scheme seed (default 0)")
    p.add_argument("--scale", type=int, default=100)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hcpres", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a generated graph as an edge list")
    p.add_argument("family", choices=["flower", "cycle", "path", "complete"])
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--modified", action="store_true", help="add the forced petal edge")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve", help="search an instance file for a Hamiltonian cycle")
    p.add_argument("file")
    _add_scheme_args(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", default=True)
    mode.add_argument("--heuristic", action="store_true")
    p.add_argument("--max-nodes", type=int, default=None)
    p.add_argument("--max-time", type=float, default=None, metavar="SECS")
    p.add_argument("--optimal", action="store_true", help="continue to a minimum-weight tour")
    p.add_argument("--json", action="store_true", help="print the result as JSON")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("export", help="write a weighted instance for external solvers")
    p.add_argument("file")
    _add_scheme_args(p)
    p.add_argument("--format", choices=[f.value for f in ExportFormat], default="full")
    p.add_argument("--name", default=None)
    p.add_argument("--big-m", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("verify", help="check a tour against an instance")
    p.add_argument("file")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--cycle", help="space- or comma-separated vertex sequence")
    src.add_argument("--tour", help="file holding the vertex sequence")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("resistance", help="resistance matrix CSV and Kirchhoff index")
    p.add_argument("file")
    p.add_argument("--out", default=None, help="CSV path for the matrix")
    p.set_defaults(func=cmd_resistance)

    p = sub.add_parser("bench", help="run a scheme x instance grid")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (HCPError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
