"""Command line front end: ``copath decide --input G.gr --k K``.

Exit status is 0 for yes, 1 for no and 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .graph import GraphFormatError, read_graph
from .kernel import kernelize, passthrough
from .pipeline import ENGINES, SolverConfig, all_k_spectrum, copath_decide
from .treedecomp import format_td, greedy_decomposition

EXIT_YES, EXIT_NO, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="copath", description="Decide whether deleting exactly k edges leaves a linear forest.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    d = sub.add_parser("decide", help="decide one instance")
    d.add_argument("--input", required=True, type=Path, help="graph in 'p edge n m' / 'e u v' format")
    d.add_argument("--k", required=True, type=int)
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--confidence", type=float, default=0.99)
    d.add_argument("--engine", choices=ENGINES, default="auto")
    d.add_argument("--degree-bound", type=int, default=10, metavar="D")
    d.add_argument("--kernel", choices=("default", "off"), default="default")
    d.add_argument("--join", choices=("auto", "direct", "transform"), default="auto")
    d.add_argument("--all-k", action="store_true", help="also report every feasible budget")
    d.add_argument("--json", action="store_true", help="print the decision as one JSON object")
    d.add_argument("--emit-td", type=Path, metavar="PATH", help="write the kernel graph's decomposition (.td)")
    d.add_argument("--trace-dp", action="store_true", help="log per-node table sizes to stderr")
    return parser


def _fail(message: str) -> int:
    print(f"copath: error: {message}", file=sys.stderr)
    return EXIT_USAGE


def cmd_decide(args) -> int:
    if args.k < 0:
        return _fail("--k must be non-negative")
    try:
        g = read_graph(args.input)
    except OSError as exc:
        return _fail(f"cannot read {args.input}: {exc.strerror or exc}")
    except GraphFormatError as exc:
        return _fail(f"{args.input}: {exc}")
    try:
        cfg = SolverConfig(degree_bound=args.degree_bound, confidence=args.confidence, seed=args.seed,
                           engine=args.engine, kernel=args.kernel == "default", join=args.join,
                           trace_dp=args.trace_dp)
    except ValueError as exc:
        return _fail(str(exc))
    if args.trace_dp:
        logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(message)s")

    if args.emit_td is not None:
        kr = kernelize(g, args.k) if cfg.kernel and args.k <= g.m else passthrough(g, args.k)
        try:
            args.emit_td.write_text(format_td(greedy_decomposition(kr.graph), kr.graph.n))
        except OSError as exc:
            return _fail(f"cannot write {args.emit_td}: {exc.strerror or exc}")

    decision = copath_decide(g, args.k, cfg)
    report = decision.to_json()
    if args.all_k:
        report["spectrum"] = all_k_spectrum(g, cfg)
    if args.json:
        print(json.dumps(report))
    else:
        print(report["answer"])
        if args.all_k:
            print("feasible k:", " ".join(map(str, report["spectrum"])))
    return EXIT_YES if decision.answer else EXIT_NO


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "decide":
        return cmd_decide(args)
    return EXIT_USAGE  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())
