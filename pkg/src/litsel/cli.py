"""Command line interface: ``litsel prove`` and ``litsel bench``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bench import ALL_STRATEGIES, bundled_problems_dir, emit_table, run_matrix
from .saturation import ProverConfig, Status, saturate
from .selection import KNOWN_STRATEGIES
from .tptp import ParseError, format_literal, parse_problem_file

_SZS = {
    Status.UNSATISFIABLE: "Unsatisfiable",
    Status.SATISFIABLE: "Satisfiable",
    Status.UNKNOWN: "Unknown",
    Status.RESOURCE_OUT: "Timeout",
}


def _ratio(text: str) -> tuple[int, int]:
    try:
        age, weight = text.split(":")
        return int(age), int(weight)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected AGE:WEIGHT, got {text!r}")


def _strategy(text: str) -> int:
    try:
        number = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"selection strategy must be a number, got {text!r}")
    if number not in KNOWN_STRATEGIES:
        known = ",".join(map(str, sorted(KNOWN_STRATEGIES)))
        raise argparse.ArgumentTypeError(f"unknown selection strategy {number}; known: {known}")
    return number


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="litsel",
                                     description="saturation prover with pluggable literal selection")
    sub = parser.add_subparsers(dest="command", required=True)

    prove = sub.add_parser("prove", help="refute a TPTP CNF problem")
    prove.add_argument("problem", help="TPTP CNF file")
    prove.add_argument("--selection", type=_strategy, default=10, help="strategy number (default 10)")
    prove.add_argument("--time-limit", type=float, default=10.0, help="seconds (default 10)")
    prove.add_argument("--age-weight-ratio", type=_ratio, default=(1, 5), metavar="A:W")
    prove.add_argument("--polarity-flip", action="store_true",
                       help="invert the polarity read by selection (equality excluded)")
    prove.add_argument("--max-activations", type=int, default=None)
    prove.add_argument("--stats", action="store_true", help="print run statistics")
    prove.add_argument("--proof", action="store_true", help="print the refutation")
    prove.add_argument("--include-dir", default=None, help="fallback directory for includes")
    prove.add_argument("--post-unification-check", action="store_true",
                       help="re-check maximality of positive selected literals after unification")
    prove.add_argument("--forced-selection", default=None, metavar="FILE",
                       help="JSON map clause-name -> literal positions (testing hook)")

    bench = sub.add_parser("bench", help="run a strategy matrix over a problem directory")
    bench.add_argument("--problems", default=None,
                       help="directory of .p/.cnf files (default: bundled corpus)")
    bench.add_argument("--strategies", default="all",
                       help="comma-separated strategy numbers, or 'all'")
    bench.add_argument("--time-limit", type=float, default=10.0)
    bench.add_argument("--max-activations", type=int, default=300,
                       help="per-run activation cap (default 300; keeps reports reproducible)")
    bench.add_argument("--jobs", type=int, default=None, help="parallel workers (default: cores)")
    bench.add_argument("--format", choices=("text", "csv"), default="text")
    bench.add_argument("--out", default=None, help="write the report here instead of stdout")
    bench.add_argument("--polarity-flip", action="store_true")
    bench.add_argument("--no-figures", action="store_true",
                       help="skip rendering charts next to --out")
    return parser


def _print_proof(proof):
    numbers = {}
    for n, (clause, _) in enumerate(proof, start=1):
        numbers[clause.id] = n
    for clause, inf in proof:
        body = " | ".join(format_literal(lit) for lit in clause.literals) or "$false"
        if inf is None:
            source = f"input {clause.label}" if clause.label else "input"
        else:
            parents = ",".join(str(numbers[p]) for p in inf.premises)
            source = f"{inf.rule} {parents}"
        print(f"{numbers[clause.id]}. {body}  [{source}]")


def cmd_prove(args) -> int:
    try:
        problem = parse_problem_file(args.problem, include_dir=args.include_dir)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    forced = None
    if args.forced_selection:
        raw = json.loads(Path(args.forced_selection).read_text())
        forced = {name: tuple(positions) for name, positions in raw.items()}

    config = ProverConfig(
        selection=args.selection,
        time_limit=args.time_limit,
        max_activations=args.max_activations,
        age_weight_ratio=args.age_weight_ratio,
        flip=args.polarity_flip,
        post_unification_check=args.post_unification_check,
        forced_selection=forced,
    )
    result, stats = saturate(problem.clauses, config)
    print(f"% SZS status {_SZS[result.status]} for {problem.name}")
    if args.proof and result.proof:
        _print_proof(result.proof)
    if args.stats:
        print(f"activations={stats.activations}"
              f" avg_children={float(stats.avg_children):.3f}"
              f" pct_incomp={float(stats.pct_incomp):.3f}"
              f" selection_time_frac={stats.selection_time_fraction:.3f}")
    return 0


def cmd_bench(args) -> int:
    problems = args.problems or bundled_problems_dir()
    if args.strategies == "all":
        strategies = list(ALL_STRATEGIES)
    else:
        try:
            strategies = [_strategy(s) for s in args.strategies.split(",")]
        except argparse.ArgumentTypeError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    try:
        result = run_matrix(problems, strategies, time_limit=args.time_limit,
                            max_activations=args.max_activations, jobs=args.jobs,
                            flip=args.polarity_flip)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    report = emit_table(result, args.format)
    if args.out:
        out_path = Path(args.out)
        out_path.write_text(report)
        print(f"report written to {out_path}")
        if not args.no_figures:
            from .plots import render_figures

            for figure in render_figures(result, out_path):
                print(f"figure written to {figure}")
    else:
        print(report, end="")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "prove":
        return cmd_prove(args)
    return cmd_bench(args)


if __name__ == "__main__":
    sys.exit(main())
