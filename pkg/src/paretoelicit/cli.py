"""Command-line interface: simulate, replay, bound, serve.

Exit codes: 0 success, 1 verification failure (oracle mismatch, incomplete
dataset), 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .aggregation import AggregationConfig
from .datasets import FIXTURES, VoteTable, VoteTableAnswerSource, load_dataset
from .errors import ElicitationError, IncompleteDataset
from .experiment import (
    OracleMismatch,
    format_summary,
    run_cell,
    run_experiment,
    summarize,
)
from .oracle import GroundTruth, TruthAnswerSource, lower_bound, pareto_oracle
from .report import format_replay_table, transcript_jsonl
from .rng import SplitMix64, derive_seed
from .selection import STRATEGY_NAMES, make_strategy, run_framework


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paretoelicit",
        description="Find all Pareto-optimal objects by pairwise-comparison elicitation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run the seeded experiment grid and write CSV")
    sim.add_argument("--n", type=int, nargs="+", default=[100], help="object set sizes")
    sim.add_argument("--criteria", type=int, nargs="+", default=[3], help="criteria set sizes")
    sim.add_argument(
        "--strategies",
        default="frq,randomp,randomq",
        help=f"comma-separated subset of {','.join(STRATEGY_NAMES)}",
    )
    sim.add_argument("--seeds", type=int, default=30, help="number of seeded executions per cell")
    sim.add_argument("--fixture", choices=sorted(FIXTURES), help="run on a bundled fixture instead")
    sim.add_argument("--out", type=Path, help="CSV output path (default: stdout after summary)")

    rep = sub.add_parser("replay", help="replay a dataset through one strategy")
    rep.add_argument("dataset", help=f"fixture name ({', '.join(sorted(FIXTURES))}) or JSON path")
    rep.add_argument("--strategy", default="frq", choices=STRATEGY_NAMES)
    rep.add_argument("--seed", type=int, default=0)
    rep.add_argument("--k-min", type=int, default=5, help="vote floor when replaying vote tables")
    rep.add_argument("--theta", type=float, default=0.6)
    rep.add_argument("--jsonl", type=Path, help="write line-delimited transcript records here")

    bnd = sub.add_parser("bound", help="print the question lower bound")
    bnd.add_argument("--n", type=int, required=True)
    bnd.add_argument("--c", type=int, required=True)
    bnd.add_argument("--k", type=int, required=True)

    srv = sub.add_parser("serve", help="host the live-session HTTP API")
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--port", type=int, default=8000)
    srv.add_argument("--static-dir", type=Path, help="built UI assets to serve at /")
    srv.add_argument("--state-dir", type=Path, help="persist sessions here after each finalization")
    return parser


def _parse_strategies(text: str, parser: argparse.ArgumentParser) -> list[str]:
    names = [s.strip().lower() for s in text.split(",") if s.strip()]
    for name in names:
        if name not in STRATEGY_NAMES:
            parser.error(f"unknown strategy {name!r}; choose from {', '.join(STRATEGY_NAMES)}")
    if not names:
        parser.error("no strategies given")
    return names


def _cmd_simulate(args, parser) -> int:
    strategies = _parse_strategies(args.strategies, parser)
    seeds = list(range(args.seeds))
    if args.fixture:
        dataset = load_dataset(args.fixture)
        if not isinstance(dataset, GroundTruth):
            parser.error(f"fixture {args.fixture!r} is a vote table; use the replay command")
        problem = dataset.problem
        grid = [(problem.n_objects, problem.n_criteria)]
        truth_for_cell = lambda n, c, seed: dataset  # noqa: E731 - fixed fixture
    else:
        grid = [(n, c) for n in args.n for c in args.criteria]
        truth_for_cell = None
    try:
        if args.out:
            with open(args.out, "w", newline="") as fh:
                rows = run_experiment(grid, strategies, seeds, out=fh, truth_for_cell=truth_for_cell)
        else:
            rows = run_experiment(grid, strategies, seeds, out=sys.stdout, truth_for_cell=truth_for_cell)
    except OracleMismatch as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    print(format_summary(summarize(rows)), file=sys.stderr)
    return 0


def _cmd_replay(args, parser) -> int:
    try:
        dataset = load_dataset(args.dataset)
    except FileNotFoundError as exc:
        parser.error(str(exc))
    strategy = make_strategy(args.strategy)
    rng = SplitMix64(derive_seed(args.seed, 17))
    if isinstance(dataset, VoteTable):
        problem = dataset.problem
        answers = VoteTableAnswerSource(
            dataset, AggregationConfig(k_min=args.k_min, theta=args.theta)
        )
    else:
        problem = dataset.problem
        answers = TruthAnswerSource(dataset)
    try:
        transcript = run_framework(problem, strategy, answers, rng)
    except IncompleteDataset as exc:
        print(f"incomplete dataset: {exc}", file=sys.stderr)
        return 1
    print(format_replay_table(transcript))
    if isinstance(dataset, GroundTruth):
        expected = pareto_oracle(dataset)
        got = transcript.final.confirmed
        if got != expected:
            print("verification failure: confirmed set differs from oracle", file=sys.stderr)
            return 1
    if args.jsonl:
        args.jsonl.write_text(transcript_jsonl(transcript))
    return 0


def _cmd_bound(args) -> int:
    print(lower_bound(args.n, args.c, args.k))
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import SessionStore, create_app

    store = SessionStore(state_dir=args.state_dir)
    app = create_app(store, static_dir=args.static_dir)
    try:
        uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    except OSError as exc:
        print(f"bind failure: {exc}", file=sys.stderr)
        return 1
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "simulate":
            return _cmd_simulate(args, parser)
        if args.command == "replay":
            return _cmd_replay(args, parser)
        if args.command == "bound":
            return _cmd_bound(args)
        if args.command == "serve":
            return _cmd_serve(args)
    except ElicitationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    parser.error(f"unknown command {args.command!r}")
    return 2


if __name__ == "__main__":
    sys.exit(main())
