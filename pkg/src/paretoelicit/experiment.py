"""Seeded experiment grid: generate truths, run strategies, emit CSV rows.

Every noiseless run is verified on the spot: the framework's confirmed set
must equal the brute-force Pareto oracle, and the number of recorded
outcomes must reach the theoretical lower bound.  A mismatch is a test
failure signal, not a tolerated event.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import kernel
from .model import make_problem
from .oracle import (
    GroundTruth,
    gen_perturbed_truth,
    lower_bound,
    pareto_oracle,
    performance_scores,
)
from .rng import SplitMix64, derive_seed

CSV_COLUMNS = (
    "n",
    "criteria",
    "strategy",
    "seed",
    "questions_asked",
    "derived_facts",
    "pareto_count",
    "lower_bound",
    "runtime",
)


class OracleMismatch(AssertionError):
    """A run's confirmed set disagreed with the brute-force oracle."""


@dataclass(frozen=True)
class ExperimentRow:
    n: int
    criteria: int
    strategy: str
    seed: int
    questions_asked: int
    derived_facts: int
    pareto_count: int
    lower_bound: int
    runtime: float

    def as_csv_row(self) -> list[str]:
        return [
            str(self.n),
            str(self.criteria),
            self.strategy,
            str(self.seed),
            str(self.questions_asked),
            str(self.derived_facts),
            str(self.pareto_count),
            str(self.lower_bound),
            f"{self.runtime:.6f}",
        ]


def synthetic_truth(n: int, criteria: int, seed: int) -> GroundTruth:
    """Normal-score ground truth for one experiment cell and seed.

    Scores are quality-correlated normals (see ``performance_scores``):
    per-category performance statistics correlate through overall quality,
    which is what gives real data its chain-like dominance structure.
    """
    problem = make_problem(
        [f"o{i}" for i in range(n)], [f"c{j}" for j in range(criteria)]
    )
    rng = SplitMix64(derive_seed(n, criteria, seed, 1))
    scores = performance_scores(n, criteria, rng)
    return gen_perturbed_truth(problem, scores, rng)


def run_cell(
    truth: GroundTruth,
    strategy: str,
    seed: int,
    *,
    n: int | None = None,
    criteria: int | None = None,
) -> ExperimentRow:
    """One (truth, strategy, seed) run through the fast kernel, verified."""
    problem = truth.problem
    n = n if n is not None else problem.n_objects
    criteria = criteria if criteria is not None else problem.n_criteria
    run_seed = derive_seed(n, criteria, seed, kernel.STRATEGY_CODES[strategy] + 2)
    started = time.perf_counter()
    result = kernel.run_simulation(truth.rel, strategy, run_seed)
    elapsed = time.perf_counter() - started
    expected = pareto_oracle(truth)
    if result["pareto"] != expected:
        raise OracleMismatch(
            f"{strategy} seed {seed}: confirmed set {sorted(result['pareto'])} "
            f"!= oracle {sorted(expected)}"
        )
    bound = lower_bound(n, criteria, len(expected))
    if result["recorded"] < bound:
        raise AssertionError(
            f"{strategy} seed {seed}: {result['recorded']} recorded outcomes "
            f"below lower bound {bound}"
        )
    return ExperimentRow(
        n=n,
        criteria=criteria,
        strategy=strategy,
        seed=seed,
        questions_asked=result["posed"],
        derived_facts=result["derived"],
        pareto_count=len(expected),
        lower_bound=bound,
        runtime=elapsed,
    )


def run_experiment(
    grid: Iterable[tuple[int, int]],
    strategies: Iterable[str],
    seeds: Iterable[int],
    out=None,
    truth_for_cell=None,
) -> list[ExperimentRow]:
    """Run the full grid, writing CSV rows incrementally when ``out`` is given.

    ``truth_for_cell(n, criteria, seed)`` may override truth generation
    (used for fixture replays); the default draws normal scores.
    """
    strategies = list(strategies)
    writer = None
    if out is not None:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
    rows: list[ExperimentRow] = []
    make_truth = truth_for_cell or (lambda n, c, seed: synthetic_truth(n, c, seed))
    for n, criteria in grid:
        for seed in seeds:
            truth = make_truth(n, criteria, seed)
            for strategy in strategies:
                row = run_cell(truth, strategy, seed, n=n, criteria=criteria)
                rows.append(row)
                if writer is not None:
                    writer.writerow(row.as_csv_row())
                    if hasattr(out, "flush"):
                        out.flush()
    return rows


def rows_to_csv(rows: Iterable[ExperimentRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(row.as_csv_row())
    return buf.getvalue()


def summarize(rows: list[ExperimentRow]) -> list[dict]:
    """Per-strategy mean/min/max asked counts plus bound and brute ratios."""
    by_strategy: dict[str, list[ExperimentRow]] = {}
    for row in rows:
        by_strategy.setdefault(row.strategy, []).append(row)
    summary = []
    for strategy, items in by_strategy.items():
        asked = np.array([r.questions_asked for r in items], dtype=float)
        bounds = np.array([r.lower_bound for r in items], dtype=float)
        brute = np.array(
            [r.criteria * r.n * (r.n - 1) / 2 for r in items], dtype=float
        )
        summary.append(
            {
                "strategy": strategy,
                "runs": len(items),
                "mean_asked": float(asked.mean()),
                "min_asked": int(asked.min()),
                "max_asked": int(asked.max()),
                "ratio_to_lower_bound": float((asked / np.maximum(bounds, 1)).mean()),
                "ratio_to_bruteforce": float((asked / brute).mean()),
            }
        )
    return summary


def format_summary(summary: list[dict]) -> str:
    header = (
        f"{'strategy':<12} {'runs':>4} {'mean':>12} {'min':>10} {'max':>10} "
        f"{'vs bound':>9} {'vs brute':>9}"
    )
    lines = [header, "-" * len(header)]
    for item in sorted(summary, key=lambda s: s["mean_asked"]):
        lines.append(
            f"{item['strategy']:<12} {item['runs']:>4} {item['mean_asked']:>12.1f} "
            f"{item['min_asked']:>10} {item['max_asked']:>10} "
            f"{item['ratio_to_lower_bound']:>9.2f} {item['ratio_to_bruteforce']:>9.4f}"
        )
    return "\n".join(lines)
