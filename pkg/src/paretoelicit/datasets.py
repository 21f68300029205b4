"""Bundled fixtures and the JSON dataset formats.

Two dataset flavors exist:

* ground-truth files: ``{"objects", "criteria", "strict": {criterion:
  [[better, worse], ...]}}``: strict edge lists per criterion, transitively
  closed on load; indifference is implicit for unlisted pairs.
* vote tables: ``{"objects", "criteria", "votes": [{"x", "y", "c",
  "prefer_x", "prefer_y", "indifferent", "skipped"}, ...]}``: raw counts,
  aggregated on demand.  The bundled ``movie-story`` table is the worked
  six-movie example's story criterion.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .aggregation import AggregationConfig, VoteTally, aggregate
from .errors import IncompleteDataset
from .model import Outcome, Problem, Question, make_problem
from .oracle import GroundTruth, truth_from_edges

DATA_DIR_ENV = "PARETOELICIT_DATA_DIR"

FIXTURES = {
    "movie-full": "movie_full.json",
    "movie-story": "movie_story_votes.json",
    "triangle": "triangle.json",
}


@dataclass(frozen=True)
class VoteTable:
    """Raw vote counts per question; a partial dataset for replays."""

    problem: Problem
    tallies: dict[Question, VoteTally]

    def outcome(self, q: Question, cfg: AggregationConfig) -> Outcome:
        tally = self.tallies.get(q.normalized())
        if tally is None:
            raise IncompleteDataset(f"no votes recorded for {self.problem.describe(q)}")
        outcome = aggregate(tally, cfg)
        return outcome if q == q.normalized() else outcome.swapped()


class VoteTableAnswerSource:
    """Answers questions by aggregating a vote table."""

    def __init__(self, table: VoteTable, cfg: AggregationConfig | None = None):
        self.table = table
        self.cfg = cfg or AggregationConfig()

    def answer(self, q: Question) -> Outcome:
        return self.table.outcome(q, self.cfg)


def _fixture_text(name: str) -> str:
    return resources.files("paretoelicit.data").joinpath(name).read_text()


def resolve_dataset_path(name_or_path: str) -> str | None:
    """A filesystem path for a dataset name, or None for bundled fixtures."""
    if name_or_path in FIXTURES:
        return None
    p = Path(name_or_path)
    if p.exists():
        return str(p)
    data_dir = os.environ.get(DATA_DIR_ENV)
    if data_dir:
        candidate = Path(data_dir) / name_or_path
        if candidate.exists():
            return str(candidate)
        candidate = Path(data_dir) / f"{name_or_path}.json"
        if candidate.exists():
            return str(candidate)
    raise FileNotFoundError(f"dataset {name_or_path!r} not found")


def load_dataset(name_or_path: str) -> GroundTruth | VoteTable:
    """Load a bundled fixture by name or a dataset file by path."""
    path = resolve_dataset_path(name_or_path)
    if path is None:
        raw = json.loads(_fixture_text(FIXTURES[name_or_path]))
    else:
        raw = json.loads(Path(path).read_text())
    return parse_dataset(raw)


def parse_dataset(raw: dict) -> GroundTruth | VoteTable:
    problem = make_problem(raw["objects"], raw["criteria"])
    if "strict" in raw:
        edges = {
            c: [(str(a), str(b)) for a, b in pairs] for c, pairs in raw["strict"].items()
        }
        return truth_from_edges(problem, edges)
    if "votes" in raw:
        tallies: dict[Question, VoteTally] = {}
        for row in raw["votes"]:
            q = problem.question(row["x"], row["y"], row["c"])
            tally = VoteTally(
                prefer_x=int(row["prefer_x"]),
                prefer_y=int(row["prefer_y"]),
                indifferent=int(row["indifferent"]),
                skipped=int(row.get("skipped", 0)),
            )
            if q != q.normalized():
                tally = VoteTally(tally.prefer_y, tally.prefer_x, tally.indifferent, tally.skipped)
            tallies[q.normalized()] = tally
        return VoteTable(problem, tallies)
    raise ValueError("dataset must contain either 'strict' edge lists or 'votes'")


def dump_truth(truth: GroundTruth) -> dict:
    """Serialize a ground truth to the strict-edge-list JSON form."""
    problem = truth.problem
    strict: dict[str, list[list[str]]] = {}
    for c, label in enumerate(problem.criteria):
        edges = []
        rel = truth.rel[c]
        for u in range(problem.n_objects):
            for v in range(problem.n_objects):
                if rel[u, v]:
                    edges.append([problem.objects[u], problem.objects[v]])
        strict[label] = edges
    return {
        "objects": list(problem.objects),
        "criteria": list(problem.criteria),
        "strict": strict,
    }


def movie_problem() -> Problem:
    return make_problem(list("abcdef"), ["story", "music", "acting"])


def movie_truth() -> GroundTruth:
    truth = load_dataset("movie-full")
    assert isinstance(truth, GroundTruth)
    return truth


def movie_story_votes() -> VoteTable:
    table = load_dataset("movie-story")
    assert isinstance(table, VoteTable)
    return table


def triangle_truth() -> GroundTruth:
    truth = load_dataset("triangle")
    assert isinstance(truth, GroundTruth)
    return truth
