from __future__ import annotations

import json

import pytest

from paretoelicit import (
    AggregationConfig,
    GroundTruth,
    IncompleteDataset,
    Outcome,
    VoteTable,
    dump_truth,
    load_dataset,
    movie_truth,
)
from paretoelicit.datasets import parse_dataset, resolve_dataset_path


def test_vote_rows_normalize_orientation():
    raw = {
        "objects": ["a", "b"],
        "criteria": ["c"],
        "votes": [
            # reversed orientation: y listed first; 4 of 5 prefer "b"
            {"x": "b", "y": "a", "c": "c", "prefer_x": 4, "prefer_y": 1, "indifferent": 0, "skipped": 0}
        ],
    }
    table = parse_dataset(raw)
    assert isinstance(table, VoteTable)
    cfg = AggregationConfig(k_min=5, theta=0.6)
    q_ab = table.problem.question("a", "b", "c")
    q_ba = table.problem.question("b", "a", "c")
    assert table.outcome(q_ab, cfg) is Outcome.Y_BETTER  # b wins
    assert table.outcome(q_ba, cfg) is Outcome.X_BETTER  # same fact, flipped view


def test_vote_table_missing_question_raises():
    table = load_dataset("movie-story")
    cfg = AggregationConfig(k_min=5, theta=0.6)
    q = table.problem.question("a", "b", "music")
    with pytest.raises(IncompleteDataset):
        table.outcome(q, cfg)


def test_truth_json_roundtrip(tmp_path):
    truth = movie_truth()
    path = tmp_path / "movie.json"
    path.write_text(json.dumps(dump_truth(truth)))
    loaded = load_dataset(str(path))
    assert isinstance(loaded, GroundTruth)
    assert (loaded.rel == truth.rel).all()
    assert loaded.problem.objects == truth.problem.objects


def test_inconsistent_edge_list_rejected():
    raw = {
        "objects": ["a", "b"],
        "criteria": ["c"],
        "strict": {"c": [["a", "b"], ["b", "a"]]},
    }
    with pytest.raises(Exception):
        parse_dataset(raw)


def test_unknown_dataset_name():
    with pytest.raises(FileNotFoundError):
        resolve_dataset_path("no-such-dataset")
