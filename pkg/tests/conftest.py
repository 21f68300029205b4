from __future__ import annotations

import pytest

from paretoelicit import (
    GroundTruth,
    KnowledgeBase,
    Outcome,
    Question,
    triangle_truth,
    movie_problem,
    movie_truth,
)


def record_complete(kb: KnowledgeBase, truth: GroundTruth) -> None:
    """Record every pair's outcome, skipping ones that became derivable."""
    n = truth.problem.n_objects
    for c in range(truth.problem.n_criteria):
        for u in range(n):
            for v in range(u + 1, n):
                q = Question(u, v, c)
                if kb.outcome_of(u, v, c) is None:
                    kb.record_outcome(q, truth.outcome(q))


@pytest.fixture(scope="session")
def movie() -> GroundTruth:
    return movie_truth()


@pytest.fixture(scope="session")
def triangle() -> GroundTruth:
    return triangle_truth()


@pytest.fixture()
def movie_kb(movie) -> KnowledgeBase:
    kb = KnowledgeBase(movie.problem)
    record_complete(kb, movie)
    return kb


@pytest.fixture()
def triangle_kb(triangle) -> KnowledgeBase:
    kb = KnowledgeBase(triangle.problem)
    record_complete(kb, triangle)
    return kb
