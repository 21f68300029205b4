"""Domain model: objects, criteria, questions and their outcomes."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import InvalidSpec


class Outcome(enum.Enum):
    """The three mutually exclusive outcomes of a pairwise comparison."""

    X_BETTER = "x_better"
    Y_BETTER = "y_better"
    INDIFFERENT = "indifferent"

    def swapped(self) -> "Outcome":
        """The same outcome seen from the reversed orientation."""
        if self is Outcome.X_BETTER:
            return Outcome.Y_BETTER
        if self is Outcome.Y_BETTER:
            return Outcome.X_BETTER
        return self


class Vote(enum.Enum):
    """A single respondent's answer to an open question."""

    PREFER_X = "prefer_x"
    PREFER_Y = "prefer_y"
    INDIFFERENT = "indifferent"
    SKIP = "skip"


class Question(NamedTuple):
    """An oriented pairwise comparison on one criterion.

    Orientation matters for candidate-question checks: ``x`` is the object
    hypothesized to be dominated by ``y``.  The underlying comparison itself
    is symmetric; ``normalized`` collapses orientation.
    """

    x: int
    y: int
    c: int

    def reversed(self) -> "Question":
        return Question(self.y, self.x, self.c)

    def normalized(self) -> "Question":
        return self if self.x <= self.y else self.reversed()


@dataclass(frozen=True, slots=True)
class Problem:
    """An elicitation universe: labelled objects and comparison criteria.

    Object and criterion ids are dense indices into the label tuples.
    """

    objects: tuple[str, ...]
    criteria: tuple[str, ...]
    object_index: dict[str, int] = field(repr=False, compare=False, default_factory=dict)
    criterion_index: dict[str, int] = field(repr=False, compare=False, default_factory=dict)

    def __post_init__(self) -> None:
        if len(self.objects) < 1:
            raise InvalidSpec("at least one object is required")
        if len(self.criteria) < 1:
            raise InvalidSpec("at least one criterion is required")
        if len(set(self.objects)) != len(self.objects):
            raise InvalidSpec("duplicate object labels")
        if len(set(self.criteria)) != len(self.criteria):
            raise InvalidSpec("duplicate criterion labels")
        self.object_index.update({label: i for i, label in enumerate(self.objects)})
        self.criterion_index.update({label: i for i, label in enumerate(self.criteria)})

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_criteria(self) -> int:
        return len(self.criteria)

    def question(self, x: str, y: str, c: str) -> Question:
        return Question(self.object_index[x], self.object_index[y], self.criterion_index[c])

    def describe(self, q: Question) -> str:
        return f"{self.objects[q.x]} ?_{self.criteria[q.c]} {self.objects[q.y]}"

    def brute_force_total(self) -> int:
        """Number of questions a complete pairwise elicitation asks."""
        n = self.n_objects
        return self.n_criteria * n * (n - 1) // 2


def make_problem(objects, criteria) -> Problem:
    return Problem(tuple(objects), tuple(criteria))
