"""Knowledge base of question outcomes, dominance queries, and the object partition.

Concurrency contract: single writer, multiple readers.  Mutations
(``record_outcome``) must be serialized by the caller; queries may run
concurrently between mutations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .closure import PreferenceClosure
from .errors import AlreadyKnown, DirectContradiction
from .model import Outcome, Problem, Question


@dataclass(frozen=True)
class Fact:
    """A derived strict preference: ``winner`` beats ``loser`` on ``criterion``."""

    winner: int
    loser: int
    criterion: int

    def as_question_outcome(self) -> tuple[Question, Outcome]:
        """Normalized question/outcome pair equivalent to this fact."""
        if self.winner <= self.loser:
            return Question(self.winner, self.loser, self.criterion), Outcome.X_BETTER
        return Question(self.loser, self.winner, self.criterion), Outcome.Y_BETTER


@dataclass(frozen=True)
class Partition:
    """The three-way split of objects by Pareto-optimality knowledge.

    ``status[i]`` is 0 when undetermined, 1 when confirmed Pareto-optimal,
    and 2 when confirmed dominated.
    """

    status: np.ndarray

    @cached_property
    def confirmed(self) -> frozenset[int]:
        return frozenset(np.flatnonzero(self.status == 1).tolist())

    @cached_property
    def unknown(self) -> frozenset[int]:
        return frozenset(np.flatnonzero(self.status == 0).tolist())

    @cached_property
    def dominated(self) -> frozenset[int]:
        return frozenset(np.flatnonzero(self.status == 2).tolist())

    def sizes(self) -> tuple[int, int, int]:
        return (len(self.confirmed), len(self.unknown), len(self.dominated))


def is_terminal(partition: Partition) -> bool:
    """A question sequence is terminal exactly when no object is undetermined."""
    return not partition.unknown


class KnowledgeBase:
    """Finalized question outcomes plus their per-criterion transitive closure.

    Tracks, for every ordered object pair, how many criteria favor the first
    object (``bettercnt``) and how many are recorded indifferent (``indcnt``);
    these aggregates make dominance queries and partitioning O(1)/O(n^2)
    without rescanning the closures.
    """

    def __init__(self, problem: Problem):
        if problem.n_criteria < 1:
            raise ValueError("dominance is undefined without criteria")
        self.problem = problem
        n = problem.n_objects
        self.n = n
        self.n_criteria = problem.n_criteria
        self.closures = [PreferenceClosure(n) for _ in range(problem.n_criteria)]
        self.asked: list[tuple[Question, Outcome]] = []
        self.asked_count = 0
        self.derived_count = 0
        # Aggregates over criteria, maintained incrementally.
        self.bettercnt = np.zeros((n, n), dtype=np.int16)
        self.indcnt = np.zeros((n, n), dtype=np.int16)
        # Per-criterion degree counters feeding the FRQ criterion scores.
        self.in_deg = np.zeros((problem.n_criteria, n), dtype=np.int32)
        self.out_deg = np.zeros((problem.n_criteria, n), dtype=np.int32)
        self.ind_deg = np.zeros((problem.n_criteria, n), dtype=np.int32)

    # -- queries ---------------------------------------------------------

    def outcome_of(self, x: int, y: int, c: int) -> Outcome | None:
        """The derivable outcome of comparing x and y on c, or None if unknown."""
        clo = self.closures[c]
        if clo.strict[x, y]:
            return Outcome.X_BETTER
        if clo.strict[y, x]:
            return Outcome.Y_BETTER
        if clo.indiff[x, y]:
            return Outcome.INDIFFERENT
        return None

    def may_dominate(self, y: int, x: int) -> bool:
        """Whether y could still turn out to dominate x.

        False as soon as x is known better than y on any criterion (then
        y cannot dominate x by definition, no matter the other criteria).
        """
        return self.bettercnt[x, y] == 0

    def dominates(self, y: int, x: int) -> bool:
        """Whether y is known to dominate x.

        Requires an outcome on every criterion: y better or indifferent
        everywhere and better at least once.  Any unknown criterion fails.
        """
        if self.bettercnt[x, y] != 0 or self.bettercnt[y, x] == 0:
            return False
        known = self.bettercnt[y, x] + self.indcnt[x, y]
        return int(known) == self.n_criteria

    def dominated_counts(self) -> np.ndarray:
        """d(x): how many objects each object dominates so far."""
        known = self.bettercnt + self.bettercnt.T + self.indcnt
        dom = (self.bettercnt >= 1) & (self.bettercnt.T == 0) & (known == self.n_criteria)
        return dom.sum(axis=1).astype(np.int64)

    def compute_partition(self) -> Partition:
        known = self.bettercnt + self.bettercnt.T + self.indcnt
        dom = (self.bettercnt >= 1) & (self.bettercnt.T == 0) & (known == self.n_criteria)
        dominated = dom.any(axis=0)
        # ruled_out[x, y]: y can no longer dominate x.
        ruled_out = (self.bettercnt >= 1) | (self.indcnt == self.n_criteria)
        np.fill_diagonal(ruled_out, True)
        confirmed = ruled_out.all(axis=1) & ~dominated
        status = np.zeros(self.n, dtype=np.int8)
        status[confirmed] = 1
        status[dominated] = 2
        return Partition(status)

    # -- mutation --------------------------------------------------------

    def record_outcome(self, q: Question, o: Outcome) -> list[Fact]:
        """Finalize a question outcome and close transitively.

        Returns the strict facts newly derivable by transitivity (these
        increment ``derived_count``).  Callers must consult ``outcome_of``
        first; a derivable outcome raises AlreadyKnown when it matches and
        DirectContradiction when it conflicts.
        """
        known = self.outcome_of(q.x, q.y, q.c)
        if known is not None:
            if known is o:
                raise AlreadyKnown(f"outcome of {q} already derivable")
            raise DirectContradiction(f"{q} proposed {o.value} but {known.value} is derivable")
        clo = self.closures[q.c]
        derived: list[Fact] = []
        if o is Outcome.INDIFFERENT:
            clo.insert_indifferent(q.x, q.y)
            self.indcnt[q.x, q.y] += 1
            self.indcnt[q.y, q.x] += 1
            self.ind_deg[q.c, q.x] += 1
            self.ind_deg[q.c, q.y] += 1
        else:
            winner, loser = (q.x, q.y) if o is Outcome.X_BETTER else (q.y, q.x)
            for p, s in clo.insert_strict(winner, loser):
                derived.append(Fact(p, s, q.c))
                self._apply_strict(q.c, p, s)
            self._apply_strict(q.c, winner, loser)
        self.asked.append((q, o))
        self.asked_count += 1
        self.derived_count += len(derived)
        return derived

    def _apply_strict(self, c: int, winner: int, loser: int) -> None:
        self.bettercnt[winner, loser] += 1
        self.out_deg[c, winner] += 1
        self.in_deg[c, loser] += 1

    # -- diagnostics -----------------------------------------------------

    def check_invariants(self) -> None:
        for clo in self.closures:
            clo.check_invariants()
        n_ind_outcomes = sum(1 for _, o in self.asked if o is Outcome.INDIFFERENT)
        n_ind_pairs = sum(int(clo.indiff.sum()) // 2 for clo in self.closures)
        assert n_ind_pairs == n_ind_outcomes, "indifference expanded beyond recorded outcomes"
        assert self.asked_count == len(self.asked)
