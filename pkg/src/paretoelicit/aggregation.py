"""Turning raw votes into finalized outcomes, and keeping them consistent.

Aggregation is threshold-based: an object wins a comparison when at least a
fraction theta (> 1/2) of respondents preferred it; otherwise the pair is
indifferent.  The denominator is the responded count (skips excluded), with
a configurable floor.  Before a finalized outcome enters the knowledge base
it passes contradiction resolution: a strict outcome that would transitively
force a strict fact over a pair already recorded indifferent is replaced by
indifference.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InsufficientVotes, Unresolvable
from .knowledge import KnowledgeBase
from .model import Outcome, Question, Vote


@dataclass(frozen=True, slots=True)
class VoteTally:
    """Vote counts for one question."""

    prefer_x: int = 0
    prefer_y: int = 0
    indifferent: int = 0
    skipped: int = 0

    @property
    def responded(self) -> int:
        return self.prefer_x + self.prefer_y + self.indifferent

    def with_vote(self, vote: Vote) -> "VoteTally":
        if vote is Vote.PREFER_X:
            return VoteTally(self.prefer_x + 1, self.prefer_y, self.indifferent, self.skipped)
        if vote is Vote.PREFER_Y:
            return VoteTally(self.prefer_x, self.prefer_y + 1, self.indifferent, self.skipped)
        if vote is Vote.INDIFFERENT:
            return VoteTally(self.prefer_x, self.prefer_y, self.indifferent + 1, self.skipped)
        return VoteTally(self.prefer_x, self.prefer_y, self.indifferent, self.skipped + 1)


@dataclass(frozen=True, slots=True)
class AggregationConfig:
    """Threshold aggregation parameters.

    ``theta`` must exceed 1/2 so the two strict outcomes are mutually
    exclusive.  ``k_min`` is the minimum responded count before any outcome
    may be declared.
    """

    k_min: int = 5
    theta: float = 0.6

    def __post_init__(self) -> None:
        if not (0.5 < self.theta <= 1.0):
            raise ValueError("theta must lie in (0.5, 1]")
        if self.k_min < 1:
            raise ValueError("k_min must be at least 1")


# One answer finalizes every question; used by single-human sessions.
INTERACTIVE_CONFIG = AggregationConfig(k_min=1, theta=0.51)


def aggregate(tally: VoteTally, cfg: AggregationConfig) -> Outcome:
    """Aggregate a vote tally into one of the three outcomes."""
    responded = tally.responded
    if responded < cfg.k_min:
        raise InsufficientVotes(f"{responded} responses < k_min={cfg.k_min}")
    if tally.prefer_x / responded >= cfg.theta:
        return Outcome.X_BETTER
    if tally.prefer_y / responded >= cfg.theta:
        return Outcome.Y_BETTER
    return Outcome.INDIFFERENT


def resolve_contradiction(kb: KnowledgeBase, q: Question, proposed: Outcome) -> Outcome:
    """Replace a strict outcome by indifference when it would contradict one.

    Precondition: ``kb.outcome_of(q)`` is unknown (derivable questions are
    never asked).  If inserting the proposed strict fact would, through
    transitivity, force a strict fact over a pair recorded indifferent, the
    proposed outcome is replaced by indifference, covering both worked
    contradiction patterns and their symmetric variants.  A proposed strict
    fact whose exact reverse is already derivable cannot be repaired and
    raises Unresolvable (a corrupted answer stream).
    """
    if proposed is Outcome.INDIFFERENT:
        return proposed
    winner, loser = (q.x, q.y) if proposed is Outcome.X_BETTER else (q.y, q.x)
    clo = kb.closures[q.c]
    if clo.strict[loser, winner]:
        raise Unresolvable(
            f"reverse of {winner}>{loser} on criterion {q.c} already derivable"
        )
    would_add = clo.new_pairs_if_inserted(winner, loser)
    if would_add.size and clo.indiff[would_add[:, 0], would_add[:, 1]].any():
        return Outcome.INDIFFERENT
    return proposed


def filter_by_validation(
    responses: dict[str, dict[Question, Vote]],
    expected: dict[Question, Vote],
) -> tuple[dict[str, dict[Question, Vote]], int]:
    """Drop every response of respondents who miss a validation question.

    ``expected`` maps validation questions to their required answer.
    Returns the surviving responses and the number of rejected respondents.
    """
    retained: dict[str, dict[Question, Vote]] = {}
    rejected = 0
    for worker, answers in responses.items():
        ok = all(
            answers[vq] == want for vq, want in expected.items() if vq in answers
        )
        if ok:
            retained[worker] = answers
        else:
            rejected += 1
    return retained, rejected


def tally_votes(votes: dict[str, Vote]) -> VoteTally:
    """Collapse per-respondent votes on one question into a tally."""
    tally = VoteTally()
    for vote in votes.values():
        tally = tally.with_vote(vote)
    return tally
