"""Candidate-question filtering, macro/micro-ordering, and the framework loop.

A question (x, y, c) is a candidate iff (i) its outcome is not derivable,
(ii) x is still undetermined, and (iii) y may still dominate x.  Macro
ordering prefers candidates whose y is not yet confirmed dominated (tier 1)
over those whose y is (tier 2).  Micro-ordering picks within the active
tier: uniformly (RandomQ), sticking with one object pair (RandomP), or by
the pair with the fewest remaining questions (FRQ).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .aggregation import resolve_contradiction
from .errors import Exhausted
from .knowledge import KnowledgeBase, Partition, is_terminal
from .model import Outcome, Problem, Question
from .rng import SplitMix64


@dataclass(frozen=True)
class CandidateSets:
    """Candidate questions split by macro-ordering tier.

    ``q1`` holds candidates whose y is not confirmed dominated; ``q2`` the
    rest.  The two sets are disjoint.
    """

    q1: frozenset[Question]
    q2: frozenset[Question]

    def __bool__(self) -> bool:
        return bool(self.q1 or self.q2)

    def union(self) -> frozenset[Question]:
        return self.q1 | self.q2


def candidate_sets(kb: KnowledgeBase, partition: Partition) -> CandidateSets:
    """Full recompute of the candidate sets against the current knowledge.

    This is the cross-check mode; the fast simulation kernel maintains the
    same sets incrementally.
    """
    status = partition.status
    undetermined = status == 0
    base = undetermined[:, None] & (kb.bettercnt == 0)
    np.fill_diagonal(base, False)
    q1: set[Question] = set()
    q2: set[Question] = set()
    for c, clo in enumerate(kb.closures):
        known = clo.strict | clo.strict.T | clo.indiff
        for x, y in np.argwhere(base & ~known):
            q = Question(int(x), int(y), c)
            (q2 if status[y] == 2 else q1).add(q)
    return CandidateSets(frozenset(q1), frozenset(q2))


@dataclass
class PairState:
    """The object pair a pair-sticking strategy is working on."""

    x: int
    y: int
    remaining: list[int]


def select_random_q(cands: CandidateSets, rng: SplitMix64) -> Question:
    """Uniform candidate from tier 1 when nonempty, else tier 2."""
    pool = sorted(cands.q1) if cands.q1 else sorted(cands.q2)
    if not pool:
        raise Exhausted("no candidate question left")
    return pool[rng.randint(len(pool))]


def _pair_questions(cands: CandidateSets, x: int, y: int) -> dict[int, Question]:
    """The pair's open criteria, each mapped to a candidate orientation.

    Prefers the (x, y) orientation when both are candidates.
    """
    out: dict[int, Question] = {}
    for q in cands.union():
        if {q.x, q.y} == {x, y} and (q.c not in out or q.x == x):
            out[q.c] = q
    return out


def select_random_p(
    state: PairState | None, cands: CandidateSets, rng: SplitMix64
) -> tuple[Question, PairState]:
    """Keep comparing the current pair; draw a new random pair once it is done.

    New pairs are drawn uniformly among pairs possessing candidate questions,
    tier-1 pairs before tier-2 pairs, then a uniform open criterion.
    """
    if not cands:
        raise Exhausted("no candidate question left")
    if state is not None:
        open_qs = _pair_questions(cands, state.x, state.y)
        if open_qs:
            crits = sorted(open_qs)
            c = crits[rng.randint(len(crits))]
            return open_qs[c], PairState(state.x, state.y, crits)
    tier = cands.q1 if cands.q1 else cands.q2
    pairs = sorted({(min(q.x, q.y), max(q.x, q.y)) for q in tier})
    u, v = pairs[rng.randint(len(pairs))]
    open_qs = _pair_questions(cands, u, v)
    crits = sorted(open_qs)
    c = crits[rng.randint(len(crits))]
    q = open_qs[c]
    return q, PairState(q.x, q.y, crits)


def criterion_score(kb: KnowledgeBase, x: int, y: int, c: int) -> int:
    """How likely x beats y on c, judged from standings derived so far.

    An object's standing on a criterion worsens with every object preferred
    over it or indifferent to it, and improves with every object it is
    preferred over; the score is y's standing deficit minus x's.  Questions
    are asked in decreasing score order so a comparison refuting y's
    dominance surfaces early.
    """
    badness_y = kb.in_deg[c, y] + kb.ind_deg[c, y] - kb.out_deg[c, y]
    badness_x = kb.in_deg[c, x] + kb.ind_deg[c, x] - kb.out_deg[c, x]
    return int(badness_y - badness_x)


def _order_criteria(kb: KnowledgeBase, x: int, y: int, crits) -> list[int]:
    return sorted(crits, key=lambda c: (-criterion_score(kb, x, y, c), c))


def frq_select(
    kb: KnowledgeBase, cands: CandidateSets, use_mo: bool = True
) -> tuple[Question, PairState]:
    """Pick the oriented pair with the fewest remaining questions.

    Ties prefer the x that has dominated the fewest other objects, then the
    y that has dominated the most, then the smallest (x, y) indices.  The
    pair's criteria are ordered by decreasing score, ties by index.
    """
    if not cands:
        raise Exhausted("no candidate question left")
    if use_mo:
        tier = cands.q1 if cands.q1 else cands.q2
    else:
        tier = cands.union()
    groups: dict[tuple[int, int], list[int]] = {}
    for q in tier:
        groups.setdefault((q.x, q.y), []).append(q.c)
    d = kb.dominated_counts()
    best_pair = min(
        groups, key=lambda p: (len(groups[p]), int(d[p[0]]), -int(d[p[1]]), p[0], p[1])
    )
    x, y = best_pair
    ordered = _order_criteria(kb, x, y, groups[best_pair])
    return Question(x, y, ordered[0]), PairState(x, y, ordered)


class RandomQStrategy:
    """Uniform question selection, with candidate filtering and macro-ordering
    individually switchable (the +/-CQ +/-MO ablation grid)."""

    def __init__(self, use_cq: bool = True, use_mo: bool = True):
        self.use_cq = use_cq
        self.use_mo = use_mo
        self.kind = {
            (True, True): "randomq",
            (True, False): "cq-nomo",
            (False, True): "nocq-mo",
            (False, False): "nocq-nomo",
        }[(use_cq, use_mo)]
        self.exhaustive = False
        self.needs_candidates = use_cq

    def select(
        self, kb: KnowledgeBase, partition: Partition, cands: CandidateSets | None, rng: SplitMix64
    ) -> Question:
        if self.use_cq:
            assert cands is not None
            if self.use_mo:
                return select_random_q(cands, rng)
            pool = sorted(cands.union())
        else:
            pool = _unknown_questions(kb)
            if self.use_mo:
                status = partition.status
                tier1 = [q for q in pool if status[q.x] != 2 or status[q.y] != 2]
                pool = tier1 if tier1 else pool
        if not pool:
            raise Exhausted("no open question left")
        return pool[rng.randint(len(pool))]

    def state(self) -> dict:
        return {}

    def restore(self, state: dict) -> None:
        pass


def _unknown_questions(kb: KnowledgeBase) -> list[Question]:
    """All orientation-normalized questions whose outcome is not derivable."""
    pool: list[Question] = []
    for c, clo in enumerate(kb.closures):
        known = clo.strict | clo.strict.T | clo.indiff
        for u, v in np.argwhere(~known):
            if u < v:
                pool.append(Question(int(u), int(v), c))
    pool.sort()
    return pool


class RandomPStrategy:
    """Stick with a random object pair until no candidate question remains."""

    def __init__(self, use_mo: bool = True):
        self.use_mo = use_mo
        self.kind = "randomp"
        self.exhaustive = False
        self.needs_candidates = True
        self.pair: tuple[int, int] | None = None

    def select(
        self, kb: KnowledgeBase, partition: Partition, cands: CandidateSets | None, rng: SplitMix64
    ) -> Question:
        assert cands is not None
        if not self.use_mo:
            cands = CandidateSets(cands.union(), frozenset())
        state = PairState(*self.pair, []) if self.pair is not None else None
        q, new_state = select_random_p(state, cands, rng)
        self.pair = (new_state.x, new_state.y)
        return q

    def state(self) -> dict:
        return {"pair": list(self.pair) if self.pair else None}

    def restore(self, state: dict) -> None:
        pair = state.get("pair")
        self.pair = (pair[0], pair[1]) if pair else None


class FRQStrategy:
    """Fewest-remaining-questions pair selection with scored criterion order.

    Criterion scores are recomputed from the current closure before every
    question of the active pair, so later outcomes can reorder what remains.
    """

    def __init__(self, use_mo: bool = True):
        self.use_mo = use_mo
        self.kind = "frq"
        self.exhaustive = False
        self.needs_candidates = True
        self.active: tuple[int, int] | None = None

    def select(
        self, kb: KnowledgeBase, partition: Partition, cands: CandidateSets | None, rng: SplitMix64
    ) -> Question:
        assert cands is not None
        if not cands:
            raise Exhausted("no candidate question left")
        if self.active is not None:
            x, y = self.active
            open_qs = {q.c: q for q in cands.union() if (q.x, q.y) == (x, y)}
            if not open_qs:
                open_qs = {q.c: q for q in cands.union() if (q.x, q.y) == (y, x)}
                if open_qs:
                    x, y = y, x
                    self.active = (x, y)
            if open_qs:
                ordered = _order_criteria(kb, x, y, open_qs)
                return open_qs[ordered[0]]
            self.active = None
        q, state = frq_select(kb, cands, use_mo=self.use_mo)
        self.active = (state.x, state.y)
        return q

    def state(self) -> dict:
        return {"active": list(self.active) if self.active else None}

    def restore(self, state: dict) -> None:
        active = state.get("active")
        self.active = (active[0], active[1]) if active else None


class BruteForceStrategy:
    """Ask every question in a fixed criterion-major order, ignoring termination."""

    def __init__(self):
        self.kind = "bruteforce"
        self.exhaustive = True
        self.needs_candidates = False
        self.ptr = 0

    def select(
        self, kb: KnowledgeBase, partition: Partition, cands: CandidateSets | None, rng: SplitMix64
    ) -> Question:
        n = kb.n
        pairs_per_criterion = n * (n - 1) // 2
        total = kb.n_criteria * pairs_per_criterion
        if self.ptr >= total:
            raise Exhausted("all questions asked")
        c, rank = divmod(self.ptr, pairs_per_criterion)
        self.ptr += 1
        u = 0
        remaining = rank
        row = n - 1
        while remaining >= row:
            remaining -= row
            u += 1
            row -= 1
        v = u + 1 + remaining
        return Question(u, v, c)

    def state(self) -> dict:
        return {"ptr": self.ptr}

    def restore(self, state: dict) -> None:
        self.ptr = int(state.get("ptr", 0))


STRATEGY_NAMES = (
    "bruteforce",
    "randomq",
    "randomp",
    "frq",
    "cq-nomo",
    "nocq-mo",
    "nocq-nomo",
)


def make_strategy(kind: str, use_cq: bool | None = None, use_mo: bool | None = None):
    """Build a strategy by name; ablation flags may override the defaults.

    RandomP and FRQ require candidate filtering (pair sticking is defined
    over candidate questions).
    """
    kind = kind.lower()
    if kind == "bruteforce":
        return BruteForceStrategy()
    if kind == "randomp":
        if use_cq is False:
            raise ValueError("randomp requires candidate filtering")
        return RandomPStrategy(use_mo=True if use_mo is None else use_mo)
    if kind == "frq":
        if use_cq is False:
            raise ValueError("frq requires candidate filtering")
        return FRQStrategy(use_mo=True if use_mo is None else use_mo)
    flag_defaults = {
        "randomq": (True, True),
        "cq-nomo": (True, False),
        "nocq-mo": (False, True),
        "nocq-nomo": (False, False),
    }
    if kind not in flag_defaults:
        raise ValueError(f"unknown strategy {kind!r}; expected one of {STRATEGY_NAMES}")
    cq, mo = flag_defaults[kind]
    return RandomQStrategy(
        use_cq=cq if use_cq is None else use_cq,
        use_mo=mo if use_mo is None else use_mo,
    )


@dataclass(frozen=True)
class TranscriptEntry:
    question: Question
    outcome: Outcome
    source: str  # "asked" | "resolved" | "derived"
    recorded: bool


@dataclass
class Transcript:
    """Everything a framework run did, in order.

    ``posed`` counts questions put to the answer source (BruteForce poses
    questions whose outcome was already derivable; those are not recorded).
    ``recorded`` counts outcomes entering the knowledge base and ``derived``
    the strict facts added by transitivity on top of them.
    """

    problem: Problem
    strategy: str
    entries: list[TranscriptEntry] = field(default_factory=list)
    final: Partition | None = None
    posed: int = 0
    recorded: int = 0
    derived: int = 0

    def questions(self) -> list[Question]:
        return [e.question for e in self.entries if e.source != "derived"]


class AnswerSource:
    """Synchronous answer contract: eventually yield a finalized outcome."""

    def answer(self, q: Question) -> Outcome:  # pragma: no cover - interface
        raise NotImplementedError


def run_framework(
    problem: Problem,
    strategy,
    answers,
    rng: SplitMix64 | None = None,
    *,
    check_property2: bool = True,
) -> Transcript:
    """Iterate select -> ask -> resolve -> record -> repartition to termination.

    The loop is strictly sequential: the next question is selected only
    after the previous outcome is finalized.  With ``check_property2`` the
    equivalence "candidate set empty iff no object undetermined" is asserted
    at every iteration.
    """
    rng = rng or SplitMix64(0)
    kb = KnowledgeBase(problem)
    partition = kb.compute_partition()
    t = Transcript(problem=problem, strategy=strategy.kind)
    while True:
        terminal = is_terminal(partition)
        cands = None
        if check_property2 or strategy.needs_candidates:
            cands = candidate_sets(kb, partition)
        if check_property2:
            assert bool(cands) != terminal, (
                f"candidate set and termination test disagree: "
                f"candidates={'present' if cands else 'empty'} "
                f"with |O?|={len(partition.unknown)}"
            )
        if strategy.exhaustive:
            try:
                q = strategy.select(kb, partition, cands, rng)
            except Exhausted:
                break
        else:
            if terminal:
                break
            q = strategy.select(kb, partition, cands, rng)
        t.posed += 1
        raw = answers.answer(q)
        known = kb.outcome_of(q.x, q.y, q.c)
        if known is not None:
            # Contradiction prevention: the derivable outcome stands and the
            # redundant answer is discarded (only BruteForce reaches this).
            t.entries.append(TranscriptEntry(q, known, "asked", recorded=False))
            continue
        final = resolve_contradiction(kb, q, raw)
        source = "asked" if final is raw else "resolved"
        derived = kb.record_outcome(q, final)
        t.entries.append(TranscriptEntry(q, final, source, recorded=True))
        t.recorded += 1
        t.derived += len(derived)
        for fact in derived:
            fq, fo = fact.as_question_outcome()
            t.entries.append(TranscriptEntry(fq, fo, "derived", recorded=False))
        new_partition = kb.compute_partition()
        assert partition.confirmed <= new_partition.confirmed, "confirmed set shrank"
        assert partition.dominated <= new_partition.dominated, "dominated set shrank"
        partition = new_partition
    t.final = partition
    return t


def replay_transcript(problem: Problem, transcript: Transcript):
    """Yield (entry, kb, partition) while re-applying recorded outcomes.

    The partition reflects the knowledge after the entry; derived entries
    are yielded with the state of their recording question.
    """
    kb = KnowledgeBase(problem)
    partition = kb.compute_partition()
    for entry in transcript.entries:
        if entry.recorded:
            kb.record_outcome(entry.question, entry.outcome)
            partition = kb.compute_partition()
        yield entry, kb, partition


def assert_candidate_only(transcript: Transcript) -> bool:
    """Whether every posed question was a candidate at its selection moment."""
    kb = KnowledgeBase(transcript.problem)
    partition = kb.compute_partition()
    for entry in transcript.entries:
        if entry.source == "derived":
            continue
        q = entry.question
        if kb.outcome_of(q.x, q.y, q.c) is not None:
            return False
        if q.x not in partition.unknown:
            return False
        if not kb.may_dominate(q.y, q.x):
            return False
        if entry.recorded:
            kb.record_outcome(q, entry.outcome)
            partition = kb.compute_partition()
    return True
