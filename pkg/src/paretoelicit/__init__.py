"""Pareto-optimal object finding through pairwise-comparison elicitation.

The package maintains per-criterion strict partial orders derived from
pairwise-comparison outcomes (with incremental transitive closure), asks as
few questions as possible via candidate-question filtering plus macro- and
micro-ordering heuristics, aggregates crowd votes into outcomes, and ships a
simulator with an independent Pareto oracle, a lower-bound analysis, and a
live answering service.
"""

from .aggregation import (
    INTERACTIVE_CONFIG,
    AggregationConfig,
    VoteTally,
    aggregate,
    filter_by_validation,
    resolve_contradiction,
)
from .closure import PreferenceClosure, reachability_closure
from .datasets import (
    VoteTable,
    VoteTableAnswerSource,
    dump_truth,
    triangle_truth,
    load_dataset,
    movie_problem,
    movie_story_votes,
    movie_truth,
)
from .errors import (
    AlreadyKnown,
    CorruptSnapshot,
    DirectContradiction,
    ElicitationError,
    Exhausted,
    IncompleteDataset,
    InsufficientVotes,
    InvalidSpec,
    SessionTerminal,
    StaleQuestion,
    UnknownSession,
    Unresolvable,
)
from .experiment import ExperimentRow, run_cell, run_experiment, summarize, synthetic_truth
from .knowledge import Fact, KnowledgeBase, Partition, is_terminal
from .model import Outcome, Problem, Question, Vote, make_problem
from .oracle import (
    GroundTruth,
    TruthAnswerSource,
    count_contradiction_cycles,
    gen_perturbed_truth,
    lower_bound,
    normal_scores,
    pareto_oracle,
    truth_from_edges,
)
from .report import export_dominance_graph, format_replay_table, transcript_jsonl
from .rng import SplitMix64, derive_seed
from .selection import (
    CandidateSets,
    PairState,
    Transcript,
    assert_candidate_only,
    candidate_sets,
    frq_select,
    make_strategy,
    replay_transcript,
    run_framework,
    select_random_p,
    select_random_q,
)
from .service import Session, SessionConfig, SessionStore, create_app, load_session

__version__ = "0.1.0"
