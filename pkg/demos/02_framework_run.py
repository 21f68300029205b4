"""One full framework run: FRQ on the six-movie fixture.

Reproduces the worked 17-question execution and prints the iteration table
(outcome, derived results, partition sizes per step) plus the dominance
graph of the final knowledge.
"""

from paretoelicit import (
    KnowledgeBase,
    SplitMix64,
    TruthAnswerSource,
    export_dominance_graph,
    format_replay_table,
    make_strategy,
    movie_truth,
    run_framework,
)

truth = movie_truth()
strategy = make_strategy("frq")
transcript = run_framework(truth.problem, strategy, TruthAnswerSource(truth), SplitMix64(0))

print(format_replay_table(transcript))

kb = KnowledgeBase(truth.problem)
for entry in transcript.entries:
    if entry.recorded:
        kb.record_outcome(entry.question, entry.outcome)
print("\nDominance graph (DOT):\n")
print(export_dominance_graph(kb, kb.compute_partition()))
