"""From raw crowd votes to consistent outcomes.

Replays the bundled 15-row story vote table (five workers per question,
60% threshold), checks the resulting relation for contradiction cycles,
and shows outcome resolution repairing a contradictory answer stream.
"""

import numpy as np

from paretoelicit import (
    AggregationConfig,
    KnowledgeBase,
    Outcome,
    Question,
    aggregate,
    count_contradiction_cycles,
    make_problem,
    movie_story_votes,
    resolve_contradiction,
)

table = movie_story_votes()
cfg = AggregationConfig(k_min=5, theta=0.6)
problem = table.problem

print("Aggregating the story vote table (k=5, theta=0.6):")
n = problem.n_objects
graph = np.zeros((n, n), dtype=int)
for q in sorted(table.tallies):
    tally = table.tallies[q]
    outcome = aggregate(tally, cfg)
    text = {
        Outcome.X_BETTER: f"{problem.objects[q.x]} > {problem.objects[q.y]}",
        Outcome.Y_BETTER: f"{problem.objects[q.y]} > {problem.objects[q.x]}",
        Outcome.INDIFFERENT: f"{problem.objects[q.x]} ~ {problem.objects[q.y]}",
    }[outcome]
    votes = f"({tally.prefer_x}/{tally.indifferent}/{tally.prefer_y})"
    print(f"  {problem.describe(q):<14} {votes:>9}  ->  {text}")
    if outcome is Outcome.X_BETTER:
        graph[q.x, q.y] = 1
    elif outcome is Outcome.Y_BETTER:
        graph[q.y, q.x] = 1

print("\nContradiction cycles in the aggregated relation:",
      count_contradiction_cycles(graph))

print("\nOutcome resolution in action:")
kb = KnowledgeBase(make_problem(["x", "y", "z"], ["c"]))
kb.record_outcome(Question(0, 1, 0), Outcome.INDIFFERENT)   # x ~ y
kb.record_outcome(Question(1, 2, 0), Outcome.X_BETTER)      # y > z
proposed = Outcome.Y_BETTER                                  # crowd says z > x
final = resolve_contradiction(kb, Question(0, 2, 0), proposed)
print("  knowing x ~ y and y > z, a crowd answer z > x is replaced by:",
      final.value)
