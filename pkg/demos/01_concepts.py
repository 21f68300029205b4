"""Strict partial orders, dominance, and the three-way partition.

Walks the six-movie example: record comparison outcomes, watch the
transitive closure derive facts for free, and see objects move from
undetermined to confirmed-Pareto or confirmed-dominated.
"""

from paretoelicit import KnowledgeBase, Outcome, movie_problem

problem = movie_problem()
kb = KnowledgeBase(problem)

q = problem.question
print("Recording a few story outcomes...")
kb.record_outcome(q("c", "d", "story"), Outcome.X_BETTER)
derived = kb.record_outcome(q("d", "a", "story"), Outcome.X_BETTER)
print("  c > d and d > a recorded; derived by transitivity:",
      [(problem.objects[f.winner], problem.objects[f.loser]) for f in derived])

print("\nOutcome of (c, a) on story without asking:",
      kb.outcome_of(*q("c", "a", "story")))

print("\nDominance needs every criterion:")
kb.record_outcome(q("c", "d", "music"), Outcome.X_BETTER)
print("  c dominates d after story+music only?",
      kb.dominates(*[problem.object_index[o] for o in "cd"]))
kb.record_outcome(q("c", "d", "acting"), Outcome.INDIFFERENT)
print("  ...and with acting recorded indifferent?",
      kb.dominates(problem.object_index["c"], problem.object_index["d"]))

part = kb.compute_partition()
labels = lambda ids: sorted(problem.objects[i] for i in ids)
print("\nPartition now:")
print("  confirmed Pareto:", labels(part.confirmed))
print("  undetermined:   ", labels(part.unknown))
print("  dominated:      ", labels(part.dominated))
