"""Synthetic ground truths, the brute-force Pareto oracle, and the lower bound.

Everything here is deliberately independent of the elicitation engine: the
oracle computes Pareto-optimality by direct pairwise scans over a complete
ground truth, so framework results can be checked against it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .aggregation import AggregationConfig, VoteTally, aggregate
from .model import Outcome, Problem, Question
from .rng import SplitMix64


@dataclass(frozen=True)
class GroundTruth:
    """Complete, consistent per-criterion strict partial orders.

    ``rel[c, u, v]`` is True iff u > v on criterion c.  A pair with no strict
    fact either way is indifferent, so every pair has exactly one outcome.
    """

    problem: Problem
    rel: np.ndarray  # (criteria, n, n) bool

    def outcome(self, q: Question) -> Outcome:
        if self.rel[q.c, q.x, q.y]:
            return Outcome.X_BETTER
        if self.rel[q.c, q.y, q.x]:
            return Outcome.Y_BETTER
        return Outcome.INDIFFERENT

    def check_invariants(self) -> None:
        for c in range(self.problem.n_criteria):
            r = self.rel[c]
            assert not r.diagonal().any(), "irreflexivity violated"
            assert not (r & r.T).any(), "asymmetry violated"
            closed = (r.astype(np.uint8) @ r.astype(np.uint8)) > 0
            assert not (closed & ~r).any(), "transitivity violated"


def pareto_oracle(truth: GroundTruth) -> frozenset[int]:
    """All objects not dominated by any other, by direct pairwise scan.

    u dominates v iff v is better on no criterion and u is better on at
    least one; completeness of the truth makes "not better" equivalent to
    "u better or indifferent".
    """
    rel = truth.rel
    # dom[u, v]: no criterion has v > u, and some criterion has u > v.
    dom = (~rel.transpose(0, 2, 1)).all(axis=0) & rel.any(axis=0)
    dominated = dom.any(axis=0)
    return frozenset(np.flatnonzero(~dominated).tolist())


def normal_scores(n: int, n_criteria: int, rng: SplitMix64) -> np.ndarray:
    """Standard-normal latent scores per (object, criterion) via Box-Muller."""
    total = n * n_criteria
    u1 = np.clip(rng.random_array(total), 1e-12, None)
    u2 = rng.random_array(total)
    z = np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)
    return z.reshape(n, n_criteria)


def performance_scores(
    n: int, n_criteria: int, rng: SplitMix64, quality_weight: float = 0.5
) -> np.ndarray:
    """Correlated normal scores mimicking per-category performance statistics.

    Real comparison categories are correlated through overall quality (a
    strong subject scores well across categories), so each score mixes a
    per-object quality factor with per-criterion noise.  Marginals stay
    standard normal; the cross-criterion correlation equals
    ``quality_weight``.
    """
    if not (0.0 <= quality_weight < 1.0):
        raise ValueError("quality_weight must lie in [0, 1)")
    raw = normal_scores(n, n_criteria + 1, rng)
    quality = raw[:, :1]
    noise = raw[:, 1:]
    return np.sqrt(quality_weight) * quality + np.sqrt(1.0 - quality_weight) * noise


def gen_perturbed_truth(problem: Problem, scores: np.ndarray, rng: SplitMix64) -> GroundTruth:
    """Sample preference relations from latent scores with edge perturbation.

    For each criterion and each pair with a score gap d > 0, the better
    object wins with probability 1 - exp(-d); otherwise the pair is left
    indifferent.  Tied scores are always indifferent.  Per-pair sampling can
    break transitivity (x>y and y>z sampled, x~z sampled), so the sampled
    edges are transitively closed afterwards; since every sampled edge points
    down the score order, the closure never creates a cycle, and any sampled
    indifference that conflicts is thereby upgraded to the derived strict
    fact.
    """
    n, n_criteria = problem.n_objects, problem.n_criteria
    if scores.shape != (n, n_criteria):
        raise ValueError(f"scores must have shape ({n}, {n_criteria})")
    rel = np.zeros((n_criteria, n, n), dtype=bool)
    us, vs = np.triu_indices(n, k=1)
    for c in range(n_criteria):
        col = scores[:, c]
        # One draw per unordered pair, in (u, v) lexicographic order.
        draws = rng.random_array(len(us))
        gap = np.abs(col[us] - col[vs])
        keep = (gap > 0) & (draws < 1.0 - np.exp(-gap))
        hi = np.where(col[us] > col[vs], us, vs)
        lo = np.where(col[us] > col[vs], vs, us)
        edges = np.zeros((n, n), dtype=bool)
        edges[hi[keep], lo[keep]] = True
        rel[c] = _close_dag(edges, col)
    truth = GroundTruth(problem, rel)
    return truth


def _close_dag(edges: np.ndarray, scores: np.ndarray) -> np.ndarray:
    """Transitive closure of edges known to point down the score order."""
    n = edges.shape[0]
    order = np.argsort(scores, kind="stable")  # ascending: all successors first
    reach = edges.copy()
    for u in order:
        nbrs = np.flatnonzero(edges[u])
        if nbrs.size:
            reach[u] |= reach[nbrs].any(axis=0)
    return reach


def truth_from_edges(problem: Problem, edges_per_criterion: dict[str, list[tuple[str, str]]]) -> GroundTruth:
    """Build a ground truth from per-criterion strict edge lists (labels).

    Edges are transitively closed; unlisted pairs are indifferent.
    """
    n = problem.n_objects
    rel = np.zeros((problem.n_criteria, n, n), dtype=bool)
    for c_label, edges in edges_per_criterion.items():
        c = problem.criterion_index[c_label]
        adj = np.zeros((n, n), dtype=bool)
        for better, worse in edges:
            adj[problem.object_index[better], problem.object_index[worse]] = True
        reach = adj.copy()
        while True:
            step = (reach.astype(np.uint8) @ reach.astype(np.uint8)) > 0
            merged = reach | step
            if (merged == reach).all():
                break
            reach = merged
        rel[c] = reach
    truth = GroundTruth(problem, rel)
    try:
        truth.check_invariants()
    except AssertionError as exc:
        raise ValueError(f"edge lists do not form strict partial orders: {exc}") from exc
    return truth


def lower_bound(n: int, c: int, k: int) -> int:
    """Minimum number of pairwise questions needed to find all k Pareto objects.

    (n - k) * c + 2 (k - 1) for k >= 1; for k = 0 the tighter bound n * c.
    """
    if c < 1:
        raise ValueError("at least one criterion required")
    if not (0 <= k <= n):
        raise ValueError("k must lie in [0, n]")
    if k == 0:
        return n * c
    return (n - k) * c + 2 * (k - 1)


class TruthAnswerSource:
    """Answers questions from a ground truth, optionally with noisy voters.

    With ``noise`` = 0 the truth outcome is returned directly.  Otherwise k
    simulated respondents each report the truth outcome, independently
    replaced by a uniformly random other choice with probability ``noise``;
    the votes are aggregated under ``cfg``.
    """

    def __init__(
        self,
        truth: GroundTruth,
        noise: float = 0.0,
        k: int = 10,
        rng: SplitMix64 | None = None,
        cfg: AggregationConfig | None = None,
    ):
        if not (0.0 <= noise < 0.5):
            raise ValueError("noise must lie in [0, 0.5)")
        self.truth = truth
        self.noise = noise
        self.k = k
        self.rng = rng or SplitMix64(0)
        self.cfg = cfg or AggregationConfig(k_min=min(k, 5), theta=0.6)

    def answer(self, q: Question) -> Outcome:
        true_outcome = self.truth.outcome(q)
        if self.noise == 0.0:
            return true_outcome
        choices = [Outcome.X_BETTER, Outcome.Y_BETTER, Outcome.INDIFFERENT]
        counts = {o: 0 for o in choices}
        for _ in range(self.k):
            vote = true_outcome
            if self.rng.random() < self.noise:
                others = [o for o in choices if o is not true_outcome]
                vote = others[self.rng.randint(2)]
            counts[vote] += 1
        tally = VoteTally(
            prefer_x=counts[Outcome.X_BETTER],
            prefer_y=counts[Outcome.Y_BETTER],
            indifferent=counts[Outcome.INDIFFERENT],
        )
        return aggregate(tally, self.cfg)


def count_contradiction_cycles(outcomes: np.ndarray, max_n: int = 14) -> int:
    """Count elementary cycles evidencing inconsistent outcomes on one criterion.

    ``outcomes`` is an (n, n) int matrix over a complete comparison:
    outcomes[u, v] == 1 means u > v (and outcomes[v, u] must be 0);
    a pair with 0 both ways is an undirected (indifference) edge.

    A contradiction is an elementary cycle containing at most one undirected
    edge whose directed edges all point the same way around the cycle.  Each
    cycle is counted once (canonical start at its minimum vertex).  Depth
    first enumeration; intended for small diagnostic instances.
    """
    n = outcomes.shape[0]
    if n > max_n:
        raise ValueError(f"cycle enumeration is exponential; n={n} exceeds guard {max_n}")
    directed = outcomes.astype(bool)
    undirected = ~directed & ~directed.T
    np.fill_diagonal(undirected, False)

    count = 0

    def extend(start: int, current: int, visited: set[int], used_undirected: bool, length: int) -> None:
        nonlocal count
        for nxt in range(n):
            if nxt == start:
                if length >= 2 and (directed[current, start] or (not used_undirected and undirected[current, start])):
                    count += 1
                continue
            if nxt <= start or nxt in visited:
                continue
            if directed[current, nxt]:
                visited.add(nxt)
                extend(start, nxt, visited, used_undirected, length + 1)
                visited.remove(nxt)
            elif undirected[current, nxt] and not used_undirected:
                visited.add(nxt)
                extend(start, nxt, visited, True, length + 1)
                visited.remove(nxt)

    for start in range(n):
        extend(start, start, {start}, False, 0)
    return count
