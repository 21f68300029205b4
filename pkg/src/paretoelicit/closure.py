"""Per-criterion store of strict preferences under incremental transitive closure.

The strict relation is kept transitively closed at all times: inserting an
edge u > v adds every pair from (predecessors(u) + u) x (successors(v) + v)
that is not already present.  Indifference is recorded but never derived;
it does not participate in transitivity.
"""

from __future__ import annotations

import numpy as np

from .errors import DirectContradiction


class PreferenceClosure:
    """Strict partial-order knowledge for one criterion over n objects.

    ``strict[u, v]`` is True iff u > v is derivable from recorded outcomes.
    ``indiff[u, v]`` is True iff the pair was recorded indifferent (symmetric).
    """

    __slots__ = ("n", "strict", "indiff")

    def __init__(self, n: int):
        self.n = n
        self.strict = np.zeros((n, n), dtype=bool)
        self.indiff = np.zeros((n, n), dtype=bool)

    def knows_strict(self, u: int, v: int) -> bool:
        return bool(self.strict[u, v])

    def knows_indifferent(self, u: int, v: int) -> bool:
        return bool(self.indiff[u, v])

    def new_pairs_if_inserted(self, u: int, v: int) -> np.ndarray:
        """Pairs that inserting u > v would add to the closure (dry run).

        Returns an array of (p, s) index pairs in row-major order; the
        (u, v) edge itself is included.  The closure is not modified.
        """
        preds = self.strict[:, u].copy()
        preds[u] = True
        succs = self.strict[v, :].copy()
        succs[v] = True
        new = np.outer(preds, succs) & ~self.strict
        return np.argwhere(new)

    def insert_strict(self, u: int, v: int) -> list[tuple[int, int]]:
        """Record u > v and close transitively.

        Refuses inserts that would corrupt the store: a derivable reverse, a
        cycle, or a derived strict fact over a pair recorded indifferent (the
        latter is the contradiction that outcome resolution must repair
        before recording).  Returns the derived pairs (everything newly
        added except (u, v) itself), row-major for deterministic transcripts.
        """
        if self.strict[v, u]:
            raise DirectContradiction(f"reverse of {u}>{v} already derivable")
        if self.indiff[u, v]:
            raise DirectContradiction(f"{u}~{v} already recorded; {u}>{v} conflicts")
        pairs = self.new_pairs_if_inserted(u, v)
        if pairs.size:
            if np.any(pairs[:, 0] == pairs[:, 1]):
                # A reflexive derivation means the insert would create a cycle.
                raise DirectContradiction(f"inserting {u}>{v} would create a cycle")
            if self.indiff[pairs[:, 0], pairs[:, 1]].any():
                raise DirectContradiction(
                    f"inserting {u}>{v} would derive a strict fact over a pair "
                    "recorded indifferent"
                )
            self.strict[pairs[:, 0], pairs[:, 1]] = True
        return [(int(p), int(s)) for p, s in pairs if not (p == u and s == v)]

    def insert_indifferent(self, u: int, v: int) -> None:
        if self.strict[u, v] or self.strict[v, u]:
            raise DirectContradiction(f"strict fact between {u} and {v} already derivable")
        self.indiff[u, v] = True
        self.indiff[v, u] = True

    def check_invariants(self) -> None:
        """Raise AssertionError unless the strict relation is a valid closure."""
        assert not self.strict.diagonal().any(), "irreflexivity violated"
        assert not (self.strict & self.strict.T).any(), "asymmetry violated"
        closed = (self.strict.astype(np.uint8) @ self.strict.astype(np.uint8)) > 0
        assert not (closed & ~self.strict).any(), "transitivity violated"
        assert (self.indiff == self.indiff.T).all(), "indifference not symmetric"
        assert not (self.indiff & (self.strict | self.strict.T)).any(), (
            "indifference overlaps a strict fact"
        )
        assert not self.indiff.diagonal().any(), "reflexive indifference recorded"


def reachability_closure(n: int, edges: list[tuple[int, int]]) -> np.ndarray:
    """All-pairs reachability by repeated boolean matrix squaring.

    Independent oracle for the incremental closure; shares no code path
    with PreferenceClosure.insert_strict.
    """
    adj = np.zeros((n, n), dtype=bool)
    for u, v in edges:
        adj[u, v] = True
    reach = adj.copy()
    while True:
        step = (reach.astype(np.uint8) @ reach.astype(np.uint8)) > 0
        combined = reach | step
        if (combined == reach).all():
            return reach
        reach = combined
