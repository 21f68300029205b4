"""Human-facing output: dominance graphs, replay tables, transcript records."""

from __future__ import annotations

import json

from .knowledge import KnowledgeBase, Partition
from .model import Outcome, Problem, Question
from .selection import Transcript, replay_transcript


def export_dominance_graph(kb: KnowledgeBase, partition: Partition, draft: bool = False) -> str:
    """DOT digraph of the known dominance relation.

    One node per object (Pareto-confirmed nodes double-circled), an edge
    u -> v for every known domination.  No transitive reduction is applied:
    dominance is not transitive, so every edge carries information (cycles
    are rendered as-is).
    """
    problem = kb.problem
    lines = ["digraph dominance {"]
    if draft:
        lines.append("  // draft export: elicitation has not terminated")
    lines.append("  rankdir=TB;")
    for i, label in enumerate(problem.objects):
        shape = ' peripheries=2 style=bold' if i in partition.confirmed else ""
        lines.append(f'  "{label}" [label="{label}"{shape}];')
    for u in range(kb.n):
        for v in range(kb.n):
            if u != v and kb.dominates(u, v):
                lines.append(f'  "{problem.objects[u]}" -> "{problem.objects[v]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _outcome_text(problem: Problem, q: Question, o: Outcome) -> str:
    x, y, c = problem.objects[q.x], problem.objects[q.y], problem.criteria[q.c]
    if o is Outcome.X_BETTER:
        return f"{x} >[{c}] {y}"
    if o is Outcome.Y_BETTER:
        return f"{y} >[{c}] {x}"
    return f"{x} ~[{c}] {y}"


def format_replay_table(transcript: Transcript) -> str:
    """Iteration table in the style of the worked execution tables.

    Columns: iteration, finalized outcome, results derived by transitivity,
    and the partition sizes after the iteration.
    """
    problem = transcript.problem
    header = f"{'i':>4}  {'outcome':<24} {'derived results':<44} {'|Ok|':>4} {'|O?|':>4} {'|Ox|':>4}"
    lines = [header, "-" * len(header)]
    rows: list[dict] = []
    for entry, kb, partition in replay_transcript(problem, transcript):
        if entry.source == "derived":
            rows[-1]["derived"].append(_outcome_text(problem, entry.question, entry.outcome))
            continue
        text = _outcome_text(problem, entry.question, entry.outcome)
        if entry.source == "resolved":
            text += " (resolved)"
        if not entry.recorded:
            text += " (already known)"
        rows.append({"text": text, "derived": [], "sizes": partition.sizes()})
    for i, row in enumerate(rows, start=1):
        conf, unk, dom = row["sizes"]
        lines.append(_format_row(i, row["text"], row["derived"], conf, unk, dom))
    final = transcript.final
    if final is not None:
        pareto = sorted(problem.objects[i] for i in final.confirmed)
        lines.append("")
        lines.append(f"Pareto-optimal: {{{', '.join(pareto)}}}")
        lines.append(
            f"questions posed: {transcript.posed}  outcomes recorded: {transcript.recorded}  "
            f"derived by transitivity: {transcript.derived}"
        )
    return "\n".join(lines)


def _format_row(i: int, text: str, derived: list[str], conf: int, unk: int, dom: int) -> str:
    derived_text = ", ".join(derived)
    return f"{i:>4}  {text:<24} {derived_text:<44} {conf:>4} {unk:>4} {dom:>4}"


def transcript_jsonl(transcript: Transcript) -> str:
    """Line-delimited transcript records: iteration, question, outcome,
    source, and partition sizes after the iteration."""
    problem = transcript.problem
    lines = []
    i = 0
    for entry, kb, partition in replay_transcript(problem, transcript):
        if entry.source != "derived":
            i += 1
        conf, unk, dom = partition.sizes()
        lines.append(
            json.dumps(
                {
                    "iteration": i,
                    "x": problem.objects[entry.question.x],
                    "y": problem.objects[entry.question.y],
                    "c": problem.criteria[entry.question.c],
                    "outcome": entry.outcome.value,
                    "source": entry.source,
                    "recorded": entry.recorded,
                    "confirmed": conf,
                    "unknown": unk,
                    "dominated": dom,
                },
                separators=(",", ":"),
            )
        )
    return "\n".join(lines) + "\n"
