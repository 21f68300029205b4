from __future__ import annotations

import io

import pytest

from paretoelicit import run_cell, run_experiment, summarize, synthetic_truth
from paretoelicit.experiment import CSV_COLUMNS, format_summary, rows_to_csv


def test_run_cell_verifies_and_reports():
    truth = synthetic_truth(12, 3, 0)
    row = run_cell(truth, "frq", 0)
    assert row.n == 12 and row.criteria == 3
    assert row.questions_asked >= row.lower_bound
    assert row.pareto_count >= 0


def test_bruteforce_asks_formula_exactly():
    truth = synthetic_truth(10, 3, 1)
    row = run_cell(truth, "bruteforce", 1)
    assert row.questions_asked == 135


def test_csv_header_and_incremental_rows():
    buf = io.StringIO()
    rows = run_experiment([(8, 2)], ["frq", "randomq"], [0, 1], out=buf)
    lines = buf.getvalue().strip().split("\n")
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 1 + len(rows)


def test_csv_byte_stable_for_fixed_seeds():
    """Identical config and seeds give identical CSV, runtime column aside
    (wall-clock time is inherently nondeterministic)."""

    def strip_runtime(csv_text: str) -> list[str]:
        return [",".join(line.split(",")[:-1]) for line in csv_text.strip().split("\n")]

    a = rows_to_csv(run_experiment([(10, 2)], ["frq", "randomp"], range(3)))
    b = rows_to_csv(run_experiment([(10, 2)], ["frq", "randomp"], range(3)))
    assert strip_runtime(a) == strip_runtime(b)


def test_randomq_to_bruteforce_ratio_at_500():
    """Candidate filtering plus macro-ordering prunes over 95% of the
    brute-force questions by n=500."""
    truth = synthetic_truth(500, 4, 0)
    row = run_cell(truth, "randomq", 0)
    brute = 4 * 500 * 499 // 2
    assert row.questions_asked / brute < 0.05


def test_summary_contains_ratios():
    rows = run_experiment([(8, 2)], ["frq", "bruteforce"], range(2))
    summary = summarize(rows)
    by_name = {s["strategy"]: s for s in summary}
    assert by_name["bruteforce"]["ratio_to_bruteforce"] == pytest.approx(1.0)
    assert by_name["frq"]["mean_asked"] <= by_name["bruteforce"]["mean_asked"]
    text = format_summary(summary)
    assert "frq" in text and "bruteforce" in text
