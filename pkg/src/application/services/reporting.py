"""Fold report tables: per-fold CSV rows and the cross-run comparison."""

from collections.abc import Sequence

from domain.exceptions import ContractViolation
from domain.value_objects import METRIC_NAMES, FoldReport, FoldScores

FOLD_COLUMNS = (
    "smell", "run", "fold", "precision", "recall", "f1", "mcc", "tp", "fp", "fn", "tn",
)  # fmt: skip
COMPARISON_COLUMNS = (
    "smell", "run", "protocol", "folds", "precision", "recall", "f1", "mcc",
)  # fmt: skip
_HEADERS = {
    "smell": "Smell",
    "run": "Run",
    "protocol": "Protocol",
    "folds": "Folds",
    "precision": "Precision",
    "recall": "Recall",
    "f1": "F1",
    "mcc": "MCC",
}
MISSING = "n/a"


def format_score(value: float | None) -> str:
    """Four decimals, the way comparison tables print scores."""
    return MISSING if value is None else f"{value:.4f}"


def fold_rows(report: FoldReport) -> list[dict[str, str]]:
    """One CSV row per fold at full precision, then the aggregate row."""
    rows: list[dict[str, str]] = []
    for fold in report.folds:
        row = {"smell": report.smell.value, "run": report.run, "fold": str(fold.index)}
        scores = fold.scores.as_tuple() if fold.scores else (None,) * 4
        for name, value in zip(METRIC_NAMES, scores, strict=True):
            row[name] = "" if value is None else repr(value)
        counts = (
            (fold.confusion.tp, fold.confusion.fp, fold.confusion.fn, fold.confusion.tn)
            if fold.confusion
            else (None,) * 4
        )
        for name, count in zip(("tp", "fp", "fn", "tn"), counts, strict=True):
            row[name] = "" if count is None else str(count)
        rows.append(row)

    aggregate = report.aggregate
    mean_row = {column: "" for column in FOLD_COLUMNS}
    mean_row.update({"smell": report.smell.value, "run": report.run, "fold": "mean"})
    if aggregate is not None:
        for name, value in zip(METRIC_NAMES, aggregate.as_tuple(), strict=True):
            mean_row[name] = repr(value)
    rows.append(mean_row)
    return rows


def _comparison_row(report: FoldReport, label: str) -> dict[str, str]:
    scores: FoldScores | None = report.aggregate
    values = scores.as_tuple() if scores else (None,) * 4
    row = {
        "smell": report.smell.alias,
        "run": label,
        "protocol": report.protocol.value,
        "folds": f"{report.completed_folds}/{len(report.folds)}",
    }
    for name, value in zip(METRIC_NAMES, values, strict=True):
        row[name] = format_score(value)
    return row


def render_report(
    reports: Sequence[FoldReport], labels: Sequence[str] | None = None
) -> tuple[str, list[dict[str, str]]]:
    """Aligned comparison table of aggregate scores, one row per run.

    The CSV rows carry exactly the strings printed in the table.

    Args:
        reports: Reports to compare, in display order
        labels: Run names to print (defaults to each report's own name)

    Returns:
        The rendered table and its rows for the CSV twin

    Raises:
        ContractViolation: if no report is given or labels do not match
    """
    if not reports:
        raise ContractViolation("render_report needs at least one report")
    names = list(labels) if labels is not None else [report.run for report in reports]
    if len(names) != len(reports):
        raise ContractViolation(f"{len(names)} labels for {len(reports)} reports")

    rows = [_comparison_row(report, name) for report, name in zip(reports, names, strict=True)]
    widths = {
        column: max(len(_HEADERS[column]), *(len(row[column]) for row in rows))
        for column in COMPARISON_COLUMNS
    }
    text_columns = ("smell", "run", "protocol")

    def line(cells: dict[str, str]) -> str:
        parts = [
            cells[c].ljust(widths[c]) if c in text_columns else cells[c].rjust(widths[c])
            for c in COMPARISON_COLUMNS
        ]
        return "  ".join(parts).rstrip()

    header = line(_HEADERS)
    rule = "  ".join("-" * widths[c] for c in COMPARISON_COLUMNS)
    body = [line(row) for row in rows]
    return "\n".join([header, rule, *body]) + "\n", rows
