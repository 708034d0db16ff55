"""Report serialization: the fixed-schema CSV and the JSON variant that
embeds full body vertex data for reproduction."""

from __future__ import annotations

import csv
import json
from pathlib import Path

from .inequalities import FuzzResult, InequalityReport

CSV_COLUMNS = ["id", "dim", "r", "p", "i", "phi", "lhs", "rhs", "slack",
               "tolerance", "status", "approximate", "inputs_digest", "seed"]


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)

def report_row(report: InequalityReport) -> list:
    return [_cell(getattr(report, col)) for col in CSV_COLUMNS]

def write_reports_csv(reports, path) -> None:
    """Fixed header, minimal quoting, LF line endings, repr-exact floats --
    identical inputs produce byte-identical files."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for report in reports:
            writer.writerow(report_row(report))

def write_reports_json(reports, path) -> None:
    records = []
    for report in reports:
        record = {col: getattr(report, col) for col in CSV_COLUMNS}
        record["bodies"] = report.bodies_vertices
        records.append(record)
    Path(path).write_text(json.dumps(records, indent=1, sort_keys=True) + "\n")

def summary_lines(result: FuzzResult) -> list:
    lines = []
    for name, summary in sorted(result.summaries.items()):
        lines.append(
            f"{name}: trials={summary.trials} violations={summary.violations} "
            f"min_slack={summary.min_slack!r} argmin={summary.argmin_digest}")
        for slack, digest, seed in summary.worst:
            lines.append(f"  slack={slack!r} digest={digest} seed={seed}")
    if result.errors:
        lines.append(f"errors: {len(result.errors)} trial(s) failed")
    return lines
