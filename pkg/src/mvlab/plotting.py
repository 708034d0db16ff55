"""Slack histograms for fuzz reports, rendered to SVG next to the CSV."""

from __future__ import annotations

from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "mvlab"

import matplotlib.pyplot as plt  # noqa: E402


def save_slack_histograms(reports, out_dir) -> dict:
    """One SVG per inequality id; returns {id: path}."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    by_id = defaultdict(list)
    for report in reports:
        by_id[report.id].append(report.slack)

    written = {}
    for name, slacks in sorted(by_id.items()):
        fig, ax = plt.subplots(figsize=(5.5, 3.5))
        ax.hist(slacks, bins=min(40, max(8, len(slacks) // 5)), color="#4878a8",
                edgecolor="white")
        ax.axvline(0.0, color="#b0413e", linewidth=1.2)
        ax.set_xlabel("slack (lhs - rhs)")
        ax.set_ylabel("trials")
        ax.set_title(f"{name}  (n={len(slacks)}, min={min(slacks):.3g})")
        fig.tight_layout()
        path = out_dir / f"slack_{name}.svg"
        fig.savefig(path, format="svg")
        plt.close(fig)
        written[name] = path
    return written
