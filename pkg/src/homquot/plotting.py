"""Figure for harness reports."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

COLORS = {"pass": "#4c9a5b", "fail": "#c0392b", "na": "#b8b8b8", "unknown": "#e0a030"}


def plot_report(report, path) -> Path:
    """Stacked horizontal bars of outcome counts per check."""
    ids = [c.id for c in report.checks]
    fig, ax = plt.subplots(figsize=(8, 0.28 * len(ids) + 1.5))
    left = [0] * len(ids)
    for status in ("pass", "fail", "unknown", "na"):
        vals = [c.counts[status] for c in report.checks]
        ax.barh(ids, vals, left=left, color=COLORS[status], label=status)
        left = [a + b for a, b in zip(left, vals)]
    ax.invert_yaxis()
    ax.set_xlabel("instances")
    ax.set_title(f"{report.fingerprint['instances']} instances, {report.fail_count} failures")
    ax.legend(loc="lower right", fontsize="small")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=100, metadata={"Software": None})
    plt.close(fig)
    return path
