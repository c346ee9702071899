"""Figure rendering for the reporting path.

Everything draws through the Agg backend straight to PNG files, so reports
work on headless machines and in tests.
"""

from __future__ import annotations

from datetime import date
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


def render_narrative_figure(record: dict, path: str | Path) -> Path:
    """Daily count series for one narrative, change points as dashed rules.

    Takes the exported narrative record (ISO date keys) rather than the
    live object so it can draw from a saved export just as well.
    """
    path = Path(path)
    days = sorted(record["daily_counts"])
    counts = [record["daily_counts"][d] for d in days]
    xs = [date.fromisoformat(d) for d in days]

    fig, ax = plt.subplots(figsize=(8, 3))
    ax.plot(xs, counts, marker="o", linewidth=1.5)
    ax.fill_between(xs, counts, alpha=0.15)
    for cp in record.get("change_points", []):
        ax.axvline(date.fromisoformat(cp), color="crimson", linestyle="--", linewidth=1)
    key = record.get("key", {})
    ax.set_title(f"{key.get('keyword', '?')} @ geo {key.get('location', '?')}")
    ax.set_ylabel("documents/day")
    ax.set_ylim(bottom=0)
    fig.autofmt_xdate()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_volume_figure(by_date: dict[str, int], path: str | Path, title: str = "Daily document volume") -> Path:
    """Bar chart of documents per day."""
    path = Path(path)
    days = sorted(by_date)
    xs = [date.fromisoformat(d) for d in days]
    counts = [by_date[d] for d in days]

    fig, ax = plt.subplots(figsize=(8, 3))
    ax.bar(xs, counts, width=0.8)
    ax.set_title(title)
    ax.set_ylabel("documents")
    fig.autofmt_xdate()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
