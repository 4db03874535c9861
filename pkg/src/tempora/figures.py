"""Matplotlib rendering of analyses and conformance reports.

Figures accompany the delimited report files: a timeline lays threads out as
horizontal lanes with labeled relation arrows between eventualities, and the
conformance grid colors each feasibility cell by outcome.  matplotlib is
imported lazily with the Agg backend so plain CLI runs stay headless and
cheap.
"""

from __future__ import annotations

from pathlib import Path

from .model import AnalysisState, eventuality_order

_LANE_COLORS = ("#4878cf", "#d65f5f", "#59a14f", "#b07aa1", "#e49444")


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    return plt


def _thread_lanes(state: AnalysisState) -> dict[str, int]:
    lanes: dict[str, int] = {}
    threads = list(state.center.fwd_center) + list(state.center.closed_threads)
    threads.sort(key=lambda t: min(state.ids().index(m) for m in t.members))
    for lane, thread in enumerate(threads):
        for member in thread.members:
            lanes[member] = lane
    return lanes


def save_timeline_figure(state: AnalysisState, path: str | Path, title: str = "") -> Path:
    """Draw one reading: clauses in discourse order, threads as lanes."""
    plt = _pyplot()
    ids = state.ids()
    lanes = _thread_lanes(state)
    n_lanes = max(lanes.values()) + 1

    fig, ax = plt.subplots(figsize=(max(4.0, 1.6 * len(ids)), 1.2 + 0.9 * n_lanes))
    xs = {eid: i for i, eid in enumerate(ids)}
    for eid in ids:
        lane = lanes[eid]
        color = _LANE_COLORS[lane % len(_LANE_COLORS)]
        ax.scatter([xs[eid]], [lane], s=160, color=color, zorder=3)
        ax.annotate(
            eid, (xs[eid], lane), textcoords="offset points", xytext=(0, 12),
            ha="center", fontsize=10,
        )
    for left, rel, right in eventuality_order(state):
        x1, y1 = xs[left], lanes[left]
        x2, y2 = xs[right], lanes[right]
        ax.annotate(
            "",
            xy=(x2, y2), xytext=(x1, y1),
            arrowprops=dict(
                arrowstyle="-|>", color="#555555", lw=1.2,
                connectionstyle="arc3,rad=0.15",
            ),
            zorder=2,
        )
        ax.annotate(
            rel.replace("_", "-"),
            ((x1 + x2) / 2, (y1 + y2) / 2),
            textcoords="offset points", xytext=(0, -14),
            ha="center", fontsize=8, color="#333333",
        )
    ax.set_yticks(range(n_lanes))
    ax.set_yticklabels([f"thread {i + 1}" for i in range(n_lanes)])
    ax.set_xticks(range(len(ids)))
    ax.set_xticklabels(ids)
    ax.set_xlabel("discourse order")
    ax.set_ylim(n_lanes - 0.5, -0.5)
    if title:
        ax.set_title(title, fontsize=11)
    ax.spines[["top", "right"]].set_visible(False)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_conformance_figure(results, path: str | Path) -> Path:
    """Grid of conformance outcomes: green pass, red fail."""
    plt = _pyplot()
    cells = [r for r in results if r.kind == "cell"]
    cases = [r for r in results if r.kind == "case"]

    fig, (ax_cells, ax_cases) = plt.subplots(
        1, 2, figsize=(11, max(4.0, 0.28 * max(len(cells), 1))),
        gridspec_kw={"width_ratios": [3, 1]},
    )
    for ax, rows, label in ((ax_cells, cells, "feasibility cells"),
                            (ax_cases, cases, "example discourses")):
        for i, row in enumerate(rows):
            color = "#59a14f" if row.passed else "#d65f5f"
            ax.barh(i, 1.0, color=color, height=0.8)
            ax.text(0.02, i, row.name, va="center", fontsize=7)
        ax.set_ylim(len(rows) - 0.5, -0.5)
        ax.set_xlim(0, 1)
        ax.set_xticks([])
        ax.set_yticks([])
        ax.set_title(label, fontsize=10)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
