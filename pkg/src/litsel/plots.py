"""Figures rendered next to a benchmark report."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .bench import MatrixResult


def render_figures(result: MatrixResult, out_path) -> list[Path]:
    """Write solved/u-score and children bar charts alongside ``out_path``.

    Returns the paths written.  Rows keep the report's order (solved count
    descending), so the charts read left-to-right like the table.
    """
    out_path = Path(out_path)
    rows = result.rows()
    labels = [str(r.strategy) for r in rows]
    written = []

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(max(8, 0.45 * len(rows) * 2), 4))
    ax1.bar(labels, [r.solved for r in rows], color="#336699")
    ax1.set_title("problems solved")
    ax1.set_xlabel("selection strategy")
    ax2.bar(labels, [float(r.u_score) for r in rows], color="#669933")
    ax2.set_title("u-score")
    ax2.set_xlabel("selection strategy")
    for ax in (ax1, ax2):
        ax.tick_params(axis="x", rotation=90, labelsize=8)
    fig.tight_layout()
    solved_path = out_path.with_name(out_path.stem + "_solved.png")
    fig.savefig(solved_path, dpi=150)
    plt.close(fig)
    written.append(solved_path)

    fig, ax = plt.subplots(figsize=(max(8, 0.45 * len(rows) * 2), 4))
    xs = range(len(rows))
    width = 0.4
    so = [float(r.child_solved) if r.child_solved is not None else 0.0 for r in rows]
    al = [float(r.child_all) if r.child_all is not None else 0.0 for r in rows]
    ax.bar([x - width / 2 for x in xs], so, width, label="solved only", color="#993344")
    ax.bar([x + width / 2 for x in xs], al, width, label="all runs", color="#cc9955")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels, rotation=90, fontsize=8)
    ax.set_title("average children per activation")
    ax.set_xlabel("selection strategy")
    ax.legend()
    fig.tight_layout()
    children_path = out_path.with_name(out_path.stem + "_children.png")
    fig.savefig(children_path, dpi=150)
    plt.close(fig)
    written.append(children_path)
    return written
