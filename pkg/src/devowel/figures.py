"""Figure rendering for benchmark and sweep reports.

Report-writing commands drop a PNG next to the delimited output. Rendering
is deterministic for fixed inputs (fixed ordering, no timestamps in PNG
metadata), so reruns produce identical files.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .bench import MODES, CompressionReport

_MODE_COLORS = {"raw": "#4878a8", "devowel": "#d1495b"}


def render_ratio_figure(reports: list[CompressionReport], path: str | Path) -> None:
    """Grouped bars of byte ratios per compressor, raw vs devowel."""
    if not reports:
        raise ValueError("nothing to plot")
    corpora = sorted({r.corpus_id for r in reports})
    fig, axes = plt.subplots(
        1, len(corpora), figsize=(1.0 + 4.0 * len(corpora), 3.4), squeeze=False
    )
    for ax, corpus in zip(axes[0], corpora):
        rows = [r for r in reports if r.corpus_id == corpus]
        names = sorted({r.compressor for r in rows})
        width = 0.38
        for k, mode in enumerate(MODES):
            xs, ys = [], []
            for i, name in enumerate(names):
                cell = [r for r in rows if r.compressor == name and r.mode == mode]
                if cell:
                    xs.append(i + (k - 0.5) * width)
                    ys.append(cell[0].ratio_bytes)
            if xs:
                ax.bar(xs, ys, width=width, label=mode, color=_MODE_COLORS[mode])
        ax.set_xticks(range(len(names)))
        ax.set_xticklabels(names)
        ax.set_ylabel("original bytes / compressed bytes")
        ax.set_title(corpus)
        ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def render_sweep_figure(rows: list[dict], path: str | Path) -> None:
    """BLEU (left axis) and match F1 (right axis) against training-set size."""
    if not rows:
        raise ValueError("nothing to plot")
    sizes = [row["train_size"] for row in rows]
    bleu = [row["bleu"] for row in rows]
    f1 = [row["bert_f1"] for row in rows]
    fig, ax = plt.subplots(figsize=(5.2, 3.4))
    ax.plot(sizes, bleu, marker="o", color="#4878a8", label="BLEU")
    ax.set_xlabel("training pairs")
    ax.set_ylabel("BLEU", color="#4878a8")
    ax.set_ylim(0, 105)
    ax2 = ax.twinx()
    ax2.plot(sizes, f1, marker="s", color="#d1495b", label="match F1")
    ax2.set_ylabel("match F1", color="#d1495b")
    ax2.set_ylim(0, 1.05)
    ax.set_title("restoration quality vs corpus size")
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
