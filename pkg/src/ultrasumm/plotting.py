"""Matplotlib figures written next to the CSV/TSV reports."""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .analyze import LengthDistribution, LetterRanking  # noqa: E402


def _save(fig, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_letter_ranking(rankings: Mapping[str, LetterRanking], path: str | Path) -> Path:
    """Type count per initial letter against its rank, one series per corpus."""
    fig, ax = plt.subplots(figsize=(7, 4))
    for label, ranking in rankings.items():
        counts = [c for _, c in ranking.ranked]
        ranks = np.arange(1, len(counts) + 1)
        ax.plot(ranks, counts, "o-", ms=4, label=label)
        for r, (letter, c) in zip(ranks, ranking.ranked):
            ax.annotate(letter, (r, c), textcoords="offset points", xytext=(0, 4), ha="center", fontsize=7)
    ax.set_xlabel("rank")
    ax.set_ylabel("word types")
    ax.set_title("Initial letter ranking")
    ax.legend()
    return _save(fig, path)


def plot_length_curves(curves: Mapping[str, LengthDistribution], path: str | Path) -> Path:
    """Max-normalized letters-per-word curves."""
    fig, ax = plt.subplots(figsize=(7, 4))
    for label, dist in curves.items():
        xs, ys = zip(*dist.curve.items())
        ax.plot(xs, ys, "o-", ms=3, label=f"{label} (mean {dist.mean:.2f}, mode {dist.mode})")
    ax.set_xlabel("letters per word")
    ax.set_ylabel("normalized frequency")
    ax.set_ylim(0, 1.05)
    ax.legend(fontsize=8)
    return _save(fig, path)


def plot_density(rows: Sequence[Mapping[str, object]], path: str | Path) -> Path:
    """Bar chart of mean density and volume per normalization."""
    labels = [str(r["strategy"]) for r in rows]
    delta = [float(r["delta"]) for r in rows]
    vol = [float(r["volume"]) for r in rows]
    x = np.arange(len(labels))
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(x - 0.2, delta, 0.4, label="density")
    ax.bar(x + 0.2, vol, 0.4, label="volume vs raw")
    ax.set_xticks(x, labels, rotation=45, ha="right")
    ax.set_ylabel("ratio")
    ax.legend()
    return _save(fig, path)


def plot_sweep(
    means: Mapping[str, Mapping[str, float]], path: str | Path, baselines: Sequence[str] = ("raw", "stem", "lemma")
) -> Path:
    """Mean FRESA of Fix(n) against n; baselines as horizontal lines."""
    fig, ax = plt.subplots(figsize=(7, 4))
    styles = {"raw": "-", "stem": "--", "lemma": ":"}
    for k, (summarizer, by_norm) in enumerate(sorted(means.items())):
        color = f"C{k}"
        fix = sorted((int(label.split(":")[1]), v) for label, v in by_norm.items() if label.startswith("fix:"))
        if fix:
            ns, vs = zip(*fix)
            ax.plot(ns, vs, "o", color=color, label=summarizer)
        for base in baselines:
            if base in by_norm:
                ax.axhline(by_norm[base], color=color, ls=styles.get(base, "-."), lw=0.8, alpha=0.7)
    ax.set_xlabel("n (Fix_n)")
    ax.set_ylabel("mean FRESA")
    ax.set_title("FRESA of Fix_n; lines: raw (solid), stem (dashed), lemma (dotted)", fontsize=9)
    ax.legend()
    return _save(fig, path)


def plot_mantel_grid(labels: Sequence[str], grid: np.ndarray, path: str | Path) -> Path:
    fig, ax = plt.subplots(figsize=(5, 4))
    im = ax.imshow(grid, vmin=-1, vmax=1, cmap="RdBu_r")
    ax.set_xticks(range(len(labels)), labels, rotation=45, ha="right")
    ax.set_yticks(range(len(labels)), labels)
    for i in range(len(labels)):
        for j in range(len(labels)):
            text = "•" if i == j else f"{grid[i, j]:.2f}"
            ax.text(j, i, text, ha="center", va="center", fontsize=8)
    fig.colorbar(im, ax=ax, label="Mantel r")
    return _save(fig, path)


def plot_fresa_bars(rows: Sequence[Mapping[str, object]], path: str | Path) -> Path:
    """Mean FRESA per (summarizer, normalization) pair."""
    labels = [f"{r['summarizer']}/{r['norm']}" for r in rows]
    values = [float(r["mean"]) for r in rows]
    fig, ax = plt.subplots(figsize=(max(5, 0.5 * len(rows) + 2), 4))
    ax.bar(range(len(rows)), values, color="C0")
    ax.set_xticks(range(len(rows)), labels, rotation=60, ha="right", fontsize=8)
    ax.set_ylabel("mean FRESA")
    ax.set_ylim(0, 1)
    return _save(fig, path)
