"""Matplotlib figures for limit tables and commutativity diagnostics."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .render import label  # noqa: E402


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_limit(rel, path, title=None):
    """Bar chart of the nonzero weights of a table, one bar per tuple."""
    rows = rel.rows()
    labels = ["(" + ",".join(label(e) for e in k) + ")" for k, _ in rows]
    values = [float(w) for _, w in rows]
    fig, ax = plt.subplots(figsize=(max(4.0, 0.6 * len(rows) + 2), 3.5))
    ax.bar(range(len(rows)), values, color="#4477aa")
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=8)
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("weight")
    ax.set_title(title or f"{rel.name} over ({', '.join(rel.names)})")
    return _finish(fig, path)


def plot_commutativity(result, path, title=None):
    """Paired bars of achievable limit weight and vertex self-similarity per source tuple."""
    n = len(result.rows)
    xs = range(n)
    labels = ["(" + ",".join(label(e) for e in s) + ")" for s, *_ in result.rows]
    lhs = [float(r[1]) for r in result.rows]
    rhs = [float(r[2]) for r in result.rows]
    fig, ax = plt.subplots(figsize=(max(4.0, 0.8 * n + 2), 3.5))
    ax.bar([x - 0.2 for x in xs], lhs, width=0.4, label="limit", color="#4477aa")
    ax.bar([x + 0.2 for x in xs], rhs, width=0.4, label="self-similarity", color="#ccbb44")
    ax.axhline(float(result.degree), color="#aa3377", ls="--", lw=1, label=f"degree {float(result.degree):.4g}")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels, fontsize=8)
    ax.set_xlabel(", ".join(result.sources))
    ax.set_ylim(0, 1.05)
    ax.legend(fontsize=8, frameon=False)
    ax.set_title(title or "commutativity per source tuple")
    return _finish(fig, path)
