"""Figures for the CLI reports (matplotlib, Agg backend, PNG files)."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

plt.rcParams.update({"figure.dpi": 100, "font.size": 10, "svg.hashsalt": "chessmorse"})


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


def betti_bars(betti: Sequence[int], path: Path, title: str = "Betti numbers") -> Path:
    fig, ax = plt.subplots(figsize=(4, 3))
    ax.bar(range(len(betti)), betti, color="tab:blue")
    ax.set_xlabel("degree")
    ax.set_ylabel("rank")
    ax.set_xticks(range(len(betti)))
    ax.set_title(title)
    return _save(fig, path)


def critical_vs_betti(critical: dict[int, int], betti: Sequence[int], path: Path) -> Path:
    """Side-by-side bars: critical cells per dimension against Betti numbers."""
    top = max([len(betti) - 1, *critical.keys()], default=0)
    xs = list(range(top + 1))
    crit = [critical.get(d, 0) for d in xs]
    bet = [betti[d] if d < len(betti) else 0 for d in xs]
    fig, ax = plt.subplots(figsize=(4.5, 3))
    ax.bar([x - 0.2 for x in xs], crit, width=0.4, label="critical cells")
    ax.bar([x + 0.2 for x in xs], bet, width=0.4, label="Betti")
    ax.set_xticks(xs)
    ax.set_xlabel("dimension")
    ax.legend(frameon=False)
    return _save(fig, path)


def bottleneck_weights(weights: Sequence[float], marked: int, value: float, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(4.5, 3))
    colors = ["tab:red" if e == marked else "tab:gray" for e in range(len(weights))]
    ax.bar(range(1, len(weights) + 1), [float(w) for w in weights], color=colors)
    ax.axhline(float(value), color="tab:red", lw=0.8, ls="--")
    ax.set_xlabel("element")
    ax.set_ylabel("weight")
    ax.set_title(f"bottleneck value {value}")
    return _save(fig, path)


def suite_summary(results, path: Path) -> Path:
    """Horizontal bars of runtime per criterion, red where it failed."""
    fig, ax = plt.subplots(figsize=(5, 3))
    ys = [r.number for r in results]
    ax.barh(ys, [r.seconds for r in results],
            color=["tab:green" if r.ok else "tab:red" for r in results])
    ax.set_yticks(ys)
    ax.set_yticklabels([f"#{y}" for y in ys])
    ax.invert_yaxis()
    ax.set_xlabel("seconds")
    return _save(fig, path)
