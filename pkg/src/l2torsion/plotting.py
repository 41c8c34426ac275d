"""Render 2-D integral polytopes to SVG or PNG files."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

from .polytope import IntPolytope, PolytopeDiff


def _draw(ax, p: IntPolytope, color: str, label: str) -> None:
    pts = list(p.vertices)
    if len(pts) >= 3:
        xs = [v[0] for v in pts] + [pts[0][0]]
        ys = [v[1] for v in pts] + [pts[0][1]]
        ax.fill(xs, ys, alpha=0.25, color=color)
        ax.plot(xs, ys, color=color, label=label)
    elif len(pts) == 2:
        ax.plot([pts[0][0], pts[1][0]], [pts[0][1], pts[1][1]], color=color, lw=2, label=label)
    ax.scatter([v[0] for v in pts], [v[1] for v in pts], color=color, zorder=3)


def render_polytopes(
    parts: Sequence[tuple[IntPolytope, str]], path: str | Path, title: str = ""
) -> Path:
    """Draw each ``(polytope, label)`` on one integer grid and save to ``path``."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    for p, _ in parts:
        if p.dim != 2:
            raise ValueError(f"only 2-dimensional polytopes can be drawn, got dimension {p.dim}")
    fig, ax = plt.subplots(figsize=(4, 4))
    colors = ["tab:blue", "tab:red", "tab:green", "tab:orange"]
    coords = [c for p, _ in parts for v in p.vertices for c in v]
    lo, hi = min(coords, default=0) - 1, max(coords, default=0) + 1
    for k, (p, label) in enumerate(parts):
        _draw(ax, p, colors[k % len(colors)], label)
    ax.set_xlim(lo, hi)
    ax.set_ylim(lo, hi)
    ax.set_xticks(range(lo, hi + 1))
    ax.set_yticks(range(lo, hi + 1))
    ax.grid(True, lw=0.5, alpha=0.5)
    ax.set_aspect("equal")
    if title:
        ax.set_title(title)
    if any(label for _, label in parts):
        ax.legend(loc="upper left", fontsize="small")
    path = Path(path)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
    return path


def render_diff(d: PolytopeDiff, path: str | Path, title: str = "") -> Path:
    parts = [(d.plus, "plus")]
    if len(d.minus.vertices) > 1 or any(d.minus.vertices[0]):
        parts.append((d.minus, "minus"))
    return render_polytopes(parts, path, title)
