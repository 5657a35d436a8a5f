"""Figures for run reports: level profiles and packing pictures."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.collections import LineCollection, PolyCollection  # noqa: E402

from .core import SearchStats  # noqa: E402
from .polyforms import geometry as G  # noqa: E402
from .polyforms.boards import Board  # noqa: E402


def plot_profile(stats: SearchStats, path, title: str = "") -> None:
    """Nodes and updates per level on a log scale."""
    rows = stats.profile()
    levels = [r[0] for r in rows]
    fig, ax = plt.subplots(figsize=(7, 4))
    width = 0.4
    ax.bar([k - width / 2 for k in levels], [max(r[1], 0.5) for r in rows], width,
           label="nodes", color="tab:blue")
    ax.bar([k + width / 2 for k in levels], [max(r[3], 0.5) for r in rows], width,
           label="updates", color="tab:orange")
    ax.set_yscale("log")
    ax.set_ylim(bottom=0.5)
    ax.set_xlabel("level")
    ax.set_ylabel("count")
    ax.set_xticks(levels)
    ax.set_title(title or f"{stats.total_nodes:,} nodes, {stats.total_updates:,} updates")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def _triangle_xy(cell):
    r, c, p = cell
    h = math.sqrt(3) / 2
    # Up (r, c) sits on down (r + 1, c), so lower rows shift half a unit left.
    x0 = c - 0.5 * r
    y0 = -r * h
    if p == 0:
        pts = [(x0, y0 - h), (x0 + 1, y0 - h), (x0 + 0.5, y0)]
    else:
        pts = [(x0 + 0.5, y0), (x0 + 1.5, y0), (x0 + 1, y0 - h)]
    # Turn a quarter so the rows run up the page, as the symmetry scores assume.
    return [(-y, x) for x, y in pts]


def _square_xy(cell):
    r, c = cell
    return [(c, -r), (c + 1, -r), (c + 1, -r - 1), (c, -r - 1)]


def _segment_xy(cell):
    kind, x, y = cell
    return [(x, -y), (x + 1, -y)] if kind == "H" else [(x, -y), (x, -y - 1)]


def plot_packing(board: Board, piece_map: dict, path, title: str = "") -> None:
    """Draw one packing with a colour per piece."""
    idents = sorted({str(v) for v in piece_map.values()})
    cmap = plt.get_cmap("tab20", max(len(idents), 1))
    colour = {ident: cmap(i) for i, ident in enumerate(idents)}
    fig, ax = plt.subplots(figsize=(6, 6))
    cells = list(board.cells)
    faces = [colour[str(piece_map[c])] if c in piece_map else (1, 1, 1, 1) for c in cells]
    if board.kind == G.SEGMENT:
        ax.add_collection(LineCollection([_segment_xy(c) for c in cells], colors=faces,
                                         linewidths=4))
    else:
        shape = _square_xy if board.kind == G.SQUARE else _triangle_xy
        polys = [shape(c) for c in cells]
        ax.add_collection(PolyCollection(polys, facecolors=faces, edgecolors="white",
                                         linewidths=0.5))
    ax.autoscale()
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
