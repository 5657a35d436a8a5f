"""Board regions and the names of their cells.

Square cells are named by two base-36 digits, rank then file, counting
from 1 (so the 8x8 board runs 11..88 and file 10 is "a").  Triangles are
named row, column (0-based) and u/d; segments Hxy / Vxy and interior
junctions Ixy, all with base-36 digits.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from . import geometry as G

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


def b36(n: int) -> str:
    if not 0 <= n < 36:
        raise ValueError(f"coordinate {n} cannot be named with one digit")
    return _DIGITS[n]


def cell_name(kind: str, cell) -> str:
    if kind == G.SQUARE:
        return b36(cell[0] + 1) + b36(cell[1] + 1)
    if kind == G.TRIANGULAR:
        return b36(cell[0]) + b36(cell[1]) + "ud"[cell[2]]
    return cell[0] + b36(cell[1]) + b36(cell[2])


def junction_name(point) -> str:
    return "I" + b36(point[0]) + b36(point[1])


@dataclass(frozen=True)
class Board:
    """A finite region of one grid kind.  ``cells`` fixes the column order."""

    kind: str
    cells: tuple
    name: str = "board"
    _index: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        cells = tuple(self.cells)
        if len(set(cells)) != len(cells):
            raise ValueError("board cells repeat")
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "_index", {c: i for i, c in enumerate(cells)})
        names = [cell_name(self.kind, c) for c in cells]
        if len(set(names)) != len(names):
            raise ValueError("board cell names are not unique")

    def __contains__(self, cell) -> bool:
        return cell in self._index

    def __len__(self) -> int:
        return len(self.cells)

    def name_of(self, cell) -> str:
        return cell_name(self.kind, cell)

    def position(self, cell) -> int:
        return self._index[cell]

    def junctions(self) -> list[tuple[int, int]]:
        """Points of a segment board whose four incident segments all lie on it."""
        if self.kind != G.SEGMENT:
            return []
        points = set()
        for _, x, y in self.cells:
            points.add((x, y))
        return sorted(p for p in points if all(s in self for s in G.segments_at(*p)))

    def edges(self) -> list[tuple]:
        """Internal edges: unordered pairs of adjacent board cells."""
        if self.kind == G.SEGMENT:
            raise ValueError("edges are defined for square and triangular boards")
        out = []
        for c in self.cells:
            for n in G.neighbors(self.kind, c):
                if n in self and self._index[c] < self._index[n]:
                    out.append((c, n))
        return out

    def without(self, removed, name: str | None = None) -> "Board":
        removed = set(removed)
        return Board(self.kind, tuple(c for c in self.cells if c not in removed),
                     name or self.name)

    def picture(self, label=None) -> str:
        """ASCII drawing of a square or triangular board; ``label`` maps cell -> char."""
        label = label or {}
        if self.kind == G.SQUARE:
            rows = range(min(r for r, _ in self.cells), max(r for r, _ in self.cells) + 1)
            cols = range(min(c for _, c in self.cells), max(c for _, c in self.cells) + 1)
            return "\n".join("".join(label.get((r, c), "#") if (r, c) in self else "."
                                     for c in cols) for r in rows)
        if self.kind == G.TRIANGULAR:
            rows = sorted({r for r, _, _ in self.cells})
            c0 = min(c for _, c, _ in self.cells)
            c1 = max(c for _, c, _ in self.cells)
            lines = []
            for r in rows:
                line = ""
                for c in range(c0, c1 + 1):
                    for p in (0, 1):
                        cell = (r, c, p)
                        line += label.get(cell, "^v"[p]) if cell in self else "."
                lines.append(line.rstrip("."))
            return "\n".join(lines)
        return " ".join(self.name_of(c) for c in self.cells)


# --- built-in regions --------------------------------------------------------

def rectangle(ranks: int, files: int) -> Board:
    return Board(G.SQUARE, tuple((r, c) for r in range(ranks) for c in range(files)),
                 f"rect:{ranks}x{files}")


def scott_board() -> Board:
    """The 8x8 board with its centre 2x2 removed."""
    return rectangle(8, 8).without([(3, 3), (3, 4), (4, 3), (4, 4)], "scott8x8")


def mutilated_chessboard() -> Board:
    """The 8x8 board minus two opposite corners (11 and 88)."""
    return rectangle(8, 8).without([(0, 0), (7, 7)], "mutilated-chessboard")


def rhombus(n: int = 6) -> Board:
    return Board(G.TRIANGULAR,
                 tuple((r, c, p) for r in range(n) for c in range(n) for p in (0, 1)),
                 f"rhombus{n}x{n}")


def hexagon_cluster(radius: int = 2) -> Board:
    """Unit hexagons within ``radius`` steps of a central one (19 for radius 2).

    Each unit hexagon is the six triangles around a lattice point; the
    centres form the index-3 sublattice spanned by (1, 1) and (-1, 2).
    """
    around = [(1, 1), (-1, 2), (-2, 1), (-1, -1), (1, -2), (2, -1)]
    # Shift the centre so that every coordinate comes out non-negative.
    cx, cy = 3 * radius + 1, 2 * radius
    tris = set()
    for m in range(-radius, radius + 1):
        for n in range(-radius, radius + 1):
            if abs(m + n) > radius:
                continue
            x, y = cx + m - n, cy + m + 2 * n
            for da, db in around:
                tris.add(G.tri_from_axial(3 * x + da, 3 * y + db))
    r0 = min(t[0] for t in tris)
    c0 = min(t[1] for t in tris)
    cells = sorted((r - r0, c - c0, p) for r, c, p in tris)
    return Board(G.TRIANGULAR, tuple(cells), "obeirne-hexagon")


def segment_grid(width: int, height: int | None = None) -> Board:
    """Every unit segment of a width x height grid of squares: H first, then V."""
    height = width if height is None else height
    hs = [("H", x, y) for x in range(width) for y in range(height + 1)]
    vs = [("V", x, y) for x in range(width + 1) for y in range(height)]
    return Board(G.SEGMENT, tuple(hs + vs), f"grid:{width}x{height}-segments")


def aztec_diamond(n: int = 5) -> Board:
    """Segments with both ends in |x| + |y| <= n, shifted to non-negative coordinates."""
    segs = []
    for x in range(-n, n + 1):
        for y in range(-n, n + 1):
            if abs(x) + abs(y) > n:
                continue
            if abs(x + 1) + abs(y) <= n:
                segs.append(("H", x + n, y + n))
            if abs(x) + abs(y + 1) <= n:
                segs.append(("V", x + n, y + n))
    segs.sort()
    return Board(G.SEGMENT, tuple(segs), "aztec-diamond")


_RECT = re.compile(r"rect:(\d+)x(\d+)$")
_GRID = re.compile(r"grid:(\d+)x(\d+)-segments$")

BUILTIN = ("scott8x8", "rect:RxF", "rhombus6x6", "obeirne-hexagon", "aztec-diamond",
           "grid:WxH-segments", "mutilated-chessboard")


def board_from_spec(spec: str) -> Board:
    """A built-in board by name, or a shape file path."""
    if spec == "scott8x8":
        return scott_board()
    if spec == "rhombus6x6":
        return rhombus(6)
    if spec == "obeirne-hexagon":
        return hexagon_cluster(2)
    if spec == "aztec-diamond":
        return aztec_diamond(5)
    if spec == "mutilated-chessboard":
        return mutilated_chessboard()
    m = _RECT.match(spec)
    if m:
        return rectangle(int(m.group(1)), int(m.group(2)))
    m = _GRID.match(spec)
    if m:
        return segment_grid(int(m.group(1)), int(m.group(2)))
    path = Path(spec)
    if path.is_file():
        return read_shape(path.read_text(encoding="utf-8"), path.stem)
    raise ValueError(f"unknown board {spec!r} (built-ins: {', '.join(BUILTIN)})")


class ShapeError(ValueError):
    pass


_SEG_TOKEN = re.compile(r"([HV])(\d+),(\d+)$")


def read_shape(text: str, name: str = "shape") -> Board:
    """Parse a shape file.

    Square boards are rows of '#' (cell) and '.' (hole).  A first line
    ``@triangular`` switches to triangles: character k of line r is the
    triangle (r, k // 2, up if k is even else down).  ``@segment`` takes
    whitespace separated tokens such as ``H2,3`` and ``V0,1``.
    """
    lines = [ln.rstrip("\r") for ln in text.split("\n")]
    lines = [ln for ln in lines if ln.strip() and not ln.lstrip().startswith("%")]
    if not lines:
        raise ShapeError("empty shape file")
    kind = G.SQUARE
    if lines[0].strip().startswith("@"):
        directive = lines.pop(0).strip()[1:]
        if directive not in (G.SQUARE, G.TRIANGULAR, G.SEGMENT):
            raise ShapeError(f"unknown shape directive @{directive}")
        kind = directive
    cells = []
    if kind == G.SEGMENT:
        for lineno, line in enumerate(lines, 1):
            for tok in line.split():
                m = _SEG_TOKEN.match(tok)
                if not m:
                    raise ShapeError(f"line {lineno}: bad segment {tok!r}")
                cells.append((m.group(1), int(m.group(2)), int(m.group(3))))
    else:
        for r, line in enumerate(lines):
            for k, ch in enumerate(line.strip()):
                if ch not in "#.":
                    raise ShapeError(f"line {r + 1}: unexpected character {ch!r}")
                if ch == "#":
                    cells.append((r, k) if kind == G.SQUARE else (r, k // 2, k % 2))
    if not cells:
        raise ShapeError("shape has no cells")
    if len(set(cells)) != len(cells):
        raise ShapeError("shape lists a cell twice")
    return Board(kind, tuple(cells), name)
