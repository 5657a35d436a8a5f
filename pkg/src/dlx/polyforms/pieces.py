"""Built-in pieces and their orientations.

Square pieces are drawn as pictures, triangle pieces as (row, col, p) cells
and stick pieces as segment tokens such as ``H00``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import geometry as G

FREE = "free"
ONE_SIDED = "one-sided"


@dataclass(frozen=True)
class Piece:
    """A named polyform.  ``anonymous`` pieces get no column of their own."""

    name: str
    kind: str
    cells: tuple
    anonymous: bool = False

    def __post_init__(self):
        if not self.cells:
            raise ValueError(f"piece {self.name!r} has no cells")
        object.__setattr__(self, "cells", G.normalize(self.kind, self.cells))

    @property
    def order(self) -> int:
        return len(self.cells)

    def mirrored(self, name: str | None = None) -> "Piece":
        half = len(G.TRANSFORMS[self.kind]) // 2
        return Piece(name or self.name + "'", self.kind,
                     G.transform(self.kind, half, self.cells), self.anonymous)


def orientations(piece: Piece, mode: str = FREE) -> list[tuple]:
    """Distinct normalized images of ``piece`` under the grid's symmetries.

    ``mode`` is "free" (rotations and reflections) or "one-sided"
    (rotations only).  The original orientation comes first.
    """
    if mode not in (FREE, ONE_SIDED):
        raise ValueError(f"unknown chirality mode {mode!r}")
    maps = G.TRANSFORMS[piece.kind]
    if mode == ONE_SIDED:
        maps = maps[:len(maps) // 2]
    seen: dict[tuple, None] = {}
    for i in range(len(maps)):
        seen.setdefault(G.transform(piece.kind, i, piece.cells), None)
    return list(seen)


def is_chiral(piece: Piece) -> bool:
    return len(orientations(piece, FREE)) != len(orientations(piece, ONE_SIDED))


def one_sided_set(pieces: list[Piece]) -> list[Piece]:
    """Each piece followed by its mirror image (named with a prime) if chiral."""
    out = []
    for p in pieces:
        out.append(p)
        if is_chiral(p):
            out.append(p.mirrored())
    return out


def _picture(text: str) -> tuple:
    rows = [line.strip() for line in text.strip().split("/")]
    return tuple((r, c) for r, line in enumerate(rows) for c, ch in enumerate(line) if ch == "#")


def _sticks(text: str) -> tuple:
    return tuple((tok[0], int(tok[1]), int(tok[2])) for tok in text.split())


_PENTOMINOES = [
    ("F", ".##/##./.#."),
    ("I", "#####"),
    ("L", "####/#..."),
    ("P", "##/##/#."),
    ("N", "##../.###"),
    ("T", "###/.#./.#."),
    ("U", "#.#/###"),
    ("V", "#../#../###"),
    ("W", "#../##./.##"),
    ("X", ".#./###/.#."),
    ("Y", ".#../####"),
    ("Z", "##./.#./.##"),
]

PENTOMINOES = [Piece(name, G.SQUARE, _picture(pic)) for name, pic in _PENTOMINOES]
TETROMINO_O = Piece("O", G.SQUARE, _picture("##/##"))
DOMINO = Piece("domino", G.SQUARE, _picture("##"), anonymous=True)

# Triangle cells: p = 0 points up, p = 1 down.  An up triangle at (r, c)
# touches the down triangles (r, c - 1), (r, c) and (r + 1, c).
_HEXIAMONDS = [
    ("bar", [(0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (0, 2, 0), (0, 2, 1)]),
    ("crown", [(0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (0, 2, 0), (1, 1, 1)]),
    ("sphinx", [(0, 0, 0), (1, 0, 0), (1, 0, 1), (1, 1, 0), (1, 1, 1), (1, 2, 0)]),
    ("snake", [(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 1, 1), (1, 2, 0), (1, 2, 1)]),
    ("yacht", [(0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)]),
    ("chevron", [(0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 0, 0), (1, 0, 1)]),
    ("signpost", [(0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 1, 0), (1, 1, 1)]),
    ("lobster", [(0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 1, 1), (1, 2, 0)]),
    ("hook", [(0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (0, 2, 0), (1, 0, 1)]),
    ("hexagon", [(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 1), (1, 1, 0), (1, 1, 1)]),
    ("butterfly", [(0, 0, 0), (1, 0, 0), (1, 0, 1), (1, 1, 0), (1, 1, 1), (2, 1, 1)]),
    ("bat", [(0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]),
]

HEXIAMONDS = [Piece(name, G.TRIANGULAR, tuple(cells)) for name, cells in _HEXIAMONDS]

# Segments: Hxy is (x, y)-(x+1, y) and Vxy is (x, y)-(x, y+1).
_TETRASTICKS = [
    ("F", "H00 H01 V00 V01"),
    ("H", "H00 H10 V10 H01"),
    ("I", "H00 H10 H20 H30"),
    ("J", "H00 H10 V00 H01"),
    ("L", "H00 H10 H20 V00"),
    ("N", "H00 H10 V20 H21"),
    ("O", "H00 H01 V00 V10"),
    ("P", "H00 V00 H01 V11"),
    ("R", "H00 V10 V11 H11"),
    ("T", "H00 H10 V10 V11"),
    ("U", "H00 V00 V01 H02"),
    ("V", "H00 H10 V00 V01"),
    ("W", "H00 V10 H11 V21"),
    ("X", "H01 H11 V10 V11"),
    ("Y", "H00 H10 H20 V10"),
    ("Z", "H00 V10 V11 H12"),
]

TETRASTICKS = [Piece(name, G.SEGMENT, _sticks(segs)) for name, segs in _TETRASTICKS]
WELDED = ("F", "H", "R", "T", "X", "Y")

PIECE_SETS = {
    "pentominoes": PENTOMINOES,
    "hexiamonds": HEXIAMONDS,
    "tetrasticks": TETRASTICKS,
}


def piece_set(name: str) -> list[Piece]:
    try:
        return list(PIECE_SETS[name])
    except KeyError:
        raise ValueError(f"unknown piece set {name!r}") from None


def select(pieces: list[Piece], exclude=(), only=None) -> list[Piece]:
    """Filter a piece list by name; unknown names are an error."""
    names = {p.name for p in pieces}
    for n in list(exclude) + list(only or ()):
        if n not in names:
            raise ValueError(f"unknown piece {n!r}")
    out = [p for p in pieces if p.name not in set(exclude)]
    if only is not None:
        out = [p for p in out if p.name in set(only)]
    return out
