"""Cell coordinates, symmetries and adjacency for the three grid kinds.

square      cells are (rank, file); ranks grow downward, files rightward.
triangular  cells are (row, col, p) with p = 0 for an up-pointing and 1 for a
            down-pointing triangle.  Rows grow downward and each row is offset
            half a unit to the left of the row above, so that up (r, c) shares
            edges with down (r, c - 1), down (r, c) and down (r + 1, c).
segment     cells are ("H", x, y) for the segment (x, y)-(x + 1, y) and
            ("V", x, y) for (x, y)-(x, y + 1).

Every symmetry works on integer "doubled" coordinates where it is linear;
that is the single place reflections are defined, and piece orientations,
board mirroring and symmetry scoring all go through it.
"""

from __future__ import annotations

from typing import Callable, Iterable

SQUARE = "square"
TRIANGULAR = "triangular"
SEGMENT = "segment"

Cell = tuple


# --- square grid -----------------------------------------------------------

def _sq_transforms():
    out = []
    for reflect in (False, True):
        for rot in range(4):
            def f(cell, rot=rot, reflect=reflect):
                r, c = cell
                if reflect:
                    c = -c
                for _ in range(rot):
                    r, c = c, -r
                return (r, c)
            out.append(f)
    return out


# --- triangular grid -------------------------------------------------------
# Internally a triangle is its centroid times 3 in the axial basis
# e1 = (1, 0), e2 = (1/2, sqrt(3)/2): up (x, y) -> (3x + 1, 3y + 1),
# down (x, y) -> (3x + 2, 3y + 2).  With row = -y and col = x this is the
# (row, col, p) convention above.

def tri_to_axial(cell) -> tuple[int, int]:
    r, c, p = cell
    x, y = c, -r
    return (3 * x + 1 + p, 3 * y + 1 + p)


def tri_from_axial(a: int, b: int):
    p = a % 3 - 1
    if p not in (0, 1) or b % 3 != a % 3:
        raise ValueError(f"({a}, {b}) is not a triangle centroid")
    x, y = (a - 1 - p) // 3, (b - 1 - p) // 3
    return (-y, x, p)


def _rot60(a, b):
    return (-b, a + b)


def _mirror_lr_axial(a, b):
    return (-a - b, b)


def _tri_transforms():
    out = []
    for reflect in (False, True):
        for rot in range(6):
            def f(cell, rot=rot, reflect=reflect):
                a, b = tri_to_axial(cell)
                if reflect:
                    a, b = _mirror_lr_axial(a, b)
                for _ in range(rot):
                    a, b = _rot60(a, b)
                return tri_from_axial(a, b)
            out.append(f)
    return out


# --- segment grid ------------------------------------------------------------

def seg_to_mid(cell) -> tuple[int, int]:
    kind, x, y = cell
    return (2 * x + 1, 2 * y) if kind == "H" else (2 * x, 2 * y + 1)


def seg_from_mid(a: int, b: int):
    if a % 2 == 1 and b % 2 == 0:
        return ("H", (a - 1) // 2, b // 2)
    if a % 2 == 0 and b % 2 == 1:
        return ("V", a // 2, (b - 1) // 2)
    raise ValueError(f"({a}, {b}) is not a segment midpoint")


def _seg_transforms():
    out = []
    for reflect in (False, True):
        for rot in range(4):
            def f(cell, rot=rot, reflect=reflect):
                a, b = seg_to_mid(cell)
                if reflect:
                    a = -a
                for _ in range(rot):
                    a, b = -b, a
                return seg_from_mid(a, b)
            out.append(f)
    return out


TRANSFORMS: dict[str, list[Callable]] = {
    SQUARE: _sq_transforms(),
    TRIANGULAR: _tri_transforms(),
    SEGMENT: _seg_transforms(),
}
"""Symmetries of each grid: the first half are rotations, the second half
rotations after a reflection."""


def normalize(kind: str, cells: Iterable) -> tuple:
    """Translate so the minimum coordinates sit at the origin; sorted tuple."""
    cells = list(cells)
    if kind == SQUARE:
        r0 = min(r for r, _ in cells)
        c0 = min(c for _, c in cells)
        return tuple(sorted((r - r0, c - c0) for r, c in cells))
    if kind == TRIANGULAR:
        r0 = min(c[0] for c in cells)
        c0 = min(c[1] for c in cells)
        return tuple(sorted((r - r0, c - c0, p) for r, c, p in cells))
    if kind == SEGMENT:
        x0 = min(c[1] for c in cells)
        y0 = min(c[2] for c in cells)
        return tuple(sorted((k, x - x0, y - y0) for k, x, y in cells))
    raise ValueError(f"unknown grid kind {kind!r}")


def translate(kind: str, cells: Iterable, dr: int, dc: int) -> tuple:
    if kind == SQUARE:
        return tuple((r + dr, c + dc) for r, c in cells)
    if kind == TRIANGULAR:
        return tuple((r + dr, c + dc, p) for r, c, p in cells)
    return tuple((k, x + dr, y + dc) for k, x, y in cells)


def anchor(kind: str, cell) -> tuple[int, int]:
    """The translation part of a cell's coordinates."""
    if kind == SEGMENT:
        return (cell[1], cell[2])
    return (cell[0], cell[1])


def transform(kind: str, index: int, cells: Iterable) -> tuple:
    f = TRANSFORMS[kind][index]
    return normalize(kind, (f(c) for c in cells))


def neighbors(kind: str, cell) -> list:
    """Cells sharing an edge with ``cell`` (segments: sharing an endpoint)."""
    if kind == SQUARE:
        r, c = cell
        return [(r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)]
    if kind == TRIANGULAR:
        r, c, p = cell
        if p == 0:
            return [(r, c - 1, 1), (r, c, 1), (r + 1, c, 1)]
        return [(r, c, 0), (r, c + 1, 0), (r - 1, c, 0)]
    kind_, x, y = cell
    ends = [(x, y), (x + 1, y)] if kind_ == "H" else [(x, y), (x, y + 1)]
    out = []
    for px, py in ends:
        for seg in segments_at(px, py):
            if seg != cell:
                out.append(seg)
    return out


def segments_at(x: int, y: int) -> list:
    return [("H", x - 1, y), ("H", x, y), ("V", x, y - 1), ("V", x, y)]


def straight_points(segments: Iterable) -> list[tuple[int, int]]:
    """Points that a set of segments passes straight through."""
    segs = set(segments)
    out = set()
    for kind, x, y in segs:
        if kind == "H" and ("H", x + 1, y) in segs:
            out.add((x + 1, y))
        elif kind == "V" and ("V", x, y + 1) in segs:
            out.add((x, y + 1))
    return sorted(out)


def _align(kind: str, cells: list, image: list) -> dict | None:
    """Translate ``image`` onto ``cells`` if possible; cell-to-cell map or None."""
    target = set(cells)
    t0 = min(cells)
    ta = anchor(kind, t0)
    tag = None if kind == SQUARE else t0[0 if kind == SEGMENT else 2]
    for i in image:
        if tag is not None and i[0 if kind == SEGMENT else 2] != tag:
            continue
        ia = anchor(kind, i)
        moved = translate(kind, image, ta[0] - ia[0], ta[1] - ia[1])
        if set(moved) == target:
            return dict(zip(cells, moved))
    return None


def symmetries(kind: str, cells: Iterable) -> list[dict]:
    """Every grid symmetry mapping the region onto itself, as cell maps.

    The identity comes first.
    """
    cells = list(cells)
    out = []
    for f in TRANSFORMS[kind]:
        m = _align(kind, cells, [f(c) for c in cells])
        if m is not None and m not in out:
            out.append(m)
    return out


def mirror_map(kind: str, cells: Iterable, axis: str) -> dict | None:
    """Left-right (axis="lr") or top-bottom (axis="tb") reflection of a region.

    Returns a cell-to-cell map if the reflected region coincides with the
    region after a translation, else None.
    """
    cells = list(cells)
    if axis not in ("lr", "tb"):
        raise ValueError(f"axis must be 'lr' or 'tb', not {axis!r}")
    if kind == SQUARE:
        def f(cell):
            r, c = cell
            return (r, -c) if axis == "lr" else (-r, c)
    elif kind == TRIANGULAR:
        def f(cell):
            a, b = tri_to_axial(cell)
            if axis == "lr":
                a, b = _mirror_lr_axial(a, b)
            else:
                a, b = a + b, -b
            return tri_from_axial(a, b)
    else:
        def f(cell):
            a, b = seg_to_mid(cell)
            return seg_from_mid(-a, b) if axis == "lr" else seg_from_mid(a, -b)
    return _align(kind, cells, [f(c) for c in cells])
