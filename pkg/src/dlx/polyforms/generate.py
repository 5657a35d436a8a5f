"""Reduce piece packings to cover problems."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from ..model import CoverProblem
from . import geometry as G
from .boards import Board, junction_name
from .pieces import FREE, ONE_SIDED, Piece, orientations


@dataclass(frozen=True)
class Restriction:
    """Rows a piece may use.

    ``orientations`` are indices into ``orientations(piece, "free")``;
    ``placements`` is an explicit list of allowed cell sets in board
    coordinates; ``predicate`` gets the placed cells.  Whatever is given
    must all hold.  Restrictions only ever remove rows.
    """

    piece: str
    orientations: tuple[int, ...] | None = None
    placements: tuple[frozenset, ...] | None = None
    predicate: Callable[[tuple], bool] | None = None

    def allows(self, orientation: int, cells: tuple) -> bool:
        if self.orientations is not None and orientation not in self.orientations:
            return False
        if self.placements is not None and frozenset(cells) not in self.placements:
            return False
        if self.predicate is not None and not self.predicate(cells):
            return False
        return True


def _fits(board: Board, shape: tuple) -> Iterable[tuple]:
    """Every translate of a normalized ``shape`` lying inside ``board``.

    Translates are tried so that the shape's first cell lands on each board
    cell in turn, which keeps the row order tied to the board order.
    """
    kind = board.kind
    a0 = G.anchor(kind, shape[0])
    seen = set()
    for target in board.cells:
        if kind != G.SQUARE and target[0 if kind == G.SEGMENT else 2] != \
                shape[0][0 if kind == G.SEGMENT else 2]:
            continue
        ta = G.anchor(kind, target)
        moved = G.translate(kind, shape, ta[0] - a0[0], ta[1] - a0[1])
        if moved in seen:
            continue
        if all(c in board for c in moved):
            seen.add(moved)
            yield moved


def placements(pieces: Sequence[Piece], board: Board,
               restrictions: Iterable[Restriction] = (), mode: str = FREE,
               junctions: bool = True, cells_first: bool = True) -> CoverProblem:
    """Cover problem whose solutions are the packings of ``pieces`` into ``board``.

    Primary columns are the board cells in board order followed by the named
    pieces (anonymous pieces have none); ``cells_first=False`` puts the
    pieces first.  The order only matters for tie-breaking during search.
    On segment boards the interior junctions are secondary columns, claimed
    by any placement running straight through one.  Rows list the piece,
    then its cells in board order.
    """
    kind = board.kind
    names = [p.name for p in pieces if not p.anonymous]
    if len(set(names)) != len(names):
        raise ValueError("piece names repeat")
    by_piece: dict[str, list[Restriction]] = {}
    for r in restrictions:
        if r.piece not in {p.name for p in pieces}:
            raise ValueError(f"restriction names unknown piece {r.piece!r}")
        by_piece.setdefault(r.piece, []).append(r)

    junction_set = set(board.junctions()) if (junctions and kind == G.SEGMENT) else set()
    secondary = [junction_name(p) for p in sorted(junction_set)]

    rows, labels = [], []
    seen_rows = set()
    for piece in pieces:
        if piece.kind != kind:
            raise ValueError(f"piece {piece.name} is {piece.kind}, board is {kind}")
        if piece.order > len(board):
            raise ValueError(f"piece {piece.name} is larger than the board")
        free = orientations(piece, FREE)
        allowed = set(orientations(piece, mode))
        rules = by_piece.get(piece.name, [])
        for index, shape in enumerate(free):
            if shape not in allowed:
                continue
            for cells in _fits(board, shape):
                if not all(r.allows(index, cells) for r in rules):
                    continue
                ordered = sorted(cells, key=board.position)
                row = [] if piece.anonymous else [piece.name]
                row += [board.name_of(c) for c in ordered]
                if junction_set:
                    row += [junction_name(p) for p in G.straight_points(cells)
                            if p in junction_set]
                key = tuple(row) if not piece.anonymous else frozenset(row)
                if key in seen_rows:
                    continue
                seen_rows.add(key)
                rows.append(row)
                labels.append(" ".join(row) if not piece.anonymous
                              else piece.name + " " + " ".join(row))
    cell_cols = [board.name_of(c) for c in board.cells]
    primary = cell_cols + names if cells_first else names + cell_cols
    return CoverProblem.from_rows(primary, rows, secondary, labels)


def polyiamond_problem(pieces: Sequence[Piece], board: Board,
                       restrictions: Iterable[Restriction] = (),
                       mode: str = FREE, **kw) -> CoverProblem:
    if board.kind != G.TRIANGULAR:
        raise ValueError("polyiamond problems need a triangular board")
    return placements(pieces, board, restrictions, mode, **kw)


def polystick_problem(pieces: Sequence[Piece], board: Board,
                      restrictions: Iterable[Restriction] = (),
                      mode: str = FREE, **kw) -> CoverProblem:
    if board.kind != G.SEGMENT:
        raise ValueError("polystick problems need a segment board")
    return placements(pieces, board, restrictions, mode, **kw)


def piece_cells(board: Board, problem: CoverProblem, row: int) -> tuple[str, list]:
    """(piece name, board cells) of one row of a generated problem."""
    by_name = {board.name_of(c): c for c in board.cells}
    label = problem.row_label(row).split()
    piece = label[0]
    cells = [by_name[n] for n in label[1:] if n in by_name]
    return piece, cells


def solution_map(board: Board, problem: CoverProblem, rows: Iterable[int]) -> dict:
    """Cell -> piece identity for one solution.

    Anonymous pieces are told apart by their row number.
    """
    out = {}
    for r in rows:
        piece, cells = piece_cells(board, problem, r)
        ident = piece if problem.labels is None or problem.rows[r][0] == piece else f"{piece}#{r}"
        for c in cells:
            out[c] = ident
    return out
