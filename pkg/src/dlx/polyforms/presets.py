"""Named packing problems with their symmetry-breaking restrictions.

Each preset expands to one or more subcases.  A subcase carries the cover
problem, rows to force before searching, and the search options to use
(tables of nodes and updates here are taken without the empty-column
shortcut).  Group presets (``scott``,
``dudeney``, ...) list several subcases whose solution counts add up.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from ..core import SearchOptions
from ..model import CoverProblem, SolutionRecord
from ..symmetry import distinct_under_symmetry
from . import geometry as G
from .boards import Board, hexagon_cluster, mutilated_chessboard, rectangle, rhombus, \
    scott_board, segment_grid
from .generate import Restriction, _fits, placements, solution_map
from .pieces import DOMINO, FREE, HEXIAMONDS, ONE_SIDED, PENTOMINOES, TETROMINO_O, \
    TETRASTICKS, WELDED, Piece, one_sided_set, orientations, select

# Reference tables count one update per splice with no shortcut for an
# empty branching column.
TABLE_OPTIONS = SearchOptions(skip_empty_branch_column=False)


@dataclass(frozen=True)
class Subcase:
    name: str
    description: str
    board: Board
    pieces: tuple[Piece, ...]
    problem: CoverProblem
    force: tuple[int, ...] = ()
    options: SearchOptions = TABLE_OPTIONS

    def force_labels(self) -> list[list[str]]:
        return [list(self.problem.rows[r]) for r in self.force]

    def residual(self) -> list[dict]:
        """Board symmetries that map the problem's placement set onto itself.

        When the restrictions keep whole classes of placements, each packing
        is found once per residual symmetry.
        """
        return residual_symmetries(self.board, self.problem)

    def packings(self, solutions: Iterable[SolutionRecord]) -> list[dict]:
        return [solution_map(self.board, self.problem, s.rows) for s in solutions]

    def distinct(self, solutions: Iterable[SolutionRecord]) -> list[dict]:
        """One packing per class of solutions equivalent under board symmetries.

        The subcases of a group never share a class, so these counts add up
        across the group.
        """
        return list(distinct_under_symmetry(self.board, self.packings(solutions)))


def residual_symmetries(board: Board, problem: CoverProblem) -> list[dict]:
    by_name = {board.name_of(c): c for c in board.cells}
    # Reflections turn a one-sided piece into its partner, so only the cell
    # sets are compared, not the piece names.
    cell_sets = {frozenset(by_name[n] for n in row if n in by_name) for row in problem.rows}
    out = []
    for m in G.symmetries(board.kind, board.cells):
        if all(frozenset(m[c] for c in cs) in cell_sets for cs in cell_sets):
            out.append(m)
    return out


def _rows_of(problem: CoverProblem, piece: str) -> list[int]:
    return [i for i, row in enumerate(problem.rows) if row[0] == piece]


def x_at(rank: int, file: int) -> frozenset:
    """Cells of the X pentomino centred at a 1-based square name such as 23."""
    r, c = rank - 1, file - 1
    return frozenset([(r - 1, c), (r, c - 1), (r, c), (r, c + 1), (r + 1, c)])


ROTATIONS_ONLY = (0, 1, 2, 3)


def orbit_representatives(board: Board, piece: Piece, mode: str = FREE) -> Restriction:
    """Keep the first placement of ``piece`` in each orbit of the board's symmetries.

    Only valid when every orbit has full size, so that each solution class
    keeps exactly one member; otherwise ValueError.
    """
    maps = G.symmetries(board.kind, board.cells)
    shapes = orientations(piece, mode)
    keep, seen = [], set()
    for shape in orientations(piece, FREE):
        if shape not in shapes:
            continue
        for cells in _fits(board, shape):
            pl = frozenset(cells)
            if pl in seen:
                continue
            orbit = {frozenset(m[c] for c in pl) for m in maps}
            if len(orbit) != len(maps):
                raise ValueError(f"{piece.name} has a placement fixed by a board symmetry")
            seen |= orbit
            keep.append(pl)
    return Restriction(piece.name, placements=tuple(keep))


def _subcase(name, description, board, pieces, restrictions=(), mode=FREE,
             force_piece=None, options=TABLE_OPTIONS, **kw) -> Subcase:
    problem = placements(pieces, board, restrictions, mode, **kw)
    force = tuple(_rows_of(problem, force_piece)) if force_piece else ()
    if force_piece and len(force) != 1:
        raise ValueError(f"{name}: expected one row for {force_piece}, found {len(force)}")
    return Subcase(name, description, board, tuple(pieces), problem, force, options)


# --- pentominoes ---------------------------------------------------------------

def _scott(square: int) -> list[Subcase]:
    rank, file = divmod(square, 10)
    rules = [Restriction("X", placements=(x_at(rank, file),))]
    desc = f"Scott's board with X centred at {square}"
    if rank == file:
        rules.append(Restriction("P", orientations=ROTATIONS_ONLY))
        desc += ", P not turned over"
    return [_subcase(f"scott-x{square}", desc, scott_board(), PENTOMINOES, rules,
                     force_piece="X")]


def _scott_lexicographic() -> list[Subcase]:
    return [_subcase("scott-lexicographic",
                     "Scott's board, no restrictions, leftmost column first",
                     scott_board(), PENTOMINOES,
                     options=SearchOptions(heuristic="leftmost", skip_empty_branch_column=False))]


def _scott_pieces_first() -> list[Subcase]:
    return [_subcase("scott-pieces-first",
                     "Scott's board, piece columns first, leftmost column first",
                     scott_board(), PENTOMINOES, cells_first=False,
                     options=SearchOptions(heuristic="leftmost", skip_empty_branch_column=False))]


def _six_by_ten() -> list[Subcase]:
    def upper_left(cells):
        r = sum(c[0] for c in cells) / 5
        f = sum(c[1] for c in cells) / 5
        return r < 2.5 and f < 4.5
    return [_subcase("6x10-xquadrant", "6x10 rectangle with X in the upper left quarter",
                     rectangle(6, 10), PENTOMINOES, [Restriction("X", predicate=upper_left)])]


def _three_by_thirty() -> list[Subcase]:
    def left_half(cells):
        return sum(c[1] for c in cells) / 5 < 14.5

    def not_bottom(cells):
        return cells[0][0] != 2
    return [_subcase("onesided-3x30",
                     "one-sided pentominoes in 3x30, X in the left half, I off the bottom rank",
                     rectangle(3, 30), one_sided_set(PENTOMINOES),
                     [Restriction("X", predicate=left_half), Restriction("I", predicate=not_bottom)],
                     mode=ONE_SIDED)]


def _dudeney(diagonal: bool) -> list[Subcase]:
    centres = [(2, 2), (3, 3), (4, 4)] if diagonal else [(2, 3), (2, 4), (3, 4)]
    rules = [Restriction("X", placements=tuple(x_at(r, f) for r, f in centres))]
    desc = "8x8 board, twelve pentominoes and the square tetromino, X "
    if diagonal:
        rules.append(Restriction("P", orientations=ROTATIONS_ONLY))
        desc += "on the diagonal of one octant, P not turned over"
    else:
        desc += "off the diagonal in one octant"
    name = "dudeney-diag" if diagonal else "dudeney-offdiag"
    return [_subcase(name, desc, rectangle(8, 8), PENTOMINOES + [TETROMINO_O], rules)]


# Corner patterns of the Y packing, read clockwise from the top left corner:
# H when the piece covering that corner has its long bar along the top or
# bottom edge, V when along a side.  One representative per symmetry class.
Y_CLASSES = {"pinwheel": "HVHV", "one-turned": "HHHV", "paired": "HHVV", "parallel": "HHHH"}


def _y_square(pattern: str) -> list[Subcase]:
    board = rectangle(15, 15)
    n = 15
    corners = [(0, 0), (0, n - 1), (n - 1, n - 1), (n - 1, 0)]
    want = dict(zip(corners, pattern))

    def corner_rule(cells):
        for c in cells:
            if c in want:
                ranks = {r for r, _ in cells}
                horizontal = max(sum(1 for r, _ in cells if r == q) for q in ranks) == 4
                return want[c] == ("H" if horizontal else "V")
        return True
    y = next(p for p in PENTOMINOES if p.name == "Y")
    piece = Piece("Y", y.kind, y.cells, anonymous=True)
    name = next(k for k, v in Y_CLASSES.items() if v == pattern)
    return [_subcase(f"y-15x15-{name}",
                     f"45 Y pentominoes in a 15x15 square, corner bars {pattern}",
                     board, [piece], [Restriction("Y", predicate=corner_rule)])]


def _mutilated() -> list[Subcase]:
    return [_subcase("mutilated", "31 dominoes on the 8x8 board minus 11 and 88",
                     mutilated_chessboard(), [DOMINO])]


# --- hexiamonds ----------------------------------------------------------------

def _rhombus_sphinx3() -> list[Subcase]:
    return [_subcase("rhombus-sphinx3", "12 hexiamonds in the 6x6 rhombus, sphinx in 3 orientations",
                     rhombus(6), HEXIAMONDS, [Restriction("sphinx", orientations=(0, 1, 2))])]


# --- tetrasticks ---------------------------------------------------------------

def _i_quarter(cells) -> bool:
    """I horizontal, flush with the left side, in the upper half."""
    return cells[0][0] == "H" and min(c[1] for c in cells) == 0 and cells[0][2] <= 2


# Which piece breaks the eight symmetries of the square in each subcase.
TETRASTICK_BREAKERS = {"H": "I", "J": "I", "L": "I", "N": "I", "Y": "T"}


def _tetrastick(excluded: str) -> list[Subcase]:
    board = segment_grid(5)
    pieces = select(TETRASTICKS, exclude=[excluded])
    breaker = TETRASTICK_BREAKERS[excluded]
    if breaker == "I":
        rule = Restriction("I", predicate=_i_quarter)
        how = "I in one quarter"
    else:
        rule = orbit_representatives(board, next(p for p in pieces if p.name == breaker))
        how = f"{breaker} in one placement per symmetry class"
    return [_subcase(f"tetrastick-5x5-no-{excluded}",
                     f"15 tetrasticks without {excluded} in a 5x5 grid, {how}",
                     board, pieces, [rule])]


def _welded() -> list[Subcase]:
    board = segment_grid(4)
    pieces = one_sided_set(select(TETRASTICKS, only=WELDED))
    return [_subcase("welded-4x4", "one-sided welded tetrasticks in a 4x4 grid",
                     board, pieces, mode=ONE_SIDED)]


# --- O'Beirne's hexagon -------------------------------------------------------

def _hexagon_classes(board: Board) -> list[tuple[float, frozenset, list[dict]]]:
    """(distance from the centre, representative placement, its stabilizer) for
    each symmetry class of positions of the hexagon piece, nearest first."""
    maps = G.symmetries(board.kind, board.cells)
    piece = next(p for p in HEXIAMONDS if p.name == "hexagon")
    axial = [G.tri_to_axial(c) for c in board.cells]
    cx = sum(a for a, _ in axial) / len(axial)
    cy = sum(b for _, b in axial) / len(axial)
    out, seen = [], set()
    for shape in orientations(piece, FREE):
        for cells in _fits(board, shape):
            pl = frozenset(cells)
            if pl in seen:
                continue
            seen |= {frozenset(m[c] for c in pl) for m in maps}
            pts = [G.tri_to_axial(c) for c in pl]
            dx = (sum(a for a, _ in pts) / 6 - cx) / 3
            dy = (sum(b for _, b in pts) / 6 - cy) / 3
            dist = (dx * dx + dx * dy + dy * dy) ** 0.5
            stab = [m for m in maps if frozenset(m[c] for c in pl) == pl]
            out.append((round(dist, 6), pl, stab))
    return sorted(out, key=lambda t: t[0])


def _obeirne(k: int) -> list[Subcase]:
    board = hexagon_cluster(2)
    pieces = one_sided_set(HEXIAMONDS)
    dist, hexa, stab = _hexagon_classes(board)[k]
    rules = [Restriction("hexagon", placements=(hexa,))]
    if len(stab) > 1:
        # Break what is left of the symmetry with the crown: one placement
        # per class under the maps that fix the hexagon.
        crown = next(p for p in HEXIAMONDS if p.name == "crown")
        keep, seen = [], set()
        for shape in orientations(crown, FREE):
            for cells in _fits(board, shape):
                pl = frozenset(cells)
                if pl & hexa or pl in seen:
                    continue
                seen |= {frozenset(m[c] for c in pl) for m in stab}
                keep.append(pl)
        rules.append(Restriction("crown", placements=tuple(keep)))
    return [_subcase(f"obeirne-d{k}",
                     f"19 one-sided hexiamonds in O'Beirne's hexagon, hexagon piece at "
                     f"distance {dist:.3g} from the centre",
                     board, pieces, rules, mode=ONE_SIDED, force_piece="hexagon")]


PRESETS: dict[str, Callable[[], list[Subcase]]] = {
    "scott-x23": lambda: _scott(23),
    "scott-x24": lambda: _scott(24),
    "scott-x33": lambda: _scott(33),
    "scott-lexicographic": _scott_lexicographic,
    "scott-pieces-first": _scott_pieces_first,
    "6x10-xquadrant": _six_by_ten,
    "onesided-3x30": _three_by_thirty,
    "dudeney-offdiag": lambda: _dudeney(False),
    "dudeney-diag": lambda: _dudeney(True),
    "mutilated": _mutilated,
    "rhombus-sphinx3": _rhombus_sphinx3,
    "welded-4x4": _welded,
}
for _k, _v in Y_CLASSES.items():
    PRESETS[f"y-15x15-{_k}"] = (lambda v=_v: _y_square(v))
for _k in range(7):
    PRESETS[f"obeirne-d{_k}"] = (lambda k=_k: _obeirne(k))
for _ex in TETRASTICK_BREAKERS:
    PRESETS[f"tetrastick-5x5-no-{_ex}"] = (lambda ex=_ex: _tetrastick(ex))

GROUPS: dict[str, tuple[str, ...]] = {
    "scott": ("scott-x23", "scott-x24", "scott-x33"),
    "dudeney": ("dudeney-offdiag", "dudeney-diag"),
    "tetrastick-5x5": tuple(f"tetrastick-5x5-no-{ex}" for ex in TETRASTICK_BREAKERS),
    "y-15x15": tuple(f"y-15x15-{k}" for k in Y_CLASSES),
    "obeirne": tuple(f"obeirne-d{k}" for k in range(7)),
}


def preset_names() -> list[str]:
    return sorted(PRESETS) + sorted(GROUPS)


def preset(name: str) -> list[Subcase]:
    """Subcases of a preset or preset group."""
    if name in PRESETS:
        return PRESETS[name]()
    if name in GROUPS:
        return [s for member in GROUPS[name] for s in PRESETS[member]()]
    raise ValueError(f"unknown preset {name!r} (known: {', '.join(preset_names())})")
