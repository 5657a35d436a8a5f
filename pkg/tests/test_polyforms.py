import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dlx.core import SearchOptions, solve
from dlx.polyforms import geometry as G
from dlx.polyforms.boards import (Board, ShapeError, aztec_diamond, board_from_spec,
                                  hexagon_cluster, mutilated_chessboard, read_shape, rectangle,
                                  rhombus, scott_board, segment_grid)
from dlx.polyforms.generate import (Restriction, piece_cells, placements, polyiamond_problem,
                                    polystick_problem, solution_map)
from dlx.polyforms.pieces import (DOMINO, FREE, HEXIAMONDS, ONE_SIDED, PENTOMINOES, TETRASTICKS,
                                  WELDED, Piece, is_chiral, one_sided_set, orientations,
                                  piece_set, select)
from dlx.symmetry import canonical
from dlx.polyforms.presets import (GROUPS, PRESETS, orbit_representatives, preset,
                                   preset_names, x_at)


def by_name(pieces, name):
    return next(p for p in pieces if p.name == name)


def dihedral_orbit(cells):
    """Orientation count by brute force over the 8 square symmetries."""
    out = set()
    for reflect in (1, -1):
        pts = [(r, reflect * c) for r, c in cells]
        for _ in range(4):
            pts = [(c, -r) for r, c in pts]
            r0 = min(r for r, _ in pts)
            c0 = min(c for _, c in pts)
            out.add(frozenset((r - r0, c - c0) for r, c in pts))
    return len(out)


# --- pieces --------------------------------------------------------------

def test_pentomino_orientation_counts():
    want = dict(F=8, I=2, L=8, P=8, N=8, T=4, U=4, V=4, W=4, X=1, Y=8, Z=4)
    got = {p.name: len(orientations(p)) for p in PENTOMINOES}
    assert got == want
    assert got == {p.name: dihedral_orbit(p.cells) for p in PENTOMINOES}
    assert [p.name for p in PENTOMINOES] == list("FILPNTUVWXYZ")


def test_one_sided_counts():
    p = by_name(PENTOMINOES, "P")
    assert len(orientations(p, ONE_SIDED)) == 4
    assert len(one_sided_set(PENTOMINOES)) == 18
    assert len(one_sided_set(HEXIAMONDS)) == 19
    assert len(one_sided_set(TETRASTICKS)) == 25
    assert len(one_sided_set(select(TETRASTICKS, only=WELDED))) == 10


def test_hexiamond_data():
    assert len(HEXIAMONDS) == 12
    assert all(p.order == 6 and p.kind == G.TRIANGULAR for p in HEXIAMONDS)
    assert len(orientations(by_name(HEXIAMONDS, "sphinx"))) == 12
    assert len(orientations(by_name(HEXIAMONDS, "hexagon"))) == 1
    # Fixed hexiamonds: 94 shapes up to translation.
    assert sum(len(orientations(p)) for p in HEXIAMONDS) == 94


def test_tetrastick_data():
    assert [p.name for p in TETRASTICKS] == list("FHIJLNOPRTUVWXYZ")
    assert all(p.order == 4 and p.kind == G.SEGMENT for p in TETRASTICKS)
    assert len(orientations(by_name(TETRASTICKS, "X"))) == 1
    assert len(orientations(by_name(TETRASTICKS, "I"))) == 2


@pytest.mark.parametrize("piece", PENTOMINOES + HEXIAMONDS + TETRASTICKS,
                         ids=lambda p: f"{p.kind}-{p.name}")
def test_orientations_normalized_and_distinct(piece):
    free = orientations(piece, FREE)
    one = orientations(piece, ONE_SIDED)
    assert free[0] == piece.cells
    assert len(set(free)) == len(free)
    assert set(one) <= set(free)
    for shape in free:
        assert G.normalize(piece.kind, shape) == shape
        assert len(shape) == piece.order
    if is_chiral(piece):
        mirror = set(orientations(piece.mirrored(), ONE_SIDED))
        assert not mirror & set(one)
        assert mirror | set(one) == set(free)


def test_piece_helpers():
    with pytest.raises(ValueError):
        Piece("empty", G.SQUARE, ())
    with pytest.raises(ValueError):
        select(PENTOMINOES, exclude=["Q"])
    with pytest.raises(ValueError):
        piece_set("heptominoes")
    with pytest.raises(ValueError):
        orientations(PENTOMINOES[0], "sideways")
    assert len(select(PENTOMINOES, exclude=["X", "I"])) == 10
    assert [p.name for p in select(PENTOMINOES, only=["X", "I"])] == ["I", "X"]


# --- boards --------------------------------------------------------------

def test_builtin_boards():
    assert len(board_from_spec("scott8x8")) == 60
    assert (3, 3) not in scott_board()
    assert len(board_from_spec("rect:6x10")) == 60
    assert len(board_from_spec("mutilated-chessboard")) == 62
    assert len(board_from_spec("rhombus6x6")) == 72
    assert len(board_from_spec("obeirne-hexagon")) == 114
    assert len(board_from_spec("grid:5x5-segments")) == 60
    assert len(aztec_diamond(5)) == 100
    with pytest.raises(ValueError):
        board_from_spec("moon")


def test_square_names():
    b = rectangle(8, 8)
    assert b.name_of((0, 0)) == "11" and b.name_of((7, 7)) == "88"
    assert rectangle(3, 30).name_of((2, 29)) == "3u"


def test_segment_junctions():
    b = segment_grid(5)
    assert len(b.junctions()) == 16
    assert all(0 < x < 5 and 0 < y < 5 for x, y in b.junctions())


def test_triangle_adjacency_convention():
    assert sorted(G.neighbors(G.TRIANGULAR, (2, 2, 0))) == [(2, 1, 1), (2, 2, 1), (3, 2, 1)]
    for cell in rhombus(4).cells:
        for n in G.neighbors(G.TRIANGULAR, cell):
            assert cell in G.neighbors(G.TRIANGULAR, n)


def test_hexagon_board_edges():
    b = hexagon_cluster(2)
    assert len(b.edges()) == 156
    assert len(G.symmetries(b.kind, b.cells)) == 12
    assert G.mirror_map(b.kind, b.cells, "lr") is not None
    assert G.mirror_map(b.kind, b.cells, "tb") is not None


def test_board_symmetry_counts():
    assert len(G.symmetries(G.SQUARE, rectangle(8, 8).cells)) == 8
    assert len(G.symmetries(G.SQUARE, rectangle(6, 10).cells)) == 4
    assert len(G.symmetries(G.TRIANGULAR, rhombus(6).cells)) == 4
    assert len(G.symmetries(G.SEGMENT, segment_grid(5).cells)) == 8


def test_read_shape_square_and_triangular():
    b = read_shape("##.\n.##\n")
    assert b.kind == G.SQUARE and len(b) == 4 and (0, 2) not in b
    t = read_shape("@triangular\n#.#\n")
    assert t.kind == G.TRIANGULAR and set(t.cells) == {(0, 0, 0), (0, 1, 0)}
    s = read_shape("@segment\nH0,0 V0,0\n")
    assert set(s.cells) == {("H", 0, 0), ("V", 0, 0)}


@pytest.mark.parametrize("text", ["", "#x#", "@hexagonal\n#", "...", "@segment\nQ1,2"])
def test_read_shape_errors(text):
    with pytest.raises(ShapeError):
        read_shape(text)


def test_board_from_shape_file(tmp_path):
    path = tmp_path / "plus.txt"
    path.write_text(".#.\n###\n.#.\n")
    b = board_from_spec(str(path))
    assert len(b) == 5
    problem = placements([by_name(PENTOMINOES, "X")], b)
    assert len(problem.rows) == 1


# --- placements ----------------------------------------------------------

def test_scott_rows():
    p = placements(PENTOMINOES, scott_board())
    assert len(p.rows) == 1568
    assert len(p.primary) == 72
    assert len(placements([by_name(PENTOMINOES, "F")], scott_board()).rows) == 192
    counts = Counter(r[0] for r in p.rows)
    # 36 centres on the full board, 12 of which put a cell in the hole.
    assert counts["X"] == 24


def test_scott_packing_rows_are_generated():
    p = placements(PENTOMINOES, scott_board())
    rows = {frozenset(r) for r in p.rows}
    for line in SCOTT_PACKING:
        assert frozenset(line.split()) in rows


def test_rows_cover_piece_and_cells_once():
    p = placements(PENTOMINOES, rectangle(6, 10))
    assert len(set(p.rows)) == len(p.rows)
    for row in p.rows:
        assert row[0] in "FILPNTUVWXYZ"
        assert len(row) == 6 and len(set(row)) == 6


def test_column_order_options():
    b = rectangle(3, 20)
    cells_first = placements(PENTOMINOES, b)
    pieces_first = placements(PENTOMINOES, b, cells_first=False)
    assert cells_first.primary[:2] == ("11", "12")
    assert pieces_first.primary[:12] == tuple("FILPNTUVWXYZ")
    assert cells_first.rows == pieces_first.rows


def test_dominoes_are_anonymous():
    p = placements([DOMINO], mutilated_chessboard())
    assert len(p.primary) == 62
    assert all(len(r) == 2 for r in p.rows)
    # Adjacent pairs of the 62 cells.
    cells = set(mutilated_chessboard().cells)
    pairs = sum((r, c + 1) in cells for r, c in cells) + sum((r + 1, c) in cells for r, c in cells)
    assert len(p.rows) == pairs


def test_single_triangle():
    mono = Piece("m", G.TRIANGULAR, ((0, 0, 0),))
    b = Board(G.TRIANGULAR, ((0, 0, 0),))
    assert len(polyiamond_problem([mono], b).rows) == 1


def test_piece_larger_than_board():
    with pytest.raises(ValueError):
        placements(PENTOMINOES, rectangle(2, 2))
    with pytest.raises(ValueError):
        polyiamond_problem(HEXIAMONDS, rectangle(6, 6))
    with pytest.raises(ValueError):
        polystick_problem(TETRASTICKS, rectangle(6, 6))


def test_hexagon_problem_columns():
    p = polyiamond_problem(one_sided_set(HEXIAMONDS), hexagon_cluster(2), mode=ONE_SIDED)
    assert len(p.primary) == 19 + 114
    assert not p.secondary


def test_tetrastick_rows():
    p = polystick_problem(select(TETRASTICKS, exclude=["L"]), segment_grid(5))
    rows = {frozenset(r) for r in p.rows}
    assert frozenset("V H23 I33 H33 V43 I44 V44".split()) in rows
    assert frozenset("Z H24 V33 I33 V32 H32".split()) in rows
    assert p.primary[-15:] == tuple("FHIJNOPRTUVWXYZ")
    assert len(p.secondary) == 16
    for row in p.rows:
        if row[0] == "I" and all(n[0] == "H" and n[2] == "0" for n in row[1:] if n[0] != "I"):
            assert not any(n[0] == "I" for n in row[1:])


def test_restrictions_by_orientation_and_placement():
    b = scott_board()
    x23 = Restriction("X", placements=(x_at(2, 3),))
    p = placements(PENTOMINOES, b, [x23, Restriction("P", orientations=(0, 1, 2, 3))])
    counts = Counter(r[0] for r in p.rows)
    assert counts["X"] == 1
    full = Counter(r[0] for r in placements(PENTOMINOES, b).rows)
    assert counts["P"] * 2 == full["P"]
    with pytest.raises(ValueError):
        placements(PENTOMINOES, b, [Restriction("Q")])


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_restriction_monotonicity(seed):
    rng = random.Random(seed)
    pieces = select(PENTOMINOES, only=["L", "P", "Y", "N"])
    board = rectangle(4, 5)
    rules = [Restriction(p.name, orientations=tuple(sorted(
        rng.sample(range(len(orientations(p))), rng.randint(1, len(orientations(p)))))))
        for p in pieces if rng.random() < 0.7]
    full = placements(pieces, board)
    cut = placements(pieces, board, rules)
    assert set(cut.rows) <= set(full.rows)

    def packings(p):
        sols, _ = solve(p)
        return {frozenset(p.rows[r] for r in s.rows) for s in sols}

    assert packings(cut) <= packings(full)


def test_no_two_rows_cross_in_any_solution():
    problem = polystick_problem(one_sided_set(select(TETRASTICKS, only=WELDED)), segment_grid(4),
                                mode=ONE_SIDED)
    bare = polystick_problem(one_sided_set(select(TETRASTICKS, only=WELDED)), segment_grid(4),
                             mode=ONE_SIDED, junctions=False)
    sols, _ = solve(problem)
    assert sols
    interior = set(segment_grid(4).junctions())
    for s in sols:
        seen = Counter()
        for r in s.rows:
            _, cells = piece_cells(segment_grid(4), problem, r)
            seen.update(p for p in G.straight_points(cells) if p in interior)
        assert max(seen.values(), default=0) <= 1
    loose, _ = solve(bare)
    assert len(loose) == len(sols)


def test_junction_columns_forbid_crossing():
    # Two straight 2-sticks on a plus-shaped board can only cross.
    board = Board(G.SEGMENT, (("H", 0, 1), ("H", 1, 1), ("V", 1, 0), ("V", 1, 1)))
    stick = [("H", 0, 0), ("H", 1, 0)]
    pieces = [Piece("a", G.SEGMENT, stick), Piece("b", G.SEGMENT, stick)]
    assert solve(placements(pieces, board))[0] == []
    assert len(solve(placements(pieces, board, junctions=False))[0]) == 2


def test_solution_map_labels_anonymous_pieces_apart():
    p = placements([DOMINO], rectangle(2, 2))
    sols, _ = solve(p)
    assert len(sols) == 2
    pm = solution_map(rectangle(2, 2), p, sols[0].rows)
    assert len(pm) == 4 and len(set(pm.values())) == 2


# --- presets -------------------------------------------------------------

def test_preset_names_and_groups():
    names = preset_names()
    for required in ("scott-x23", "scott-x24", "scott-x33", "6x10-xquadrant", "rhombus-sphinx3"):
        assert required in names
    for group, members in GROUPS.items():
        assert all(m in PRESETS for m in members)
        assert [s.name for s in preset(group)] == list(members)
    with pytest.raises(ValueError):
        preset("nope")


@pytest.mark.parametrize("square", [23, 24, 33])
def test_scott_presets_force_x(square):
    (s,) = preset(f"scott-x{square}")
    assert len(s.force) == 1
    row = s.problem.rows[s.force[0]]
    assert row[0] == "X"
    r, f = divmod(square, 10)
    assert frozenset(row[1:]) == {s.board.name_of(c) for c in x_at(r, f)}
    assert s.options.skip_empty_branch_column is False


def test_orbit_representatives():
    b = segment_grid(5)
    rep = orbit_representatives(b, by_name(TETRASTICKS, "T"))
    full = placements([by_name(TETRASTICKS, "T")], b)
    assert len(rep.placements) * 8 == len(full.rows)
    with pytest.raises(ValueError):
        orbit_representatives(rectangle(8, 8), by_name(PENTOMINOES, "X"))


def test_residual_symmetries():
    assert len(preset("scott-x23")[0].residual()) == 1
    assert len(preset("welded-4x4")[0].residual()) == 8
    assert len(preset("y-15x15-pinwheel")[0].residual()) == 4
    assert len(preset("y-15x15-one-turned")[0].residual()) == 1
    assert len(preset("y-15x15-paired")[0].residual()) == 2
    for s in preset("obeirne"):
        assert len(s.residual()) == 1


def test_obeirne_presets_cover_every_hexagon_position():
    subs = preset("obeirne")
    assert len(subs) == 7
    maps = G.symmetries(G.TRIANGULAR, subs[0].board.cells)
    positions = set()
    for s in subs:
        (row,) = s.force
        _, cells = piece_cells(s.board, s.problem, row)
        positions |= {frozenset(m[c] for c in cells) for m in maps}
    hexagon = placements([by_name(HEXIAMONDS, "hexagon")], subs[0].board)
    assert len(positions) == len(hexagon.rows) == 43


def test_tetrastick_presets():
    for ex in "HJLNY":
        (s,) = preset(f"tetrastick-5x5-no-{ex}")
        assert ex not in {p.name for p in s.pieces}
        assert len(s.pieces) == 15


SCOTT_PACKING = ["I 11 12 13 14 15", "N 16 26 27 37 47", "L 17 18 28 38 48", "U 21 22 31 41 42",
           "X 23 32 33 34 43", "W 24 25 35 36 46", "P 51 52 53 62 63", "F 56 64 65 66 75",
           "Z 57 58 67 76 77", "T 61 71 72 73 81", "V 68 78 86 87 88", "Y 74 82 83 84 85"]


def test_scott_packing_is_found_up_to_symmetry():
    # Its X is centred at 33, where P is kept unflipped, so look for the
    # packing or one of its images.
    (s,) = preset("scott-x33")
    sols, _ = solve(s.problem, SearchOptions(), s.force)
    keys = {canonical(s.board, solution_map(s.board, s.problem, sol.rows)) for sol in sols}
    names = {s.board.name_of(c): c for c in s.board.cells}
    fig = {names[n]: line.split()[0] for line in SCOTT_PACKING for n in line.split()[1:]}
    assert canonical(s.board, fig) in keys
