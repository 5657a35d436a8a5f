"""Edge symmetry scores for packings.

A packing is a map from board cells to piece identities.  Its between-piece
edges are the internal board edges whose two cells hold different pieces.
hsym counts those edges that are still between-piece edges after a
left-right reflection of the packing, vsym the same for top-bottom.
Square and segment boards are taken as stored (rank 1 at the top);
triangular boards are turned a quarter so that their rows run vertically.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Iterable, Iterator

from .polyforms import geometry as G
from .polyforms.boards import Board


@dataclass(frozen=True, order=True)
class SymmetryScore:
    hsym: int
    vsym: int

    @property
    def key(self) -> tuple[int, int]:
        """Ranking key: the larger score first, then the smaller."""
        return (max(self.hsym, self.vsym), min(self.hsym, self.vsym))

    def __str__(self) -> str:
        return f"hsym={self.hsym} vsym={self.vsym}"


def _check_total(board: Board, piece_map: dict) -> None:
    missing = [c for c in board.cells if c not in piece_map]
    if missing:
        raise ValueError(f"packing leaves {len(missing)} board cells unassigned")


def between_piece_edges(board: Board, piece_map: dict) -> set[frozenset]:
    _check_total(board, piece_map)
    return {frozenset(e) for e in board.edges() if piece_map[e[0]] != piece_map[e[1]]}


def _reflect(edges: set[frozenset], cell_map: dict) -> set[frozenset]:
    return {frozenset(cell_map[c] for c in e) for e in edges}


@lru_cache(maxsize=16)
def _mirror_pairs(board: Board, any_orientation: bool) -> tuple[tuple[dict, dict], ...]:
    """(left-right, top-bottom) reflection pairs to score against.

    With ``any_orientation`` each board symmetry g contributes the pair
    conjugated by g, so scoring against it equals scoring the packing turned
    by g.  Pairs that coincide are kept once.
    """
    lr = G.mirror_map(board.kind, board.cells, "lr")
    tb = G.mirror_map(board.kind, board.cells, "tb")
    if lr is None or tb is None:
        raise ValueError(f"board {board.name} is not closed under both reflections")
    if board.kind == G.TRIANGULAR:
        # Triangle packings are scored as drawn with the rows running up the
        # page, which makes the row-preserving reflection the top-bottom one.
        lr, tb = tb, lr
    if not any_orientation:
        return ((lr, tb),)
    pairs, seen = [], set()
    for g in G.symmetries(board.kind, board.cells):
        inv = {v: k for k, v in g.items()}
        pair = tuple({c: inv[m[g[c]]] for c in board.cells} for m in (lr, tb))
        key = tuple(tuple(sorted(m.items())) for m in pair)
        if key not in seen:
            seen.add(key)
            pairs.append(pair)
    return tuple(pairs)


def symmetry_scores(board: Board, piece_map: dict, any_orientation: bool = False) -> SymmetryScore:
    """hsym and vsym of a packing.

    The scores do not survive every board symmetry (a hexagon turned by 60
    degrees is scored against other axes), so ``any_orientation`` returns
    the best score over all images of the packing instead.
    """
    edges = between_piece_edges(board, piece_map)
    best = None
    for lr, tb in _mirror_pairs(board, any_orientation):
        score = SymmetryScore(len(edges & _reflect(edges, lr)), len(edges & _reflect(edges, tb)))
        if best is None or score.key > best.key:
            best = score
    return best


class MaxSymmetric:
    """Running set of the most symmetric packings seen so far.

    Packings are ranked by the larger of their two scores, then the smaller.
    Only the current best are kept.
    """

    def __init__(self):
        self.best_key: tuple[int, int] | None = None
        self.best: list[tuple[Hashable, SymmetryScore]] = []
        self.seen = 0

    def add(self, item: Hashable, score: SymmetryScore) -> bool:
        """Offer one packing; returns True if it is (now) among the best."""
        self.seen += 1
        if self.best_key is None or score.key > self.best_key:
            self.best_key = score.key
            self.best = [(item, score)]
            return True
        if score.key == self.best_key:
            self.best.append((item, score))
            return True
        return False


def max_symmetric(board: Board, packings: Iterable[tuple[Hashable, dict]],
                  any_orientation: bool = False) -> MaxSymmetric:
    """Feed ``(identifier, piece_map)`` pairs through a :class:`MaxSymmetric`."""
    acc = MaxSymmetric()
    for item, piece_map in packings:
        acc.add(item, symmetry_scores(board, piece_map, any_orientation))
    return acc


def partition(piece_map: dict) -> frozenset[frozenset]:
    """The packing as a set of cell sets, forgetting the piece names."""
    groups: dict = {}
    for cell, ident in piece_map.items():
        groups.setdefault(ident, set()).add(cell)
    return frozenset(frozenset(g) for g in groups.values())


def canonical(board: Board, piece_map: dict, maps: list[dict] | None = None) -> tuple:
    """A representative shared by all images of the packing under board symmetries.

    Piece names are ignored: within a set of pairwise distinct shapes (free or
    one-sided) the cell partition already determines which piece is where.
    """
    maps = maps if maps is not None else G.symmetries(board.kind, board.cells)
    order = board.position
    best = None
    for m in maps:
        image = sorted(tuple(sorted((m[c] for c in part), key=order))
                       for part in partition(piece_map))
        key = tuple(tuple(order(c) for c in part) for part in
                    sorted(image, key=lambda p: [order(c) for c in p]))
        if best is None or key < best:
            best = key
    return best


def distinct_under_symmetry(board: Board, packings: Iterable[dict],
                            maps: list[dict] | None = None) -> Iterator[dict]:
    """Yield the packings not equivalent to an earlier one.

    ``maps`` defaults to every symmetry of the board; pass a subgroup to
    reduce by fewer.
    """
    maps = maps if maps is not None else G.symmetries(board.kind, board.cells)
    seen = set()
    for pm in packings:
        key = canonical(board, pm, maps)
        if key not in seen:
            seen.add(key)
            yield pm
