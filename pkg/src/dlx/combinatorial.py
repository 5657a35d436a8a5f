"""Non-geometric reductions: N queens and word squares."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .model import CoverProblem


@dataclass(frozen=True)
class QueensSpec:
    n: int
    ordering: str = "organ_pipe"   # or "natural"
    files_primary: bool = True

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("N must be at least 1")
        if self.ordering not in ("organ_pipe", "natural"):
            raise ValueError(f"unknown ordering {self.ordering!r}")


def organ_pipe(n: int) -> list[int]:
    """0..n-1 from the middle outward: 8 gives 4 3 5 2 6 1 7 0."""
    return [(n + j) // 2 if j % 2 == 0 else (n - 1 - j) // 2 for j in range(n)]


def queens_problem(spec: QueensSpec | int) -> CoverProblem:
    """Ranks Ri and files Fj primary, diagonals Ak = i+j and Bk = N-1-i+j secondary.

    The four corner diagonals (A0, A(2N-2), B0, B(2N-2)) occur in a single
    row each and are left out.  With ``files_primary=False`` the files become
    secondary as well, so the search branches on ranks only.
    """
    if isinstance(spec, int):
        spec = QueensSpec(spec)
    n = spec.n
    order = organ_pipe(n) if spec.ordering == "organ_pipe" else list(range(n))
    if spec.files_primary:
        primary = [name for i in order for name in (f"R{i}", f"F{i}")]
        secondary = []
    else:
        primary = [f"R{i}" for i in order]
        secondary = [f"F{i}" for i in order]
    diag = range(1, 2 * n - 2)
    secondary += [f"A{k}" for k in diag] + [f"B{k}" for k in diag]

    rows = []
    for i in range(n):
        for j in range(n):
            row = [f"R{i}", f"F{j}"]
            a, b = i + j, n - 1 - i + j
            if 0 < a < 2 * n - 2:
                row.append(f"A{a}")
            if 0 < b < 2 * n - 2:
                row.append(f"B{b}")
            rows.append(row)
    return CoverProblem.from_rows(primary, rows, secondary)


def queens_placement(problem: CoverProblem, rows: Iterable[int]) -> frozenset[tuple[int, int]]:
    """(rank, file) squares occupied by a queens solution."""
    out = set()
    for r in rows:
        names = problem.rows[r]
        out.add((int(names[0][1:]), int(names[1][1:])))
    return frozenset(out)


# --- word squares --------------------------------------------------------

@dataclass(frozen=True)
class WordSquareSpec:
    n: int
    words: tuple[str, ...]
    alphabet: str = "abcdefghijklmnopqrstuvwxyz"
    distinct: bool = False
    diagonals: bool = True

    def __post_init__(self):
        if not self.words:
            raise ValueError("empty dictionary")
        if len(self.alphabet) < 3:
            raise ValueError("alphabet needs at least three letters")
        for w in self.words:
            if len(w) != self.n:
                raise ValueError(f"word {w!r} does not have length {self.n}")
            bad = set(w) - set(self.alphabet)
            if bad:
                raise ValueError(f"word {w!r} uses letters outside the alphabet")


def square_slots(n: int, diagonals: bool = True) -> list[tuple[str, list[tuple[int, int]]]]:
    """(slot name, cells in reading order) for rows, columns and both diagonals."""
    slots = [(f"r{i}", [(i, j) for j in range(n)]) for i in range(n)]
    slots += [(f"c{j}", [(i, j) for i in range(n)]) for j in range(n)]
    if diagonals:
        slots.append(("d", [(i, i) for i in range(n)]))
        slots.append(("e", [(i, n - 1 - i) for i in range(n)]))
    return slots


def _slot_problem(slots: Sequence[tuple[str, Sequence[tuple[int, int]]]],
                  words: Sequence[str], alphabet: str, distinct: bool) -> CoverProblem:
    # Cells shared by several slots are chained through layers of secondary
    # columns (cell, layer, letter).  Number the k slots through a cell from
    # 0.  Slot i < k - 1 claims the layer-(i+1) column of its letter; slot
    # i > 0 claims every layer-i column except its own letter, so it collides
    # with slot i - 1 unless the two letters agree.  Agreement of neighbours
    # chains to agreement of all.
    through: dict[tuple[int, int], list[str]] = {}
    for name, cells in slots:
        for cell in cells:
            through.setdefault(cell, []).append(name)

    def col(cell, layer, letter):
        return f"{cell[0]}.{cell[1]}.{layer}{letter}"

    secondary: list[str] = []
    for cell in sorted(through):
        for layer in range(1, len(through[cell])):
            secondary += [col(cell, layer, x) for x in alphabet]
    unique_words = list(dict.fromkeys(words))
    if distinct:
        secondary += [f"w.{w}" for w in unique_words]

    rows, labels = [], []
    for name, cells in slots:
        for w in unique_words:
            row = [name]
            for cell, letter in zip(cells, w):
                owners = through[cell]
                if len(owners) == 1:
                    continue
                pos = owners.index(name)
                if pos > 0:
                    row += [col(cell, pos, x) for x in alphabet if x != letter]
                if pos < len(owners) - 1:
                    row.append(col(cell, pos + 1, letter))
            if distinct:
                row.append(f"w.{w}")
            rows.append(row)
            labels.append(f"{name} {w}")
    primary = [name for name, _ in slots]
    return CoverProblem.from_rows(primary, rows, secondary, labels)


def word_square_problem(spec: WordSquareSpec) -> CoverProblem:
    """Rows are (slot, word) pairs; a solution is a consistent word square."""
    return _slot_problem(square_slots(spec.n, spec.diagonals), spec.words,
                         spec.alphabet, spec.distinct)


def read_dictionary(path, n: int | None = None) -> list[str]:
    words = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            w = line.strip().lower()
            if w and not w.startswith("#") and (n is None or len(w) == n):
                words.append(w)
    return words


def word_square_grid(problem: CoverProblem, rows: Iterable[int], n: int) -> list[str]:
    """Letters of a solved square, read off the row labels."""
    grid = [[""] * n for _ in range(n)]
    for r in rows:
        slot, word = problem.row_label(r).split()
        if slot[0] == "r":
            i = int(slot[1:])
            for j in range(n):
                grid[i][j] = word[j]
        elif slot[0] == "c":
            j = int(slot[1:])
            for i in range(n):
                grid[i][j] = word[i]
    return ["".join(line) for line in grid]


def brute_force_squares(spec: WordSquareSpec) -> set[tuple[str, ...]]:
    """Every slot assignment whose letters agree cell by cell (test oracle).

    Slots are filled one at a time, dropping a branch as soon as two words
    disagree on a cell.
    """
    slots = square_slots(spec.n, spec.diagonals)
    words = list(dict.fromkeys(spec.words))
    found = set()

    def fill(k, choice, letters):
        if k == len(slots):
            found.add(tuple(choice))
            return
        cells = slots[k][1]
        for w in words:
            if spec.distinct and w in choice:
                continue
            if all(letters.get(c, ch) == ch for c, ch in zip(cells, w)):
                added = {c: ch for c, ch in zip(cells, w) if c not in letters}
                letters.update(added)
                fill(k + 1, choice + [w], letters)
                for c in added:
                    del letters[c]

    fill(0, [], {})
    return found
