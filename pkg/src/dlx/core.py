"""Dancing links: the four-way-linked matrix and the search over it."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from . import _kernels as K
from .model import CoverProblem, SolutionRecord, check_solution

__all__ = [
    "LinkedMatrix", "SearchOptions", "SearchStats", "ForcedPrefix", "Subproblem",
    "EstimateReport", "build_matrix", "cover", "uncover", "choose_column", "search",
    "iter_solutions", "solve", "force_rows", "split", "run_subproblem", "estimate",
    "check_solution", "DEBUG",
]

DEBUG = os.environ.get("DLX_DEBUG", "") not in ("", "0")

HEURISTICS = {
    "min_size": K.MIN_SIZE,
    "s": K.MIN_SIZE,
    "leftmost": K.LEFTMOST,
    "lexicographic": K.LEXICOGRAPHIC,
}


class LinkedMatrix:
    """Four-way-linked representation of a cover problem.

    Cell handles index the flat arrays below.  Handles ``0..ncols`` are the
    column headers, 0 being the root whose left/right ring threads the live
    primary columns.  Secondary headers start out linked to themselves.
    """

    def __init__(self, problem: CoverProblem):
        self.problem = problem
        names = problem.column_names
        ncols = len(names)
        nrows = len(problem.rows)
        ncells = ncols + 1 + sum(len(r) for r in problem.rows)

        left = np.empty(ncells, dtype=np.int64)
        right = np.empty(ncells, dtype=np.int64)
        up = np.empty(ncells, dtype=np.int64)
        down = np.empty(ncells, dtype=np.int64)
        top = np.zeros(ncells, dtype=np.int64)
        size = np.zeros(ncols + 1, dtype=np.int64)
        row_of = np.full(ncells, -1, dtype=np.int64)
        row_head = np.empty(nrows, dtype=np.int64)

        handle = {name: i + 1 for i, name in enumerate(names)}
        npri = len(problem.primary)
        # header ring: root plus primaries in order; secondaries self-linked
        for c in range(ncols + 1):
            top[c] = c
            up[c] = down[c] = c
            if c == 0 or c <= npri:
                left[c] = c - 1 if c > 0 else npri
                right[c] = c + 1 if c < npri else 0
            else:
                left[c] = right[c] = c

        x = ncols + 1
        for ordinal, row in enumerate(problem.rows):
            first = x
            row_head[ordinal] = first
            n = len(row)
            for k, name in enumerate(row):
                c = handle[name]
                left[x] = first + (k - 1) % n
                right[x] = first + (k + 1) % n
                last = up[c]
                up[x] = last
                down[x] = c
                down[last] = x
                up[c] = x
                top[x] = c
                row_of[x] = ordinal
                size[c] += 1
                x += 1

        self.left, self.right, self.up, self.down = left, right, up, down
        self.top, self.size = top, size
        self.row_of, self.row_head = row_of, row_head
        self.names = ("",) + names
        self.handle = handle
        self.npri = npri
        order = sorted(range(1, ncols + 1), key=lambda c: self.names[c])
        self.rank = np.zeros(ncols + 1, dtype=np.int64)
        for i, c in enumerate(order):
            self.rank[c] = i
        self.covered = np.zeros(ncols + 1, dtype=bool)
        self.prefix: list[ForcedPrefix] = []
        self._stack: list[int] = []

    @property
    def ncols(self) -> int:
        return len(self.names) - 1

    @property
    def nrows(self) -> int:
        return len(self.row_head)

    def is_primary(self, c: int) -> bool:
        return 1 <= c <= self.npri

    def live_columns(self) -> list[int]:
        """Handles threaded on the root ring, left to right."""
        out = []
        c = int(self.right[0])
        while c != 0:
            out.append(c)
            c = int(self.right[c])
        return out

    def column_cells(self, c: int) -> list[int]:
        out = []
        x = int(self.down[c])
        while x != c:
            out.append(x)
            x = int(self.down[x])
        return out

    def row_cells(self, x: int) -> list[int]:
        out = [x]
        j = int(self.right[x])
        while j != x:
            out.append(j)
            j = int(self.right[j])
        return out

    def snapshot(self) -> tuple:
        """Every link and size, for exact before/after comparison."""
        return tuple(a.tobytes() for a in
                     (self.left, self.right, self.up, self.down, self.size))

    def check_invariants(self) -> None:
        """Assert link symmetry and size consistency on the live structure."""
        L, R, U, D, C, S = self.left, self.right, self.up, self.down, self.top, self.size
        ring = self.live_columns()
        for c in [0] + ring:
            assert L[R[c]] == c and R[L[c]] == c, f"header ring broken at {c}"
        assert all(self.is_primary(c) for c in ring), "secondary column on root ring"
        for c in range(1, self.ncols + 1):
            if self.covered[c]:
                continue
            cells = self.column_cells(c)
            assert S[c] == len(cells), f"size of {self.names[c]} is {S[c]}, ring has {len(cells)}"
            for x in [c] + cells:
                assert U[D[x]] == x and D[U[x]] == x, f"vertical links broken at {x}"
            for x in cells:
                assert C[x] == c
                for j in self.row_cells(x):
                    assert L[R[j]] == j and R[L[j]] == j, f"row links broken at {j}"
            if self.is_primary(c):
                assert c in ring, f"live primary column {self.names[c]} missing from ring"
            else:
                assert L[c] == c and R[c] == c

    def _arrays(self):
        return self.left, self.right, self.up, self.down, self.top, self.size


def build_matrix(problem: CoverProblem) -> LinkedMatrix:
    return LinkedMatrix(problem)


def cover(m: LinkedMatrix, c: int) -> int:
    """Cover column ``c``; returns the number of single-element splices."""
    if DEBUG:
        assert not m.covered[c], f"column {m.names[c]} already covered"
    k = K.cover(*m._arrays(), c)
    m.covered[c] = True
    m._stack.append(c)
    if DEBUG:
        m.check_invariants()
    return int(k)


def uncover(m: LinkedMatrix, c: int) -> int:
    """Undo the most recent :func:`cover`, which must have been of ``c``."""
    if DEBUG and (not m._stack or m._stack[-1] != c):
        raise AssertionError(f"uncover({m.names[c]}) violates last-covered-first-uncovered")
    k = K.uncover(*m._arrays(), c)
    m.covered[c] = False
    if m._stack and m._stack[-1] == c:
        m._stack.pop()
    elif c in m._stack:
        m._stack.remove(c)
    if DEBUG:
        m.check_invariants()
    return int(k)


def choose_column(m: LinkedMatrix, heuristic: str = "min_size") -> int | None:
    c = int(K.choose(m.right, m.size, m.rank, HEURISTICS[heuristic]))
    return None if c == 0 else c


@dataclass(frozen=True)
class SearchOptions:
    heuristic: str = "min_size"
    skip_empty_branch_column: bool = True
    solution_limit: int | None = None
    count_levels: bool = True
    rng_seed: int = 0

    def __post_init__(self):
        if self.heuristic not in HEURISTICS:
            raise ValueError(f"unknown heuristic {self.heuristic!r}")
        if self.solution_limit is not None and self.solution_limit < 1:
            raise ValueError("solution_limit must be at least 1")


@dataclass
class SearchStats:
    """Node and update counts of one search.

    ``updates_per_level[k]`` holds the splices performed by the search call at
    depth k (its branching cover plus the covers for each row it tries);
    splices made while forcing a prefix are charged to level 0 and also kept
    in ``forced_updates``.  ``nodes_per_level[k]`` counts calls at depth k.
    """

    nodes_per_level: list[int] = field(default_factory=list)
    updates_per_level: list[int] = field(default_factory=list)
    total_solutions: int = 0
    forced_updates: int = 0
    undos: int = 0
    completed: bool = True

    @property
    def total_nodes(self) -> int:
        return sum(self.nodes_per_level)

    @property
    def total_updates(self) -> int:
        return sum(self.updates_per_level)

    def updates_into_level(self) -> list[int]:
        """Updates regrouped by the level they lead into.

        Entry 0 is the forced prefix; entry k > 0 is the work done at depth
        k - 1.  This is the grouping of a level profile table.
        """
        into = [self.forced_updates]
        for k, u in enumerate(self.updates_per_level):
            into.append(u - (self.forced_updates if k == 0 else 0))
        while len(into) > len(self.nodes_per_level) and into[-1] == 0:
            into.pop()
        return into

    def profile(self) -> list[tuple[int, int, float, int, float, float]]:
        """Rows of (level, nodes, node %, updates, update %, updates per node)."""
        into = self.updates_into_level()
        depth = max(len(self.nodes_per_level), len(into))
        tn, tu = self.total_nodes or 1, self.total_updates or 1
        rows = []
        for k in range(depth):
            n = self.nodes_per_level[k] if k < len(self.nodes_per_level) else 0
            u = into[k] if k < len(into) else 0
            rows.append((k, n, 100.0 * n / tn, u, 100.0 * u / tu, u / n if n else 0.0))
        return rows

    def merge(self, other: "SearchStats") -> "SearchStats":
        def add(a, b):
            n = max(len(a), len(b))
            return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]

        return SearchStats(add(self.nodes_per_level, other.nodes_per_level),
                           add(self.updates_per_level, other.updates_per_level),
                           self.total_solutions + other.total_solutions,
                           self.forced_updates + other.forced_updates,
                           self.undos + other.undos,
                           self.completed and other.completed)

    __add__ = merge


def _trim(a: np.ndarray) -> list[int]:
    n = len(a)
    while n > 0 and a[n - 1] == 0:
        n -= 1
    return [int(v) for v in a[:n]]


class _Runner:
    """Drives the compiled state machine over one matrix."""

    def __init__(self, m: LinkedMatrix, options: SearchOptions, depth_limit: int = -1):
        self.m = m
        self.options = options
        depth = m.npri + 2
        self.choice = np.zeros(depth, dtype=np.int64)
        self.branch = np.zeros(depth, dtype=np.int64)
        self.nodes = np.zeros(depth, dtype=np.int64)
        self.updates = np.zeros(depth, dtype=np.int64)
        self.state = K.empty_state()
        self.depth_limit = depth_limit
        self.heuristic = HEURISTICS[options.heuristic]

    def step(self) -> int:
        m = self.m
        return K.run(*m._arrays(), m.rank, self.heuristic,
                     self.options.skip_empty_branch_column, self.depth_limit,
                     self.choice, self.branch, self.nodes, self.updates, self.state)

    def current(self) -> tuple[list[int], list[str]]:
        m = self.m
        rows, branch = [], []
        for p in m.prefix:
            for r in p.rows:
                rows.append(r)
                branch.append(m.problem.rows[r][0])
        for k in range(int(self.state[0])):
            x = int(self.choice[k])
            rows.append(int(m.row_of[x]))
            branch.append(m.names[int(m.top[x])])
        return rows, branch

    def stop(self) -> None:
        m = self.m
        K.unwind(*m._arrays(), self.choice, self.branch, self.state)

    def stats(self, solutions: int, completed: bool) -> SearchStats:
        forced = sum(p.updates for p in self.m.prefix)
        nodes = _trim(self.nodes)
        updates = _trim(self.updates)
        if forced:
            updates = updates or [0]
            updates[0] += forced
        return SearchStats(nodes, updates, solutions, forced, int(self.state[2]), completed)


def iter_solutions(m: LinkedMatrix, options: SearchOptions | None = None,
                   stats_out: list | None = None) -> Iterator[SolutionRecord]:
    """Yield solutions lazily.  Closing the generator early restores the matrix.

    If ``stats_out`` is a list, the final :class:`SearchStats` is appended to it.
    """
    options = options or SearchOptions()
    runner = _Runner(m, options)
    count = 0
    completed = False
    try:
        while True:
            status = runner.step()
            if status == K.DONE:
                completed = True
                break
            rows, branch = runner.current()
            count += 1
            yield SolutionRecord(tuple(rows), tuple(branch), count - 1)
            if options.solution_limit is not None and count >= options.solution_limit:
                break
    finally:
        if not completed:
            runner.stop()
        if stats_out is not None:
            stats_out.append(runner.stats(count, completed))


def search(m: LinkedMatrix, options: SearchOptions | None = None,
           visitor: Callable[[SolutionRecord], object] | None = None) -> SearchStats:
    """Enumerate solutions, calling ``visitor`` on each.

    The visitor may return True to stop early.  On return the matrix is
    link-identical to its starting state.
    """
    out: list[SearchStats] = []
    gen = iter_solutions(m, options, out)
    try:
        for sol in gen:
            if visitor is not None and visitor(sol) is True:
                break
    finally:
        gen.close()
    return out[0]


def solve(problem: CoverProblem, options: SearchOptions | None = None,
          force: Sequence[int] = ()) -> tuple[list[SolutionRecord], SearchStats]:
    """Convenience wrapper: all solutions and the stats of one search."""
    m = build_matrix(problem)
    sols: list[SolutionRecord] = []
    prefix = force_rows(m, force) if force else None
    try:
        stats = search(m, options, sols.append)
    finally:
        if prefix is not None:
            prefix.release()
    return sols, stats


class ForcedPrefix:
    """Rows committed before a search.  ``release`` undoes them (LIFO)."""

    def __init__(self, m: LinkedMatrix, rows: Sequence[int]):
        self.m = m
        self.rows = tuple(rows)
        self.updates = 0
        self.active = False

    def _apply(self) -> None:
        m = self.m
        done: list[int] = []
        try:
            for r in self.rows:
                if not 0 <= r < m.nrows:
                    raise ValueError(f"no row {r}")
                x = int(m.row_head[r])
                cells = m.row_cells(x)
                for j in cells:
                    if m.covered[m.top[j]]:
                        raise ValueError(
                            f"forced row {r} uses already covered column {m.names[m.top[j]]}")
                for j in cells:
                    self.updates += cover(m, int(m.top[j]))
                done.append(r)
        except ValueError:
            self._undo(done)
            self.updates = 0
            raise
        self.active = True
        m.prefix.append(self)

    def _undo(self, rows: Sequence[int]) -> None:
        m = self.m
        for r in reversed(rows):
            x = int(m.row_head[r])
            for j in reversed(m.row_cells(x)):
                uncover(m, int(m.top[j]))

    def release(self) -> None:
        if not self.active:
            return
        if self.m.prefix[-1] is not self:
            raise RuntimeError("forced prefixes must be released in reverse order")
        self._undo(self.rows)
        self.m.prefix.pop()
        self.active = False

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.release()


def force_rows(m: LinkedMatrix, rows: Iterable[int]) -> ForcedPrefix:
    """Cover every column of each row, left to right, before searching."""
    prefix = ForcedPrefix(m, list(rows))
    prefix._apply()
    return prefix


@dataclass(frozen=True)
class Subproblem:
    """Independent piece of a split search: the rows to force before searching."""

    prefix: tuple[int, ...]
    index: int = 0


def split(problem: CoverProblem, depth: int,
          options: SearchOptions | None = None) -> list[Subproblem]:
    """Partition the search tree at ``depth``.

    Every node at that depth (and every solution found above it) becomes one
    subproblem.  Solving all of them with their prefix forced finds each
    solution of ``problem`` exactly once, in the original order.
    """
    if depth < 1:
        raise ValueError("split depth must be at least 1")
    options = options or SearchOptions()
    m = build_matrix(problem)
    runner = _Runner(m, options, depth_limit=depth)
    out = []
    while runner.step() != K.DONE:
        rows, _ = runner.current()
        out.append(Subproblem(tuple(rows), len(out)))
    return out


def run_subproblem(problem: CoverProblem, sub: Subproblem,
                   options: SearchOptions | None = None,
                   keep_solutions: bool = True) -> tuple[list[SolutionRecord], SearchStats]:
    m = build_matrix(problem)
    sols: list[SolutionRecord] = []
    with force_rows(m, sub.prefix):
        stats = search(m, options, sols.append if keep_solutions else None)
    return sols, stats


@dataclass(frozen=True)
class EstimateReport:
    probes: int
    nodes: float
    updates: float
    nodes_stderr: float
    updates_stderr: float

    def __str__(self) -> str:
        return (f"estimated nodes {self.nodes:.6g} (se {self.nodes_stderr:.3g}), "
                f"updates {self.updates:.6g} (se {self.updates_stderr:.3g}) "
                f"from {self.probes} probes")


def estimate(m: LinkedMatrix, probes: int, seed: int = 0,
             options: SearchOptions | None = None) -> EstimateReport:
    """Monte Carlo size of the search tree from random root-to-leaf walks."""
    if probes < 1:
        raise ValueError("probes must be at least 1")
    options = options or SearchOptions()
    rng = np.random.default_rng(seed)
    depth = m.npri + 2
    covered = np.zeros(m.ncols * 2 + 2, dtype=np.int64)
    heur = HEURISTICS[options.heuristic]
    nodes = np.empty(probes)
    updates = np.empty(probes)
    forced = sum(p.updates for p in m.prefix)
    for i in range(probes):
        u = rng.random(depth)
        n_est, u_est = K.probe(*m._arrays(), m.rank, heur,
                               options.skip_empty_branch_column, u, covered)
        nodes[i] = n_est
        updates[i] = u_est + forced

    def se(a):
        return float(a.std(ddof=1) / math.sqrt(len(a))) if len(a) > 1 else 0.0

    return EstimateReport(probes, float(nodes.mean()), float(updates.mean()),
                          se(nodes), se(updates))
