"""Compiled inner loops for the dance.

All structures are flat int64 arrays indexed by cell handle.  Cells
``0..ncols`` are column headers (0 is the root); a column's handle is the
index of its header cell.  ``top`` holds each cell's column handle and
``size`` the live count of every column.

The search is a resumable state machine: ``run`` returns whenever it reaches a
solution (or a depth-limited frontier node) and picks up where it left off on
the next call.  ``state`` is ``[level, pc, undo_count]``.
"""

import numpy as np
from numba import njit

MIN_SIZE = 0
LEFTMOST = 1
LEXICOGRAPHIC = 2

DONE = 0
SOLUTION = 1
FRONTIER = 2

_ENTER = 0
_ADVANCE = 1
_RETURN = 2
_FINISHED = 3


@njit(cache=True)
def cover(left, right, up, down, top, size, c):
    """Remove column ``c`` and its rows; returns the number of splices."""
    l = left[c]
    r = right[c]
    right[l] = r
    left[r] = l
    k = 1
    i = down[c]
    while i != c:
        j = right[i]
        while j != i:
            u = up[j]
            d = down[j]
            down[u] = d
            up[d] = u
            size[top[j]] -= 1
            k += 1
            j = right[j]
        i = down[i]
    return k


@njit(cache=True)
def uncover(left, right, up, down, top, size, c):
    """Exact inverse of :func:`cover`; returns the number of restorations."""
    k = 1
    i = up[c]
    while i != c:
        j = left[i]
        while j != i:
            size[top[j]] += 1
            down[up[j]] = j
            up[down[j]] = j
            k += 1
            j = left[j]
        i = up[i]
    right[left[c]] = c
    left[right[c]] = c
    return k


@njit(cache=True)
def choose(right, size, rank, heuristic):
    c = right[0]
    if c == 0 or heuristic == LEFTMOST:
        return c
    best = c
    if heuristic == MIN_SIZE:
        s = size[c]
        j = right[c]
        while j != 0:
            if size[j] < s:
                best = j
                s = size[j]
            j = right[j]
    else:
        s = rank[c]
        j = right[c]
        while j != 0:
            if rank[j] < s:
                best = j
                s = rank[j]
            j = right[j]
    return best


@njit(cache=True)
def run(left, right, up, down, top, size, rank, heuristic, skip_empty,
        depth_limit, choice, branch, nodes, updates, state):
    level = state[0]
    pc = state[1]
    undos = state[2]
    r = 0
    while True:
        if pc == _ENTER:
            nodes[level] += 1
            if right[0] == 0:
                state[0] = level
                state[1] = _RETURN
                state[2] = undos
                return SOLUTION
            if level == depth_limit:
                state[0] = level
                state[1] = _RETURN
                state[2] = undos
                return FRONTIER
            c = choose(right, size, rank, heuristic)
            if skip_empty and size[c] == 0:
                pc = _RETURN
                continue
            updates[level] += cover(left, right, up, down, top, size, c)
            branch[level] = c
            r = down[c]
            pc = _ADVANCE
        elif pc == _ADVANCE:
            c = branch[level]
            if r == c:
                undos += uncover(left, right, up, down, top, size, c)
                pc = _RETURN
                continue
            choice[level] = r
            j = right[r]
            while j != r:
                updates[level] += cover(left, right, up, down, top, size, top[j])
                j = right[j]
            level += 1
            pc = _ENTER
        elif pc == _RETURN:
            if level == 0:
                state[0] = 0
                state[1] = _FINISHED
                state[2] = undos
                return DONE
            level -= 1
            r = choice[level]
            j = left[r]
            while j != r:
                undos += uncover(left, right, up, down, top, size, top[j])
                j = left[j]
            r = down[r]
            pc = _ADVANCE
        else:
            return DONE


@njit(cache=True)
def unwind(left, right, up, down, top, size, choice, branch, state):
    """Restore the structure after a search stopped at ``state[0]``."""
    level = state[0]
    undos = state[2]
    while level > 0:
        level -= 1
        r = choice[level]
        j = left[r]
        while j != r:
            undos += uncover(left, right, up, down, top, size, top[j])
            j = left[j]
        undos += uncover(left, right, up, down, top, size, branch[level])
    state[0] = 0
    state[1] = _FINISHED
    state[2] = undos


@njit(cache=True)
def probe(left, right, up, down, top, size, rank, heuristic, skip_empty,
          uniforms, covered):
    """One random root-to-leaf walk.

    Returns (node_estimate, update_estimate).  A node reached with weight W
    contributes W to the node estimate and W times its observed cost to the
    update estimate; its cost is the branching cover plus d times the cover
    cost of the sampled row, which is unbiased for the sum over all d rows.
    ``covered`` receives the stack of covered columns so they can be undone.
    """
    weight = 1.0
    est_nodes = 0.0
    est_updates = 0.0
    ncov = 0
    level = 0
    while True:
        est_nodes += weight
        if right[0] == 0:
            break
        c = choose(right, size, rank, heuristic)
        d = size[c]
        if d == 0 and skip_empty:
            break
        cost = cover(left, right, up, down, top, size, c)
        covered[ncov] = c
        ncov += 1
        if d == 0:
            est_updates += weight * cost
            break
        pick = int(uniforms[level] * d)
        if pick >= d:
            pick = d - 1
        r = down[c]
        for _ in range(pick):
            r = down[r]
        row_cost = 0
        j = right[r]
        while j != r:
            row_cost += cover(left, right, up, down, top, size, top[j])
            covered[ncov] = top[j]
            ncov += 1
            j = right[j]
        est_updates += weight * (cost + d * row_cost)
        weight *= d
        level += 1
    while ncov > 0:
        ncov -= 1
        uncover(left, right, up, down, top, size, covered[ncov])
    return est_nodes, est_updates


def empty_state():
    return np.zeros(3, dtype=np.int64)
