"""Cover problems: construction, validation, the text format, and solution output.

A cover file looks like::

    # comments and blank lines are ignored
    R0 R1 F0 F1 | A1 B1
    R0 F1 A1
    R1 F0 A1

The first significant line names the columns; names right of the single ``|``
are secondary (covered at most once).  Every later line is one row.

Two comment forms carry run settings for generated files::

    # dlx-force: X 13 22 23 24 33
    # dlx-options: no-skip-empty heuristic=leftmost

``dlx-force`` names a row (by its columns) to commit before searching;
``dlx-options`` sets search options.  Other tools see plain comments.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

MAX_NAME_LENGTH = 15

_TOKEN = re.compile(r"[ \t]+")


class CoverFormatError(ValueError):
    """Invalid cover problem, optionally tied to a line of the source text."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


def _check_name(name: str, lineno: int | None = None) -> None:
    if not name:
        raise CoverFormatError("empty column name", lineno)
    if "|" in name or any(ch.isspace() for ch in name):
        raise CoverFormatError(f"illegal character in column name {name!r}", lineno)
    if len(name) > MAX_NAME_LENGTH:
        raise CoverFormatError(
            f"column name {name!r} longer than {MAX_NAME_LENGTH} characters", lineno
        )


@dataclass(frozen=True)
class CoverProblem:
    """A generalized exact cover problem.

    ``primary`` columns must be covered exactly once, ``secondary`` columns at
    most once.  ``rows`` are tuples of column names.  ``labels`` is optional
    per-row text carried only for reporting.
    """

    primary: tuple[str, ...]
    secondary: tuple[str, ...] = ()
    rows: tuple[tuple[str, ...], ...] = ()
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "primary", tuple(self.primary))
        object.__setattr__(self, "secondary", tuple(self.secondary))
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
        self.validate()

    @classmethod
    def from_rows(
        cls,
        primary: Iterable[str],
        rows: Iterable[Iterable[str]],
        secondary: Iterable[str] = (),
        labels: Iterable[str] | None = None,
    ) -> "CoverProblem":
        return cls(tuple(primary), tuple(secondary), tuple(tuple(r) for r in rows),
                   None if labels is None else tuple(labels))

    @property
    def columns(self) -> list[tuple[str, bool]]:
        """(name, is_primary) pairs in declaration order."""
        return [(n, True) for n in self.primary] + [(n, False) for n in self.secondary]

    @property
    def column_names(self) -> tuple[str, ...]:
        return self.primary + self.secondary

    def validate(self) -> None:
        seen: set[str] = set()
        for name in self.column_names:
            _check_name(name)
            if name in seen:
                raise CoverFormatError(f"duplicate column name {name!r}")
            seen.add(name)
        if self.rows and not self.primary:
            raise CoverFormatError("rows given but no primary column")
        for i, row in enumerate(self.rows):
            _check_row(row, seen, None, ordinal=i)
        if self.labels is not None and len(self.labels) != len(self.rows):
            raise CoverFormatError("labels must match rows one-to-one")

    def row_label(self, ordinal: int) -> str:
        if self.labels is not None:
            return self.labels[ordinal]
        return " ".join(self.rows[ordinal])

    def with_rows(self, keep: Iterable[int]) -> "CoverProblem":
        """The same columns restricted to the given row ordinals (kept in order)."""
        keep = sorted(set(keep))
        labels = None if self.labels is None else [self.labels[i] for i in keep]
        return CoverProblem(self.primary, self.secondary, [self.rows[i] for i in keep], labels)

    def reorder_primary(self, order: Sequence[str]) -> "CoverProblem":
        if sorted(order) != sorted(self.primary):
            raise ValueError("new order must be a permutation of the primary columns")
        return CoverProblem(tuple(order), self.secondary, self.rows, self.labels)

    def summary(self) -> str:
        cells = sum(len(r) for r in self.rows)
        return (f"{len(self.primary)} primary + {len(self.secondary)} secondary columns, "
                f"{len(self.rows)} rows, {cells} cells")


def _check_row(row: Sequence[str], declared: set[str], lineno: int | None,
               ordinal: int | None = None) -> None:
    where = "" if ordinal is None else f"row {ordinal}: "
    if not row:
        raise CoverFormatError(f"{where}empty row", lineno)
    seen: set[str] = set()
    for name in row:
        if name == "|":
            raise CoverFormatError(f"{where}'|' is only allowed in the column line", lineno)
        if name not in declared:
            raise CoverFormatError(f"{where}undeclared column {name!r}", lineno)
        if name in seen:
            raise CoverFormatError(f"{where}column {name!r} repeated in one row", lineno)
        seen.add(name)


def _significant_lines(text: str):
    for lineno, line in enumerate(text.split("\n"), start=1):
        stripped = line.strip(" \t\r")
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, [t for t in _TOKEN.split(stripped) if t]


def parse_cover_text(text: str) -> CoverProblem:
    lines = _significant_lines(text)
    header = next(lines, None)
    if header is None:
        return CoverProblem((), (), ())
    lineno, tokens = header
    if tokens.count("|") > 1:
        raise CoverFormatError("'|' appears more than once in the column line", lineno)
    if "|" in tokens:
        split = tokens.index("|")
        primary, secondary = tokens[:split], tokens[split + 1:]
    else:
        primary, secondary = tokens, []
    declared: set[str] = set()
    for name in primary + secondary:
        _check_name(name, lineno)
        if name in declared:
            raise CoverFormatError(f"duplicate column name {name!r}", lineno)
        declared.add(name)

    rows = []
    for lineno, tokens in lines:
        _check_row(tokens, declared, lineno)
        rows.append(tuple(tokens))
    if rows and not primary:
        raise CoverFormatError("rows given but no primary column", lineno)
    return CoverProblem(tuple(primary), tuple(secondary), tuple(rows))


def emit_cover_text(problem: CoverProblem) -> str:
    header = " ".join(problem.primary)
    if problem.secondary:
        header = (header + " | " if header else "| ") + " ".join(problem.secondary)
    out = [header]
    out.extend(" ".join(row) for row in problem.rows)
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class Directives:
    force: tuple[tuple[str, ...], ...] = ()
    skip_empty: bool | None = None
    heuristic: str | None = None

    def force_rows(self, problem: CoverProblem) -> list[int]:
        by_set = {frozenset(r): i for i, r in enumerate(problem.rows)}
        out = []
        for names in self.force:
            key = frozenset(names)
            if key not in by_set:
                raise CoverFormatError(f"dlx-force names no row: {' '.join(names)}")
            out.append(by_set[key])
        return out

    def header(self) -> str:
        lines = []
        opts = []
        if self.skip_empty is not None:
            opts.append("skip-empty" if self.skip_empty else "no-skip-empty")
        if self.heuristic is not None:
            opts.append(f"heuristic={self.heuristic}")
        if opts:
            lines.append("# dlx-options: " + " ".join(opts))
        lines += ["# dlx-force: " + " ".join(row) for row in self.force]
        return "".join(line + "\n" for line in lines)


def parse_directives(text: str) -> Directives:
    force, skip, heuristic = [], None, None
    for lineno, line in enumerate(text.split("\n"), start=1):
        stripped = line.strip()
        if not stripped.startswith("#"):
            continue
        body = stripped[1:].strip()
        if body.startswith("dlx-force:"):
            names = body[len("dlx-force:"):].split()
            if not names:
                raise CoverFormatError("dlx-force without columns", lineno)
            force.append(tuple(names))
        elif body.startswith("dlx-options:"):
            for opt in body[len("dlx-options:"):].split():
                if opt in ("skip-empty", "no-skip-empty"):
                    skip = opt == "skip-empty"
                elif opt.startswith("heuristic="):
                    heuristic = opt.split("=", 1)[1]
                else:
                    raise CoverFormatError(f"unknown dlx-options entry {opt!r}", lineno)
    return Directives(tuple(force), skip, heuristic)


def read_cover_file(path) -> CoverProblem:
    with open(path, encoding="utf-8") as fh:
        return parse_cover_text(fh.read())


@dataclass(frozen=True)
class SolutionRecord:
    """One solution: chosen row ordinals (choice order) and their branching columns."""

    rows: tuple[int, ...]
    branch: tuple[str, ...]
    index: int = 0

    def names(self, problem: CoverProblem) -> list[list[str]]:
        return [rotate_row(problem.rows[r], b) for r, b in zip(self.rows, self.branch)]

    def to_json(self, problem: CoverProblem) -> str:
        return json.dumps({"index": self.index, "rows": list(self.rows),
                           "names": self.names(problem)}, separators=(",", ":"))


def rotate_row(row: Sequence[str], first: str) -> list[str]:
    """The row's names in ring order starting at ``first``."""
    k = row.index(first)
    return list(row[k:]) + list(row[:k])


def format_solution(problem: CoverProblem, solution: SolutionRecord) -> list[str]:
    """One line per chosen row: branching column first, then rightward ring order."""
    return [" ".join(names) for names in solution.names(problem)]


def parse_solution_lines(problem: CoverProblem, lines: Iterable[str]) -> SolutionRecord:
    """Inverse of :func:`format_solution` (rows identified by their column sets)."""
    by_set = {frozenset(r): i for i, r in enumerate(problem.rows)}
    rows, branch = [], []
    for line in lines:
        names = line.split()
        if not names:
            continue
        key = frozenset(names)
        if key not in by_set:
            raise CoverFormatError(f"no row with columns {line.strip()!r}")
        rows.append(by_set[key])
        branch.append(names[0])
    return SolutionRecord(tuple(rows), tuple(branch))


def to_pure_exact_cover(problem: CoverProblem) -> CoverProblem:
    """Make every column primary, adding one singleton row per secondary column.

    Solutions of the result that drop the appended singleton rows are exactly
    the solutions of ``problem``.
    """
    if not problem.secondary:
        return problem
    rows = list(problem.rows) + [(name,) for name in problem.secondary]
    labels = None
    if problem.labels is not None:
        labels = list(problem.labels) + list(problem.secondary)
    return CoverProblem(problem.primary + problem.secondary, (), rows, labels)


def check_solution(problem: CoverProblem, rows: Iterable[int]) -> bool:
    """True iff ``rows`` hit every primary column once and no secondary twice."""
    counts: dict[str, int] = {}
    for r in rows:
        for name in problem.rows[r]:
            counts[name] = counts.get(name, 0) + 1
    if any(counts.get(name, 0) != 1 for name in problem.primary):
        return False
    return all(counts.get(name, 0) <= 1 for name in problem.secondary)
