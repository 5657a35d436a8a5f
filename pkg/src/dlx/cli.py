"""Command-line front end: generate, solve, estimate and score.

Exit status: 0 when at least one solution was found (or the command
succeeded), 1 when a search found none, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import core
from .combinatorial import QueensSpec, WordSquareSpec, queens_problem, read_dictionary, \
    word_square_problem
from .model import CoverFormatError, CoverProblem, Directives, SolutionRecord, \
    emit_cover_text, format_solution, parse_cover_text, parse_directives
from .polyforms import geometry as G
from .polyforms.boards import Board, ShapeError, board_from_spec
from .polyforms.generate import placements, solution_map
from .polyforms.pieces import DOMINO, FREE, ONE_SIDED, PIECE_SETS, one_sided_set, select
from .polyforms.presets import Subcase, preset, preset_names

EXIT_FOUND, EXIT_NONE, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


# --- loading -------------------------------------------------------------------

def _load(source: str) -> tuple[list[tuple[str, CoverProblem, Directives, Board | None]], str]:
    """Problems named by a cover file path, a preset name or '-' for stdin."""
    if source != "-" and not Path(source).exists():
        try:
            subs = preset(source)
        except ValueError as exc:
            raise InputError(f"{source}: no such file or preset ({exc})") from None
        return [(s.name, s.problem, _subcase_directives(s), s.board) for s in subs], source
    text = sys.stdin.read() if source == "-" else Path(source).read_text(encoding="utf-8")
    try:
        problem = parse_cover_text(text)
        directives = parse_directives(text)
    except CoverFormatError as exc:
        raise InputError(f"{source}: {exc}") from None
    return [(source, problem, directives, None)], source


def _subcase_directives(s: Subcase) -> Directives:
    return Directives(tuple(tuple(r) for r in s.force_labels()),
                      s.options.skip_empty_branch_column, s.options.heuristic)


def _options(args, directives: Directives) -> core.SearchOptions:
    skip = directives.skip_empty if directives.skip_empty is not None else True
    if args.skip_empty is not None:
        skip = args.skip_empty
    heuristic = args.heuristic or directives.heuristic or "min_size"
    return core.SearchOptions(heuristic=heuristic, skip_empty_branch_column=skip,
                              solution_limit=args.limit, rng_seed=args.seed)


def _force_rows(problem: CoverProblem, directives: Directives, extra: list[str]) -> list[int]:
    rows = directives.force_rows(problem)
    by_set = {frozenset(r): i for i, r in enumerate(problem.rows)}
    for spec in extra:
        spec = spec.strip()
        if spec.startswith("#"):
            try:
                r = int(spec[1:])
            except ValueError:
                raise InputError(f"bad row number in --force {spec!r}") from None
            if not 0 <= r < len(problem.rows):
                raise InputError(f"--force {spec}: no such row")
        else:
            key = frozenset(spec.replace(",", " ").split())
            if key not in by_set:
                raise InputError(f"--force {spec!r} names no row")
            r = by_set[key]
        rows.append(r)
    return rows


# --- solve ---------------------------------------------------------------------

def _split_worker(payload):
    problem, sub, options = payload
    sols, stats = core.run_subproblem(problem, sub, options)
    return sols, stats


def _run(problem, options, force, split_depth, jobs):
    if not split_depth:
        return core.solve(problem, options, force)
    if force:
        raise InputError("--split-depth cannot be combined with forced rows")
    subs = core.split(problem, split_depth, options)
    plain = core.SearchOptions(options.heuristic, options.skip_empty_branch_column,
                               None, options.count_levels, options.rng_seed)
    payloads = [(problem, s, plain) for s in subs]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_split_worker, payloads))
    else:
        results = [_split_worker(p) for p in payloads]
    sols, stats = [], core.SearchStats()
    for s, st in results:
        sols.extend(s)
        stats = stats + st
    if options.solution_limit is not None:
        sols = sols[:options.solution_limit]
    return [SolutionRecord(s.rows, s.branch, i) for i, s in enumerate(sols)], stats


def _profile_lines(stats: core.SearchStats) -> list[str]:
    out = ["level\tnodes\tnode_pct\tupdates\tupdate_pct\tupdates_per_node"]
    for k, n, npct, u, upct, per in stats.profile():
        out.append(f"{k}\t{n}\t{npct:.1f}\t{u}\t{upct:.1f}\t{per:.1f}")
    tn, tu = stats.total_nodes, stats.total_updates
    out.append(f"total\t{tn}\t100.0\t{tu}\t100.0\t{tu / tn if tn else 0.0:.1f}")
    return out


def cmd_solve(args) -> int:
    subs, _ = _load(args.source)
    found = distinct_total = 0
    grand = core.SearchStats()
    for name, problem, directives, board in subs:
        options = _options(args, directives)
        force = _force_rows(problem, directives, args.force or [])
        t0 = time.perf_counter()
        sols, stats = _run(problem, options, force, args.split_depth, args.jobs)
        wall = time.perf_counter() - t0
        found += len(sols)
        grand = grand + stats
        out = sys.stdout
        if len(subs) > 1:
            print(f"# subcase {name}", file=out)
        if not args.count:
            for sol in sols:
                if args.machine:
                    print(sol.to_json(problem), file=out)
                else:
                    print(" / ".join(format_solution(problem, sol)), file=out)
        if args.stats or args.count:
            print(f"# problem\t{problem.summary()}", file=out)
            print(f"# options\theuristic={options.heuristic}\t"
                  f"skip_empty={options.skip_empty_branch_column}\tforced_rows={len(force)}"
                  f"\tsplit_depth={args.split_depth or 0}", file=out)
            print(f"solutions\t{len(sols)}", file=out)
            if board is not None:
                # Packings equal up to a board symmetry count once.
                from .symmetry import distinct_under_symmetry
                n = sum(1 for _ in distinct_under_symmetry(
                    board, (solution_map(board, problem, s.rows) for s in sols)))
                distinct_total += n
                print(f"distinct\t{n}", file=out)
        if args.stats:
            for line in _profile_lines(stats):
                print(line, file=out)
            rate = stats.total_updates / wall / 1e6 if wall > 0 else 0.0
            print(f"# wall_seconds\t{wall:.3f}\tmega_updates_per_second\t{rate:.1f}", file=out)
        if args.plot:
            from .plotting import plot_profile
            path = args.plot if len(subs) == 1 else _suffixed(args.plot, name)
            plot_profile(stats, path, title=name)
    if len(subs) > 1 and (args.stats or args.count):
        print(f"# all subcases\nsolutions\t{found}\ndistinct\t{distinct_total}\n"
              f"nodes\t{grand.total_nodes}\nupdates\t{grand.total_updates}")
    return EXIT_FOUND if found else EXIT_NONE


def _suffixed(path: str, name: str) -> str:
    p = Path(path)
    return str(p.with_name(f"{p.stem}-{name}{p.suffix}"))


# --- generators ---------------------------------------------------------------

def _write(args, problem: CoverProblem, directives: Directives | None = None,
           comment: str = "") -> int:
    text = ""
    if comment:
        text += "".join(f"# {line}\n" for line in comment.split("\n"))
    if directives is not None:
        text += directives.header()
    text += emit_cover_text(problem)
    if args.output and args.output != "-":
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


_KIND_OF = {"gen-polyomino": G.SQUARE, "gen-polyiamond": G.TRIANGULAR,
            "gen-polystick": G.SEGMENT, "gen-dominoes": G.SQUARE}
_DEFAULT_SET = {G.SQUARE: "pentominoes", G.TRIANGULAR: "hexiamonds", G.SEGMENT: "tetrasticks"}


def cmd_gen_polyform(args) -> int:
    kind = _KIND_OF[args.command]
    if args.preset:
        subs = preset(args.preset)
        if len(subs) != 1:
            raise InputError(f"preset {args.preset} has {len(subs)} subcases; "
                             f"generate them one at a time: {', '.join(s.name for s in subs)}")
        s = subs[0]
        if s.board.kind != kind:
            raise InputError(f"preset {args.preset} is a {s.board.kind} problem, "
                             f"not for {args.command}")
        return _write(args, s.problem, _subcase_directives(s), f"{s.name}: {s.description}")
    if not args.board:
        raise InputError("give --board or --preset")
    board = board_from_spec(args.board)
    if board.kind != kind:
        raise InputError(f"board {args.board} is {board.kind}, {args.command} needs {kind}")
    if args.command == "gen-dominoes":
        pieces, mode = [DOMINO], FREE
    else:
        pieces = list(PIECE_SETS[args.pieces or _DEFAULT_SET[kind]])
        if pieces[0].kind != kind:
            raise InputError(f"piece set {args.pieces} does not fit a {kind} board")
        exclude = [n for e in (args.exclude or []) for n in e.split(",") if n]
        pieces = select(pieces, exclude=exclude)
        mode = ONE_SIDED if args.one_sided else FREE
        if args.one_sided:
            pieces = one_sided_set(pieces)
    problem = placements(pieces, board, (), mode)
    return _write(args, problem, None, f"{len(pieces)} pieces on {board.name}")


def cmd_gen_queens(args) -> int:
    spec = QueensSpec(args.n, args.ordering, not args.files_secondary)
    return _write(args, queens_problem(spec), Directives(skip_empty=False),
                  f"{args.n} queens")


def cmd_gen_wordsquare(args) -> int:
    words = read_dictionary(args.dictionary, args.n)
    if not words:
        raise InputError(f"no {args.n}-letter words in {args.dictionary}")
    spec = WordSquareSpec(args.n, tuple(words), distinct=args.distinct,
                          diagonals=not args.no_diagonals)
    return _write(args, word_square_problem(spec), None,
                  f"{args.n}x{args.n} word squares from {len(words)} words")


# --- estimate -----------------------------------------------------------------

def cmd_estimate(args) -> int:
    subs, _ = _load(args.source)
    for name, problem, directives, _board in subs:
        options = _options(args, directives)
        m = core.build_matrix(problem)
        force = _force_rows(problem, directives, [])
        prefix = core.force_rows(m, force) if force else None
        try:
            rep = core.estimate(m, args.probes, args.seed, options)
        finally:
            if prefix is not None:
                prefix.release()
        print(f"{name}\tnodes\t{rep.nodes:.6g}\tse\t{rep.nodes_stderr:.3g}"
              f"\tupdates\t{rep.updates:.6g}\tse\t{rep.updates_stderr:.3g}\tprobes\t{rep.probes}")
    return 0


# --- score --------------------------------------------------------------------

def _solution_blocks(text: str) -> list[list[str]]:
    """Solutions as lists of row strings.

    Accepts JSON lines (from ``solve --machine``), one-line solutions with
    rows separated by " / ", or blocks of one row per line separated by
    blank lines.
    """
    blocks, current = [], []
    for raw in text.split("\n"):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            if current:
                blocks.append(current)
                current = []
            continue
        if line.startswith("{"):
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise InputError(f"bad JSON solution line: {exc}") from None
            blocks.append([" ".join(names) for names in obj["names"]])
        elif " / " in line:
            blocks.append([part.strip() for part in line.split(" / ")])
        else:
            current.append(line)
    if current:
        blocks.append(current)
    return blocks


def piece_map_from_rows(board: Board, rows: list[str]) -> dict:
    """Cell -> piece identity from rows of piece and cell names."""
    by_name = {board.name_of(c): c for c in board.cells}
    out = {}
    for i, row in enumerate(rows):
        tokens = row.split()
        cells = [by_name[t] for t in tokens if t in by_name]
        others = [t for t in tokens if t not in by_name and not t.startswith("I")]
        ident = others[0] if others else f"#{i}"
        if ident in out.values():
            ident = f"{ident}#{i}"
        for c in cells:
            if c in out:
                raise InputError(f"cell {board.name_of(c)} is covered twice")
            out[c] = ident
    return out


def cmd_score(args) -> int:
    from .symmetry import MaxSymmetric, symmetry_scores
    board = board_from_spec(args.board)
    text = sys.stdin.read() if args.solutions == "-" else \
        Path(args.solutions).read_text(encoding="utf-8")
    best = MaxSymmetric()
    for i, rows in enumerate(_solution_blocks(text)):
        pm = piece_map_from_rows(board, rows)
        try:
            score = symmetry_scores(board, pm, args.any_orientation)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        best.add(i, score)
        print(f"{i}\t{score}")
    print(f"# scored\t{best.seen}")
    for i, score in best.best:
        print(f"# best\t{i}\t{score}")
    if args.plot and best.best:
        from .plotting import plot_packing
        blocks = _solution_blocks(text)
        i, score = best.best[0]
        plot_packing(board, piece_map_from_rows(board, blocks[i]), args.plot, str(score))
    return 0


# --- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dlx", description="Exact cover by dancing links.")
    sub = p.add_subparsers(dest="command", required=True)

    def search_flags(sp):
        sp.add_argument("--heuristic", choices=sorted(core.HEURISTICS),
                        help="column choice rule (s = min_size)")
        skip = sp.add_mutually_exclusive_group()
        skip.add_argument("--skip-empty", dest="skip_empty", action="store_true", default=None,
                          help="return at once when the branching column is empty")
        skip.add_argument("--no-skip-empty", dest="skip_empty", action="store_false",
                          help="cover the branching column even when it is empty")
        sp.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("solve", help="enumerate solutions of a cover file or preset")
    s.add_argument("source", help="cover file, preset name, or - for stdin")
    search_flags(s)
    s.add_argument("--limit", type=int, help="stop after this many solutions")
    s.add_argument("--stats", action="store_true", help="print the level profile")
    s.add_argument("--count", action="store_true", help="print counts instead of solutions")
    s.add_argument("--machine", action="store_true", help="one JSON object per solution")
    s.add_argument("--force", action="append", metavar="ROW",
                   help="row to commit first: its column names, or #ordinal")
    s.add_argument("--split-depth", type=int, default=0)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--plot", metavar="PATH", help="write a level-profile figure")
    s.set_defaults(func=cmd_solve)

    e = sub.add_parser("estimate", help="Monte Carlo size of the search tree")
    e.add_argument("source")
    search_flags(e)
    e.add_argument("--probes", type=int, default=1000)
    e.set_defaults(func=cmd_estimate, limit=None)

    for name, help_ in (("gen-polyomino", "square pieces"), ("gen-polyiamond", "triangle pieces"),
                        ("gen-polystick", "segment pieces"), ("gen-dominoes", "anonymous dominoes")):
        g = sub.add_parser(name, help=f"cover problem for packing {help_}")
        g.add_argument("--board", help="built-in board or shape file")
        g.add_argument("--preset", help="named setup: " + ", ".join(preset_names()))
        if name != "gen-dominoes":
            g.add_argument("--pieces", choices=sorted(PIECE_SETS))
            g.add_argument("--one-sided", action="store_true")
            g.add_argument("--exclude", action="append", metavar="PIECE")
        g.add_argument("-o", "--output")
        g.set_defaults(func=cmd_gen_polyform)

    q = sub.add_parser("gen-queens", help="N queens as a generalized cover problem")
    q.add_argument("n", type=int)
    q.add_argument("--ordering", choices=("organ_pipe", "natural"), default="organ_pipe")
    q.add_argument("--files-secondary", action="store_true")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_gen_queens)

    w = sub.add_parser("gen-wordsquare", help="word squares with diagonals")
    w.add_argument("--dict", dest="dictionary", required=True)
    w.add_argument("-n", type=int, default=5)
    w.add_argument("--distinct", action="store_true")
    w.add_argument("--no-diagonals", action="store_true")
    w.add_argument("-o", "--output")
    w.set_defaults(func=cmd_gen_wordsquare)

    sc = sub.add_parser("score", help="horizontal and vertical symmetry of packings")
    sc.add_argument("solutions", help="solution file or - for stdin")
    sc.add_argument("--board", required=True)
    sc.add_argument("--any-orientation", action="store_true",
                    help="score the best image of each packing under the board's symmetries")
    sc.add_argument("--plot", metavar="PATH", help="draw the most symmetric packing")
    sc.set_defaults(func=cmd_score)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, CoverFormatError, ShapeError, ValueError, OSError) as exc:
        print(f"dlx: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
