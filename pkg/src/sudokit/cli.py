"""Command-line front end: ``sudokit <command> ...``.

Exit status is 0 on success, 1 when a puzzle has no solution and 2 for
usage or input errors.
"""

from __future__ import annotations

import argparse
import re
import sys
from typing import Sequence

from . import csp, ps12
from .alldiff import (Level, leconte_range_filter, naive_filter, oracle_filter,
                      puget_bounds_filter, regin_filter)
from .builders import (langford_matrix, langford_sequence, puzzle_preselection,
                       single_alldiff_matrix, solution_to_grid, sudoku_matrix)
from .cnf import emit_dimacs
from .dlx import (ColumnRule, InvalidPreselection, MalformedMatrix, SearchConfig,
                  build_links, estimate_tree, matrix_to_text, read_matrix, search)
from .grid import (DuplicateGivenInUnit, Puzzle, PuzzleError, Size, Variant,
                   infer_size, parse_puzzle, render_grid)
from .permanent import (is_doubly_stochastic, minc_bound_holds, minc_upper_bound,
                        permanent_brute, permanent_ryser, read_dense, vdw_lower_bound)

EXIT_OK, EXIT_UNSAT, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_text(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_puzzle(path: str, size: int | None, variant: Variant) -> Puzzle:
    text = _read_text(path)
    sz = Size(size) if size is not None else infer_size(text)
    return parse_puzzle(text, sz, variant)


# -- solve ---------------------------------------------------------------------

def _solutions(puzzle: Puzzle, engine: str, trace: bool, limit: int | None) -> tuple[list[Puzzle], str]:
    """Solutions found by ``engine`` (at most ``limit``) plus any trace text."""
    if engine == "dlx":
        cfg = SearchConfig(solution_limit=limit, preselected_rows=puzzle_preselection(puzzle))
        found: list[list[str]] = []
        try:
            rep = search(build_links(sudoku_matrix(puzzle.size, puzzle.variant)), cfg, found.append)
        except InvalidPreselection:
            return [], ""
        grids = [solution_to_grid(puzzle.size, puzzle.variant, rows) for rows in found]
        return grids, rep.table() + "\n" if trace else ""
    if engine == "regin":
        it = csp.iter_solutions(puzzle)
        return _take(it, limit), ""
    mode = ps12.Mode.STRICT if engine == "ps12-strict" else ps12.Mode.COMPLETE
    if limit == 1:
        out = ps12.solve_ps12(puzzle, mode, trace=trace)
        text = "\n".join(out.stats.trace) + "\n" if trace else ""
        if out.status is ps12.Status.NO_PAIR_AVAILABLE:
            text += "no pair domain available; strict search gave up\n"
        return ([out.grid] if out.grid else []), text
    return _take(ps12.iter_solutions(puzzle, mode), limit), ""


def _take(it, limit: int | None) -> list:
    out = []
    for x in it:
        out.append(x)
        if limit is not None and len(out) >= limit:
            break
    return out


def cmd_solve(args: argparse.Namespace) -> int:
    variant = Variant(args.variant)
    status = EXIT_OK
    for path in args.puzzles:
        try:
            puzzle = _load_puzzle(path, args.size, variant)
        except DuplicateGivenInUnit as exc:
            print(f"{path}: {exc}", file=sys.stderr)
            print("no solution")
            status = max(status, EXIT_UNSAT)
            continue
        except PuzzleError as exc:
            raise UsageError(f"{path}: {exc}") from None
        limit = None if args.all else 1
        grids, trace = _solutions(puzzle, args.engine, args.trace, limit)
        sys.stdout.write(trace)
        for g in grids:
            sys.stdout.write(render_grid(g))
        if args.all:
            print(f"solutions: {len(grids)}")
        if not grids:
            if not args.all:
                print("no solution")
            status = max(status, EXIT_UNSAT)
    return status


# -- enumerate / estimate ------------------------------------------------------------

def cmd_enumerate(args: argparse.Namespace) -> int:
    size, variant = Size(args.size), Variant(args.variant)
    cfg = SearchConfig(column_rule=ColumnRule(args.rule), seed=args.seed,
                       solution_limit=args.limit)

    def show(rows: list[str]) -> None:
        sys.stdout.write(render_grid(solution_to_grid(size, variant, rows)))

    rep = search(build_links(sudoku_matrix(size, variant)), cfg,
                 None if args.count_only else show)
    print(f"solutions: {rep.solutions_found}")
    if args.stats:
        print(f"nodes: {rep.nodes}")
        print(f"covers: {rep.covers}")
    return EXIT_OK


def _matrix_from_args(args: argparse.Namespace):
    if args.matrix:
        try:
            return read_matrix(_read_text(args.matrix))
        except MalformedMatrix as exc:
            raise UsageError(f"{args.matrix}: {exc}") from None
    return sudoku_matrix(Size(args.size), Variant(args.variant))


def cmd_estimate(args: argparse.Namespace) -> int:
    m = _matrix_from_args(args)
    cfg = SearchConfig(column_rule=ColumnRule(args.rule), seed=args.seed)
    store = build_links(m)
    rep = estimate_tree(store, cfg, samples=args.samples, seed=args.seed)
    print(f"samples: {len(rep.estimates)}")
    print(f"mean: {rep.mean:.6g}")
    print(f"variance: {rep.variance:.6g}")
    if args.exact:
        print(f"exact nodes: {search(store, cfg).nodes}")
    return EXIT_OK


# -- exports -----------------------------------------------------------------------

def cmd_build_matrix(args: argparse.Namespace) -> int:
    if args.langford is not None:
        m = langford_matrix(args.langford)
    elif args.alldiff is not None:
        m = single_alldiff_matrix(args.alldiff)
    else:
        m = sudoku_matrix(Size(args.size), Variant(args.variant))
    _write_text(args.output, matrix_to_text(m))
    return EXIT_OK


def cmd_emit_cnf(args: argparse.Namespace) -> int:
    variant = Variant(args.variant)
    if args.puzzle:
        try:
            puzzle = _load_puzzle(args.puzzle, args.size, variant)
        except PuzzleError as exc:
            raise UsageError(f"{args.puzzle}: {exc}") from None
    else:
        puzzle = Puzzle.empty(Size(args.size or 3), variant)
    _write_text(args.output, emit_dimacs(puzzle))
    return EXIT_OK


def cmd_permanent(args: argparse.Namespace) -> int:
    try:
        a = read_dense(_read_text(args.matrix))
    except ValueError as exc:
        raise UsageError(f"{args.matrix}: {exc}") from None
    if args.method == "brute":
        print(permanent_brute(a))
        return EXIT_OK
    per = permanent_ryser(a)
    print(per)
    if args.method == "bounds":
        if is_doubly_stochastic(a):
            print(f"van der Waerden lower bound: {vdw_lower_bound(a)}")
        if all(x in (0, 1) for row in a for x in row) and all(any(row) for row in a):
            ok = minc_bound_holds(a, per)
            print(f"Minc upper bound: {minc_upper_bound(a):.6g} ({'holds' if ok else 'VIOLATED'})")
    return EXIT_OK


def cmd_langford(args: argparse.Namespace) -> int:
    found: list[list[str]] = []
    rep = search(build_links(langford_matrix(args.n)), SearchConfig(), found.append if args.list else None)
    for rows in found:
        print(" ".join(map(str, langford_sequence(args.n, rows))))
    if args.count or not args.list:
        print(rep.solutions_found)
    return EXIT_OK


# -- filter --------------------------------------------------------------------

_FILTERS = {
    "naive": naive_filter,
    "regin": regin_filter,
    "bounds": puget_bounds_filter,
    "range": leconte_range_filter,
}
_ORACLE_LEVEL = {"regin": Level.HYPERARC, "bounds": Level.BOUNDS, "range": Level.RANGE}
_DOMAIN = re.compile(r"\{([^{}]*)\}")


def parse_instance(line: str) -> list[frozenset[int]]:
    """``{1,2}|{1,2}|{2,3}`` to a list of domains."""
    parts = [p.strip() for p in line.split("|")]
    domains = []
    for p in parts:
        m = _DOMAIN.fullmatch(p)
        if not m:
            raise ValueError(f"bad domain {p!r}")
        body = m.group(1).strip()
        domains.append(frozenset(int(t) for t in body.split(",")) if body else frozenset())
    return domains


def format_instance(domains: Sequence[frozenset[int]] | None) -> str:
    if domains is None:
        return "infeasible"
    return "|".join("{" + ",".join(map(str, sorted(d))) + "}" for d in domains)


def cmd_filter(args: argparse.Namespace) -> int:
    if args.oracle and args.level == "naive":
        raise UsageError("no oracle for the naive level")
    for lineno, line in enumerate(_read_text(args.file).splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            domains = parse_instance(line)
        except ValueError as exc:
            raise UsageError(f"{args.file}: line {lineno}: {exc}") from None
        if args.oracle:
            out = oracle_filter(domains, _ORACLE_LEVEL[args.level])
        else:
            out = _FILTERS[args.level](domains)
        print(format_instance(out))
    return EXIT_OK


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sudokit", description="Su-Doku solving, counting and export tools.")
    sub = p.add_subparsers(dest="command", required=True)

    def variant_opt(sp):
        sp.add_argument("--variant", choices=[v.value for v in Variant], default="plain")

    s = sub.add_parser("solve", help="solve puzzle files")
    s.add_argument("puzzles", nargs="+", metavar="PUZZLE")
    s.add_argument("--engine", choices=["ps12", "ps12-strict", "regin", "dlx"], default="ps12")
    s.add_argument("--all", action="store_true", help="enumerate every solution")
    s.add_argument("--trace", action="store_true", help="print the search trace")
    s.add_argument("--size", type=int, help="block size n (default: inferred)")
    variant_opt(s)
    s.set_defaults(func=cmd_solve)

    e = sub.add_parser("enumerate", help="count complete grids with dancing links")
    e.add_argument("--size", type=int, default=2)
    variant_opt(e)
    e.add_argument("--count-only", action="store_true")
    e.add_argument("--limit", type=int)
    e.add_argument("--rule", choices=[r.value for r in ColumnRule], default="shortest")
    e.add_argument("--seed", type=int, default=1)
    e.add_argument("--stats", action="store_true", help="also print node and cover counts")
    e.set_defaults(func=cmd_enumerate)

    t = sub.add_parser("estimate", help="Monte Carlo estimate of the search tree size")
    t.add_argument("--size", type=int, default=2)
    variant_opt(t)
    t.add_argument("--matrix", help="cover matrix file instead of a Su-Doku matrix")
    t.add_argument("--samples", type=int, default=1000)
    t.add_argument("--seed", type=int, default=1)
    t.add_argument("--rule", choices=[r.value for r in ColumnRule], default="shortest")
    t.add_argument("--exact", action="store_true", help="also run the full search")
    t.set_defaults(func=cmd_estimate)

    b = sub.add_parser("build-matrix", help="write a cover matrix")
    b.add_argument("--size", type=int, default=2)
    variant_opt(b)
    g = b.add_mutually_exclusive_group()
    g.add_argument("--langford", type=int, metavar="N")
    g.add_argument("--alldiff", type=int, metavar="K")
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_build_matrix)

    c = sub.add_parser("emit-cnf", help="write the DIMACS CNF encoding of a puzzle")
    c.add_argument("puzzle", nargs="?", help="puzzle file (default: empty grid)")
    c.add_argument("--size", type=int)
    variant_opt(c)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_emit_cnf)

    m = sub.add_parser("permanent", help="permanent of a dense square matrix")
    m.add_argument("matrix")
    m.add_argument("--method", choices=["brute", "ryser", "bounds"], default="ryser")
    m.set_defaults(func=cmd_permanent)

    lf = sub.add_parser("langford", help="Langford pairings via exact cover")
    lf.add_argument("--n", type=int, required=True)
    lf.add_argument("--count", action="store_true")
    lf.add_argument("--list", action="store_true")
    lf.set_defaults(func=cmd_langford)

    f = sub.add_parser("filter", help="filter alldifferent instances, one per line")
    f.add_argument("file", help="instance file, or - for stdin")
    f.add_argument("--level", choices=sorted(_FILTERS), default="regin")
    f.add_argument("--oracle", action="store_true", help="use the brute-force oracle")
    f.set_defaults(func=cmd_filter)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"sudokit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"sudokit: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
