"""Cover matrices for Su-Doku, single permutation constraints and Langford pairs.

Su-Doku rows are named ``r<i>c<j>v<v>`` (0-based line and file, 1-based
value); that name is how solutions travel between engines.
"""

from __future__ import annotations

import re
from typing import Iterable

from .dlx import CoverMatrix
from .grid import Puzzle, Size, Variant, bit

ROW_NAME = re.compile(r"^r(\d+)c(\d+)v(\d+)$")


class InconsistentRows(ValueError):
    pass


def row_name(i: int, j: int, v: int) -> str:
    return f"r{i}c{j}v{v}"


def parse_row_name(name: str) -> tuple[int, int, int]:
    m = ROW_NAME.match(name)
    if not m:
        raise InconsistentRows(f"not a Su-Doku row name: {name!r}")
    i, j, v = map(int, m.groups())
    return i, j, v


def sudoku_matrix(size: Size, variant: Variant = Variant.PLAIN) -> CoverMatrix:
    """One row per (cell, value); columns for cell occupancy and line/file/block values.

    The diagonal variant adds one column per (diagonal, value).
    """
    side = size.side
    names = [f"cell{i}.{j}" for i in range(side) for j in range(side)]
    names += [f"line{i}.{v}" for i in range(side) for v in range(1, side + 1)]
    names += [f"file{j}.{v}" for j in range(side) for v in range(1, side + 1)]
    names += [f"block{b}.{v}" for b in range(side) for v in range(1, side + 1)]
    diagonal = variant is Variant.DIAGONAL
    if diagonal:
        names += [f"diag{d}.{v}" for d in range(2) for v in range(1, side + 1)]
    cells = side * side
    rows = []
    for i in range(side):
        for j in range(side):
            b = size.block_of(i, j)
            for v in range(1, side + 1):
                cols = [i * side + j,
                        cells + i * side + v - 1,
                        2 * cells + j * side + v - 1,
                        3 * cells + b * side + v - 1]
                if diagonal:
                    if i == j:
                        cols.append(4 * cells + v - 1)
                    if i + j == side - 1:
                        cols.append(4 * cells + side + v - 1)
                rows.append((row_name(i, j, v), tuple(sorted(cols))))
    return CoverMatrix(tuple(names), tuple(rows))


def single_alldiff_matrix(k: int) -> CoverMatrix:
    """k values by k positions: a value column and a position column per row."""
    if k < 1:
        raise ValueError("arity must be at least 1")
    names = tuple([f"x{i}" for i in range(1, k + 1)] + [f"C{p}" for p in range(1, k + 1)])
    rows = tuple((f"x{x}C{p}", (x - 1, k + p - 1))
                 for x in range(1, k + 1) for p in range(1, k + 1))
    return CoverMatrix(names, rows)


def puzzle_preselection(puzzle: Puzzle) -> list[str]:
    return [row_name(i, j, v) for i, j, v in puzzle.givens()]


def solution_to_grid(size: Size, variant: Variant, rows: Iterable[str]) -> Puzzle:
    side = size.side
    values = [0] * size.cell_count
    for name in rows:
        i, j, v = parse_row_name(name)
        if not (0 <= i < side and 0 <= j < side and 1 <= v <= side):
            raise InconsistentRows(f"row {name!r} outside a size-{size.n} grid")
        c = i * side + j
        if values[c]:
            raise InconsistentRows(f"cell ({i},{j}) assigned twice")
        values[c] = v
    if not all(values):
        raise InconsistentRows("rows leave some cells unassigned")
    return Puzzle(size, tuple(bit(v) for v in values), variant)


# -- Langford pairs ------------------------------------------------------------

def langford_matrix(n: int) -> CoverMatrix:
    """Place each value v twice with v numbers between the copies, in 2n slots."""
    if n < 1:
        raise ValueError("n must be at least 1")
    names = tuple([f"p{p}" for p in range(1, 2 * n + 1)] + [f"v{v}" for v in range(1, n + 1)])
    rows = []
    for v in range(1, n + 1):
        for p in range(1, 2 * n - v):
            rows.append((f"v{v}p{p}", (p - 1, p + v, 2 * n + v - 1)))
    return CoverMatrix(names, tuple(rows))


def langford_sequence(n: int, rows: Iterable[str]) -> list[int]:
    seq = [0] * (2 * n)
    for name in rows:
        m = re.match(r"^v(\d+)p(\d+)$", name)
        if not m:
            raise InconsistentRows(f"not a Langford row name: {name!r}")
        v, p = map(int, m.groups())
        seq[p - 1] = seq[p + v] = v
    return seq
