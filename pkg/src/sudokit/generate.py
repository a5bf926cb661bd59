"""Random complete grids, puzzles carved from them, and validity-preserving shuffles."""

from __future__ import annotations

import random

from .builders import solution_to_grid, sudoku_matrix
from .dlx import SearchConfig, solve_all
from .grid import Puzzle, Size, Variant, bit


def random_grid(size: Size, rng: random.Random, variant: Variant = Variant.PLAIN) -> Puzzle:
    """First solution of a dancing-links search over randomly ordered rows."""
    cfg = SearchConfig(solution_limit=1)
    m = sudoku_matrix(size, variant)
    # shuffling the row order randomises which candidate is tried first
    rows = list(m.rows)
    rng.shuffle(rows)
    found, _ = solve_all(type(m)(m.column_names, tuple(rows), m.secondary), cfg)
    return solution_to_grid(size, variant, found[0])


def carve(grid: Puzzle, givens: int, rng: random.Random) -> Puzzle:
    """Keep ``givens`` randomly chosen cells of a solved grid; the result is satisfiable."""
    keep = set(rng.sample(range(grid.size.cell_count), givens))
    full = grid.size.full
    return grid.with_cells(d if c in keep else full for c, d in enumerate(grid.cells))


def shuffle(puzzle: Puzzle, rng: random.Random) -> Puzzle:
    """Relabel values, permute bands, stacks, lines within bands, files within stacks, maybe transpose.

    These maps send valid plain grids to valid grids and keep the number of
    solutions of a puzzle.
    """
    if puzzle.variant is not Variant.PLAIN:
        raise ValueError("shuffles are only defined for the plain variant")
    n, side = puzzle.size.n, puzzle.size.side

    def axis() -> list[int]:
        bands = rng.sample(range(n), n)
        return [b * n + r for b in bands for r in rng.sample(range(n), n)]

    lines, files = axis(), axis()
    labels = rng.sample(range(1, side + 1), side)
    transpose = rng.random() < 0.5
    full = puzzle.size.full
    out = []
    for i in range(side):
        for j in range(side):
            si, sj = lines[i], files[j]
            if transpose:
                si, sj = sj, si
            d = puzzle.cells[si * side + sj]
            if d == full:
                out.append(full)
            else:
                nd = 0
                for v in range(1, side + 1):
                    if d >> (v - 1) & 1:
                        nd |= bit(labels[v - 1])
                out.append(nd)
    return puzzle.with_cells(out)
