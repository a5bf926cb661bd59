"""Su-Doku search with Régin filtering on every unit.

Each node runs ``regin_filter`` over all units until no domain moves, then
branches on the first smallest open domain, values ascending.
"""

from __future__ import annotations

from typing import Iterator

from .alldiff import regin_filter
from .grid import Puzzle, domain_from_values, domain_values, popcount, units_of


def filter_units(cells: list[int], units) -> bool:
    """Filter to a fixpoint in place; False when some unit is infeasible."""
    changed = True
    while changed:
        changed = False
        for members in units:
            doms = [domain_values(cells[c]) for c in members]
            if not all(doms):
                return False
            out = regin_filter(doms)
            if out is None:
                return False
            for c, d in zip(members, out):
                nd = domain_from_values(d)
                if nd != cells[c]:
                    cells[c] = nd
                    changed = True
    return True


def iter_solutions(puzzle: Puzzle) -> Iterator[Puzzle]:
    units = [u.members for u in units_of(puzzle.size, puzzle.variant)]

    def rec(cells: list[int]) -> Iterator[list[int]]:
        if not filter_units(cells, units):
            return
        best, best_size = -1, 1 << 30
        for c, d in enumerate(cells):
            k = popcount(d)
            if 1 < k < best_size:
                best, best_size = c, k
        if best < 0:
            yield cells
            return
        for v in domain_values(cells[best]):
            child = cells[:]
            child[best] = 1 << (v - 1)
            yield from rec(child)

    for cells in rec(list(puzzle.cells)):
        yield puzzle.with_cells(cells)


def solve(puzzle: Puzzle) -> Puzzle | None:
    return next(iter_solutions(puzzle), None)
