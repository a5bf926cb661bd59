"""PS-1-2: fixpoint propagation alternated with binary search on pair domains.

Propagation has two sub-steps.  Assignment elimination deletes the value of
every singleton cell from its peers; unit reduction is the dual rule, which
narrows a cell to ``{v}`` when it is the only place left for ``v`` in one of
its units.  ``solve_step`` alternates the two until nothing changes.

Search picks the first cell (row-major) whose domain is a pair, tries the
high value, then restores the saved domains and tries the low value.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .grid import Puzzle, domain_values, lowest_value, peers_of, popcount, units_of


class Mode(enum.Enum):
    STRICT = "strict"
    COMPLETE = "complete"


class Status(enum.Enum):
    SOLVED = "solved"
    BLOCKED = "blocked"
    NO_PAIR_AVAILABLE = "no-pair"


@dataclass
class SolveStats:
    propagation_steps: int = 0
    reduction_steps: int = 0
    search_decisions: int = 0
    backtracks: int = 0
    trace: list[str] | None = None

    def _row(self, prop: str = "-", red: str = "-", srch: str = "-") -> None:
        if self.trace is not None:
            total = self.propagation_steps + self.reduction_steps
            self.trace.append(f"{prop:<7}{red:<7}{srch:<7}{total:<14}{self.search_decisions}")


@dataclass
class SolveOutcome:
    status: Status
    grid: Puzzle | None
    stats: SolveStats = field(default_factory=SolveStats)


TRACE_HEADER = "Prop   Red    Srch   Tot. Prop     Tot. Srch"


# -- in-place kernels ---------------------------------------------------------

def _propagate(cells: list[int], peers: Sequence[Sequence[int]],
               order: Sequence[int] | None = None) -> tuple[int, bool]:
    """Eliminate singleton values from peers until a round changes nothing.

    Returns (rounds run including the final idle one, whether anything changed).
    """
    idx = order if order is not None else range(len(cells))
    rounds = 0
    changed = False
    while True:
        rounds += 1
        progress = False
        for c in idx:
            d = cells[c]
            if d == 0 or d & (d - 1):
                continue
            for p in peers[c]:
                if cells[p] & d:
                    cells[p] &= ~d
                    progress = True
        if not progress:
            return rounds, changed
        changed = True


def _reduce(cells: list[int], units: Sequence[Sequence[int]], side: int) -> int:
    """One sweep of the dual rule over ``units``; returns the number of cells narrowed."""
    count = 0
    for members in units:
        once = 0
        twice = 0
        for c in members:
            d = cells[c]
            twice |= once & d
            once |= d
        unique = once & ~twice
        while unique:
            b = unique & -unique
            unique ^= b
            for c in members:
                if cells[c] & b:
                    if cells[c] != b:
                        cells[c] = b
                        count += 1
                    break
    return count


def _unit_members(puzzle: Puzzle) -> list[tuple[int, ...]]:
    return [u.members for u in units_of(puzzle.size, puzzle.variant)]


def _solve_step(cells: list[int], peers, units, side: int, stats: SolveStats) -> None:
    while True:
        rounds, _ = _propagate(cells, peers)
        stats.propagation_steps += rounds
        stats._row(prop=str(rounds))
        reduced = _reduce(cells, units, side)
        stats.reduction_steps += reduced
        stats._row(red=str(reduced))
        if not reduced:
            return


def _blocked(cells: Sequence[int]) -> bool:
    return 0 in cells


def _solved(cells: Sequence[int]) -> bool:
    return all(not d & (d - 1) for d in cells) and not _blocked(cells)


# -- public operations --------------------------------------------------------

def propagate_assignments(puzzle: Puzzle) -> tuple[Puzzle, bool]:
    cells = list(puzzle.cells)
    _, changed = _propagate(cells, peers_of(puzzle.size, puzzle.variant))
    return puzzle.with_cells(cells), changed


def reduce_units(puzzle: Puzzle) -> tuple[Puzzle, bool]:
    """Single sweep of the dual rule over lines, files, blocks (then diagonals)."""
    cells = list(puzzle.cells)
    reduced = _reduce(cells, _unit_members(puzzle), puzzle.size.side)
    return puzzle.with_cells(cells), reduced > 0


def solve_step(puzzle: Puzzle) -> tuple[Puzzle, SolveStats]:
    stats = SolveStats()
    cells = list(puzzle.cells)
    _solve_step(cells, peers_of(puzzle.size, puzzle.variant), _unit_members(puzzle),
                puzzle.size.side, stats)
    return puzzle.with_cells(cells), stats


def next_pair(cells: Sequence[int]) -> int | None:
    """First cell in row-major order whose domain has exactly two values."""
    for c, d in enumerate(cells):
        rest = d & (d - 1)
        if rest and not rest & (rest - 1):
            return c
    return None


def _smallest_open(cells: Sequence[int]) -> int:
    best, best_size = -1, 1 << 30
    for c, d in enumerate(cells):
        k = popcount(d)
        if 1 < k < best_size:
            best, best_size = c, k
    return best


class _Search:
    def __init__(self, puzzle: Puzzle, mode: Mode, stats: SolveStats):
        self.puzzle = puzzle
        self.mode = mode
        self.stats = stats
        self.peers = peers_of(puzzle.size, puzzle.variant)
        self.units = _unit_members(puzzle)
        self.side = puzzle.size.side
        self.no_pair = False

    def step(self, cells: list[int]) -> None:
        _solve_step(cells, self.peers, self.units, self.side, self.stats)

    def run(self, cells: list[int]) -> Iterator[list[int]]:
        """Yield every solved state reachable from the (already propagated) ``cells``."""
        if _blocked(cells):
            return
        if _solved(cells):
            yield cells[:]
            return
        stats = self.stats
        stats.search_decisions += 1
        p = next_pair(cells)
        if p is None:
            if self.mode is Mode.STRICT:
                self.no_pair = True
                return
            p = _smallest_open(cells)
            keep = cells[:]
            for k, v in enumerate(domain_values(keep[p])):
                if k:
                    stats.backtracks += 1
                cells[:] = keep
                cells[p] = 1 << (v - 1)
                stats._row(srch=str(v))
                self.step(cells)
                yield from self.run(cells)
            cells[:] = keep
            return
        keep = cells[:]
        lo = lowest_value(keep[p])
        hi_bit = keep[p] & ~(1 << (lo - 1))
        cells[p] = hi_bit
        stats._row(srch="h")
        self.step(cells)
        yield from self.run(cells)
        stats.backtracks += 1
        cells[:] = keep
        cells[p] = 1 << (lo - 1)
        stats._row(srch="l")
        self.step(cells)
        yield from self.run(cells)
        cells[:] = keep


def solve_ps12(puzzle: Puzzle, mode: Mode = Mode.COMPLETE, trace: bool = False) -> SolveOutcome:
    """Run PS-1-2 to the first solution.

    ``Mode.STRICT`` gives up on a branch whose fixpoint holds no pair
    domain, and reports ``NO_PAIR_AVAILABLE`` if that is why nothing was found.
    ``Mode.COMPLETE`` branches on a smallest open domain instead, so it always
    ends solved or blocked.
    """
    stats = SolveStats(trace=[TRACE_HEADER] if trace else None)
    search = _Search(puzzle, mode, stats)
    cells = list(puzzle.cells)
    search.step(cells)
    for solved in search.run(cells):
        return SolveOutcome(Status.SOLVED, puzzle.with_cells(solved), stats)
    status = Status.NO_PAIR_AVAILABLE if search.no_pair else Status.BLOCKED
    return SolveOutcome(status, None, stats)


def iter_solutions(puzzle: Puzzle, mode: Mode = Mode.COMPLETE) -> Iterator[Puzzle]:
    """Every solution the search meets, in order; strict mode may miss some."""
    stats = SolveStats()
    search = _Search(puzzle, mode, stats)
    cells = list(puzzle.cells)
    search.step(cells)
    for solved in search.run(cells):
        yield puzzle.with_cells(solved)
