"""Grid model: sizes, bitset domains, units and the puzzle text format.

A domain is a plain ``int`` used as a bitset: bit ``v - 1`` is set when value
``v`` is still a candidate.  Cells are numbered row-major, ``i * side + j``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

MAX_BLOCK = 8  # side <= 64 keeps a domain in one machine word


class PuzzleError(ValueError):
    """Base class for malformed puzzle input; carries an optional text position."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class WrongCellCount(PuzzleError):
    pass


class ValueOutOfRange(PuzzleError):
    pass


class DuplicateGivenInUnit(PuzzleError):
    pass


class NotFullySolved(ValueError):
    pass


class Variant(enum.Enum):
    PLAIN = "plain"
    DIAGONAL = "diagonal"


class UnitKind(enum.Enum):
    LINE = "line"
    FILE = "file"
    BLOCK = "block"
    DIAGONAL = "diagonal"


@dataclass(frozen=True)
class Size:
    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"block size must be a positive integer, got {self.n!r}")
        if self.n > MAX_BLOCK:
            raise ValueError(f"block size {self.n} exceeds supported maximum {MAX_BLOCK}")

    @property
    def side(self) -> int:
        return self.n * self.n

    @property
    def cell_count(self) -> int:
        return self.side * self.side

    @property
    def full(self) -> int:
        """The domain holding every value ``1..side``."""
        return (1 << self.side) - 1

    def block_of(self, i: int, j: int) -> int:
        return (i // self.n) * self.n + j // self.n


# -- domain helpers ---------------------------------------------------------

def popcount(bits: int) -> int:
    return bin(bits).count("1")


def bit(value: int) -> int:
    return 1 << (value - 1)


def domain_values(bits: int) -> list[int]:
    """Values present in ``bits``, ascending."""
    out = []
    v = 1
    while bits:
        if bits & 1:
            out.append(v)
        bits >>= 1
        v += 1
    return out


def single_value(bits: int) -> int:
    """Value of a singleton domain (undefined for other domains)."""
    return bits.bit_length()


def lowest_value(bits: int) -> int:
    return (bits & -bits).bit_length()


def domain_from_values(values: Iterable[int]) -> int:
    bits = 0
    for v in values:
        bits |= 1 << (v - 1)
    return bits


# -- units ------------------------------------------------------------------

@dataclass(frozen=True)
class Unit:
    kind: UnitKind
    index: int
    members: tuple[int, ...]


@lru_cache(maxsize=None)
def units_of(size: Size, variant: Variant = Variant.PLAIN) -> tuple[Unit, ...]:
    """Lines, files and blocks (plus both diagonals for the diagonal variant)."""
    n, side = size.n, size.side
    units = []
    for i in range(side):
        units.append(Unit(UnitKind.LINE, i, tuple(i * side + j for j in range(side))))
    for j in range(side):
        units.append(Unit(UnitKind.FILE, j, tuple(i * side + j for i in range(side))))
    for b in range(side):
        r0, c0 = (b // n) * n, (b % n) * n
        members = tuple((r0 + di) * side + c0 + dj for di in range(n) for dj in range(n))
        units.append(Unit(UnitKind.BLOCK, b, members))
    if variant is Variant.DIAGONAL:
        units.append(Unit(UnitKind.DIAGONAL, 0, tuple(i * side + i for i in range(side))))
        units.append(Unit(UnitKind.DIAGONAL, 1, tuple(i * side + side - 1 - i for i in range(side))))
    return tuple(units)


@lru_cache(maxsize=None)
def peers_of(size: Size, variant: Variant = Variant.PLAIN) -> tuple[tuple[int, ...], ...]:
    """For every cell, the sorted cells sharing at least one unit with it."""
    peers: list[set[int]] = [set() for _ in range(size.cell_count)]
    for unit in units_of(size, variant):
        for c in unit.members:
            peers[c].update(unit.members)
    for c, p in enumerate(peers):
        p.discard(c)
    return tuple(tuple(sorted(p)) for p in peers)


# -- puzzle -----------------------------------------------------------------

@dataclass(frozen=True)
class Puzzle:
    size: Size
    cells: tuple[int, ...]
    variant: Variant = Variant.PLAIN

    def __post_init__(self) -> None:
        if len(self.cells) != self.size.cell_count:
            raise WrongCellCount(
                f"expected {self.size.cell_count} cells, got {len(self.cells)}")
        full = self.size.full
        for d in self.cells:
            if d & ~full:
                raise ValueOutOfRange(f"domain {d:#x} has bits above {self.size.side}")

    @classmethod
    def empty(cls, size: Size, variant: Variant = Variant.PLAIN) -> "Puzzle":
        return cls(size, (size.full,) * size.cell_count, variant)

    @classmethod
    def from_values(cls, size: Size, values: Sequence[int],
                    variant: Variant = Variant.PLAIN) -> "Puzzle":
        """Build from a flat value list where 0 marks an empty cell."""
        return cls(size, tuple(bit(v) if v else size.full for v in values), variant)

    def domain(self, i: int, j: int) -> int:
        return self.cells[i * self.size.side + j]

    def with_cells(self, cells: Iterable[int]) -> "Puzzle":
        return Puzzle(self.size, tuple(cells), self.variant)

    def is_solved(self) -> bool:
        return all(d and not d & (d - 1) for d in self.cells)

    def is_blocked(self) -> bool:
        return any(d == 0 for d in self.cells)

    def values(self) -> list[int]:
        """Flat cell values, 0 for any cell that is not a singleton."""
        return [single_value(d) if d and not d & (d - 1) else 0 for d in self.cells]

    def givens(self) -> Iterator[tuple[int, int, int]]:
        """(line, file, value) for every singleton cell."""
        side = self.size.side
        for c, v in enumerate(self.values()):
            if v:
                yield c // side, c % side, v


def _check_duplicates(puzzle: Puzzle, positions: Sequence[tuple[int, int]] | None = None) -> None:
    values = puzzle.values()
    for unit in units_of(puzzle.size, puzzle.variant):
        seen: dict[int, int] = {}
        for c in unit.members:
            v = values[c]
            if not v:
                continue
            if v in seen:
                line = col = None
                if positions is not None:
                    line, col = positions[c]
                raise DuplicateGivenInUnit(
                    f"value {v} given twice in {unit.kind.value} {unit.index}", line, col)
            seen[v] = c


def _tokens(text: str, compact: bool) -> Iterator[tuple[str, int, int]]:
    """Yield (token, line, column), 1-based positions."""
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.lstrip().startswith("#"):
            continue
        if compact:
            for col, ch in enumerate(line, start=1):
                if not ch.isspace():
                    yield ch, lineno, col
        else:
            for m in re.finditer(r"\S+", line):
                yield m.group(), lineno, m.start() + 1


def parse_puzzle(text: str, size: Size, variant: Variant = Variant.PLAIN) -> Puzzle:
    """Parse a puzzle in the dotted layout.

    For block size 3 and below every non-blank character is a cell; from 4 on
    cells are whitespace separated tokens.  ``.`` and ``0`` mark empty cells.
    Lines starting with ``#`` are ignored.
    """
    side = size.side
    compact = size.n <= 3
    values: list[int] = []
    positions: list[tuple[int, int]] = []
    for tok, line, col in _tokens(text, compact):
        if tok in (".", "0"):
            v = 0
        elif tok.isdigit():
            v = int(tok)
            if not 1 <= v <= side:
                raise ValueOutOfRange(f"value {v} outside 1..{side}", line, col)
        else:
            raise ValueOutOfRange(f"unexpected token {tok!r}", line, col)
        values.append(v)
        positions.append((line, col))
    if len(values) != size.cell_count:
        raise WrongCellCount(f"expected {size.cell_count} cells, got {len(values)}")
    puzzle = Puzzle.from_values(size, values, variant)
    _check_duplicates(puzzle, positions)
    return puzzle


def infer_size(text: str) -> Size:
    """Guess the block size from the number of cells in ``text``."""
    compact = sum(1 for _ in _tokens(text, compact=True))
    for n in (1, 2, 3):
        if compact == n ** 4:
            return Size(n)
    spaced = sum(1 for _ in _tokens(text, compact=False))
    for n in range(4, MAX_BLOCK + 1):
        if spaced == n ** 4:
            return Size(n)
    raise WrongCellCount(f"cannot infer grid size from {compact} characters / {spaced} tokens")


def format_puzzle(puzzle: Puzzle) -> str:
    """Write the singleton cells back out in the format ``parse_puzzle`` reads."""
    side = puzzle.size.side
    values = puzzle.values()
    lines = []
    for i in range(side):
        row = values[i * side:(i + 1) * side]
        if puzzle.size.n <= 3:
            lines.append("".join(str(v) if v else "." for v in row))
        else:
            width = len(str(side))
            lines.append(" ".join((str(v) if v else ".").rjust(width) for v in row))
    return "\n".join(lines) + "\n"


def render_grid(puzzle: Puzzle) -> str:
    """Boxed rendering of a solved grid, one block separator per band."""
    if not puzzle.is_solved():
        raise NotFullySolved("every cell must hold exactly one value")
    n, side = puzzle.size.n, puzzle.size.side
    width = len(str(side))
    values = puzzle.values()
    rows = []
    for i in range(side):
        parts = []
        for b in range(n):
            chunk = values[i * side + b * n:i * side + (b + 1) * n]
            parts.append(" ".join(str(v).rjust(width) for v in chunk))
        rows.append("| " + " | ".join(parts) + " |")
    rule = "-" * len(rows[0])
    out = []
    for i, row in enumerate(rows):
        if i % n == 0:
            out.append(rule)
        out.append(row)
    out.append(rule)
    return "\n".join(out) + "\n"


def check_solution(puzzle: Puzzle) -> bool:
    """True when every unit holds each value exactly once."""
    if not puzzle.is_solved():
        return False
    values = puzzle.values()
    want = set(range(1, puzzle.size.side + 1))
    return all({values[c] for c in u.members} == want
               for u in units_of(puzzle.size, puzzle.variant))
