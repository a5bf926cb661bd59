"""Naive SAT encoding of Su-Doku into DIMACS CNF.

Boolean ``b(i, j, v)`` is true when cell (i, j) holds v.  Clauses: an
at-least-one clause per cell, a binary at-most-one clause for every pair of
cells sharing a unit and every value, and a unit clause per given.  There
are no per-cell at-most-one clauses; with complete units the pigeonhole
argument makes them redundant.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .grid import Puzzle, Size, domain_values, units_of


def alldiff_clause_count(k: int) -> int:
    """CSP-level clauses for one alldifferent of arity k: pairwise disequalities plus domains."""
    if k < 1:
        raise ValueError("arity must be at least 1")
    return k * (k + 1) // 2


def var_index(size: Size, i: int, j: int, v: int) -> int:
    side = size.side
    return 1 + (i * side + j) * side + (v - 1)


@dataclass
class CNF:
    num_vars: int
    clauses: list[tuple[int, ...]]
    comments: list[str]

    def to_dimacs(self) -> str:
        lines = [f"c {c}" for c in self.comments]
        lines.append(f"p cnf {self.num_vars} {len(self.clauses)}")
        lines += [" ".join(map(str, cl)) + " 0" for cl in self.clauses]
        return "\n".join(lines) + "\n"

    def satisfied_by(self, true_vars: Iterable[int]) -> bool:
        true = set(true_vars)
        return all(any((lit > 0) == (abs(lit) in true) for lit in cl) for cl in self.clauses)


def build_cnf(puzzle: Puzzle) -> CNF:
    size = puzzle.size
    side = size.side
    var = lambda i, j, v: 1 + (i * side + j) * side + (v - 1)  # noqa: E731
    clauses: list[tuple[int, ...]] = []
    for i in range(side):
        for j in range(side):
            clauses.append(tuple(var(i, j, v) for v in range(1, side + 1)))
    for unit in units_of(size, puzzle.variant):
        for v in range(1, side + 1):
            for a, b in combinations(unit.members, 2):
                clauses.append((-var(a // side, a % side, v), -var(b // side, b % side, v)))
    full = size.full
    for c, d in enumerate(puzzle.cells):
        i, j = divmod(c, side)
        if d and not d & (d - 1):
            clauses.append((var(i, j, d.bit_length()),))
        elif d != full:
            # partially filtered domain: forbid the missing values
            for v in range(1, side + 1):
                if v not in domain_values(d):
                    clauses.append((-var(i, j, v),))
    comments = [
        f"su-doku block size {size.n}, {side}x{side}, variant {puzzle.variant.value}",
        "variable b(i,j,v) = 1 + (i*side + j)*side + (v-1); i, j 0-based, v 1-based",
    ]
    return CNF(side ** 3, clauses, comments)


def emit_dimacs(puzzle: Puzzle) -> str:
    return build_cnf(puzzle).to_dimacs()


def parse_dimacs(text: str) -> tuple[int, int, list[tuple[int, ...]]]:
    """Return (declared vars, declared clauses, clauses read)."""
    declared = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            _, fmt, nv, nc = line.split()
            if fmt != "cnf":
                raise ValueError("not a CNF header")
            declared = (int(nv), int(nc))
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if declared is None:
        raise ValueError("missing 'p cnf' header")
    return declared[0], declared[1], clauses


def grid_model(puzzle: Puzzle) -> set[int]:
    """True variables of a fully assigned grid."""
    side = puzzle.size.side
    return {1 + c * side + (v - 1) for c, v in enumerate(puzzle.values())}
