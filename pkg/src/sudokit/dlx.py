"""Algorithm X on dancing links.

A ``CoverMatrix`` is the immutable sparse 0-1 matrix; ``build_links`` turns it
into a ``NodeStore`` whose circular lists are mutated in place by ``cover``
and ``uncover``.  Links are indices into flat arrays: node 0 is the root,
nodes ``1..m`` are the column headers, every matrix 1 gets a node after that.
"""

from __future__ import annotations

import enum
import time
from collections import Counter
from dataclasses import dataclass, field
from statistics import fmean, pvariance
from typing import Callable, Iterable, Sequence, TextIO

MASK64 = (1 << 64) - 1


class MalformedMatrix(ValueError):
    pass


class InvalidPreselection(ValueError):
    pass


class SplitMix64:
    """Small 64-bit generator; every random choice in this module goes through it."""

    def __init__(self, seed: int):
        self.seed = seed
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)``."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - (1 << 64) % n
        while True:
            r = self.next_u64()
            if r < limit:
                return r % n


# -- matrix ------------------------------------------------------------------

@dataclass(frozen=True)
class CoverMatrix:
    column_names: tuple[str, ...]
    rows: tuple[tuple[str, tuple[int, ...]], ...]
    secondary: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        m = len(self.column_names)
        if len(set(self.column_names)) != m:
            raise MalformedMatrix("duplicate column name")
        seen = set()
        for name, cols in self.rows:
            if name in seen:
                raise MalformedMatrix(f"duplicate row name {name!r}")
            seen.add(name)
            if not cols:
                raise MalformedMatrix(f"row {name!r} is empty")
            if len(set(cols)) != len(cols):
                raise MalformedMatrix(f"row {name!r} repeats a column")
            if any(not 0 <= c < m for c in cols):
                raise MalformedMatrix(f"row {name!r} has a column index out of range")
            if list(cols) != sorted(cols):
                raise MalformedMatrix(f"row {name!r} columns must be sorted")
        if any(not 0 <= c < m for c in self.secondary):
            raise MalformedMatrix("secondary column index out of range")

    @classmethod
    def from_rows(cls, column_names: Iterable[str], rows: Iterable[tuple[str, Iterable]],
                  secondary: Iterable[str] = ()) -> "CoverMatrix":
        """Build from rows given as column names or indices, in any order."""
        names = tuple(column_names)
        index = {c: i for i, c in enumerate(names)}
        built = []
        for rname, cols in rows:
            try:
                idx = sorted(index[c] if isinstance(c, str) else c for c in cols)
            except KeyError as e:
                raise MalformedMatrix(f"row {rname!r} names unknown column {e.args[0]!r}")
            built.append((rname, tuple(idx)))
        try:
            sec = frozenset(index[c] for c in secondary)
        except KeyError as e:
            raise MalformedMatrix(f"unknown secondary column {e.args[0]!r}")
        return cls(names, tuple(built), sec)

    @classmethod
    def from_dense(cls, matrix: Sequence[Sequence[int]], row_names: Sequence[str] | None = None,
                   column_names: Sequence[str] | None = None) -> "CoverMatrix":
        m = len(matrix[0]) if matrix else 0
        cnames = tuple(column_names or (str(j + 1) for j in range(m)))
        rnames = row_names or [str(i + 1) for i in range(len(matrix))]
        rows = tuple((rnames[i], tuple(j for j, x in enumerate(r) if x))
                     for i, r in enumerate(matrix))
        return cls(cnames, rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.column_names)

    @property
    def ones(self) -> int:
        return sum(len(cols) for _, cols in self.rows)

    def row_map(self) -> dict[str, tuple[int, ...]]:
        return dict(self.rows)

    def is_exact_cover(self, row_names: Iterable[str]) -> bool:
        """Every primary column hit exactly once, secondary ones at most once."""
        rows = self.row_map()
        hits = Counter()
        for name in row_names:
            if name not in rows:
                return False
            hits.update(rows[name])
        for c in range(len(self.column_names)):
            want_max = 1
            if hits[c] > want_max or (c not in self.secondary and hits[c] != 1):
                return False
        return True


def write_matrix(m: CoverMatrix, out: TextIO) -> None:
    out.write(f"cols {len(m.column_names)} {' '.join(m.column_names)}\n")
    if m.secondary:
        out.write("secondary " + " ".join(m.column_names[c] for c in sorted(m.secondary)) + "\n")
    for name, cols in m.rows:
        out.write(f"{name}: {' '.join(m.column_names[c] for c in cols)}\n")


def matrix_to_text(m: CoverMatrix) -> str:
    import io
    buf = io.StringIO()
    write_matrix(m, buf)
    return buf.getvalue()


def read_matrix(text: str) -> CoverMatrix:
    """Parse the ``cols`` / ``name: col col ...`` format written by ``write_matrix``."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("cols"):
        raise MalformedMatrix("first line must be 'cols <m> <names...>'")
    head = lines[0].split()
    try:
        m = int(head[1])
    except (IndexError, ValueError):
        raise MalformedMatrix("bad column count")
    names = head[2:]
    k = 1
    while len(names) < m and k < len(lines) and ":" not in lines[k] \
            and not lines[k].startswith("secondary"):
        names.extend(lines[k].split())
        k += 1
    if len(names) != m:
        raise MalformedMatrix(f"declared {m} columns, found {len(names)} names")
    secondary: list[str] = []
    rows = []
    for ln in lines[k:]:
        if ln.startswith("secondary"):
            secondary.extend(ln.split()[1:])
            continue
        if ":" not in ln:
            raise MalformedMatrix(f"row line without ':' -> {ln!r}")
        rname, rest = ln.split(":", 1)
        rows.append((rname.strip(), rest.split()))
    return CoverMatrix.from_rows(names, rows, secondary)


# -- dancing links -----------------------------------------------------------

class NodeStore:
    __slots__ = ("L", "R", "U", "D", "C", "row", "size", "names", "row_names",
                 "row_start", "n_cols")

    def __init__(self, n_cols: int):
        self.n_cols = n_cols
        self.L: list[int] = []
        self.R: list[int] = []
        self.U: list[int] = []
        self.D: list[int] = []
        self.C: list[int] = []
        self.row: list[int] = []
        self.size: list[int] = [0] * (n_cols + 1)
        self.names: list[str] = []
        self.row_names: list[str] = []
        self.row_start: list[int] = []

    def snapshot(self) -> tuple:
        """Full structural state, for equality checks."""
        return (tuple(self.L), tuple(self.R), tuple(self.U), tuple(self.D),
                tuple(self.C), tuple(self.size))

    def columns(self) -> list[int]:
        """Uncovered primary columns in header-list order."""
        out = []
        c = self.R[0]
        while c != 0:
            out.append(c)
            c = self.R[c]
        return out

    def column_rows(self, c: int) -> list[int]:
        out = []
        x = self.D[c]
        while x != c:
            out.append(x)
            x = self.D[x]
        return out

    def check(self) -> None:
        """Assert every live list is consistent and header sizes are right."""
        cols = [0] + self.columns()
        for c in cols:
            assert self.L[self.R[c]] == c and self.R[self.L[c]] == c
        for c in cols[1:]:
            rows = self.column_rows(c)
            assert self.size[c] == len(rows), (c, self.size[c], len(rows))
            for x in rows + [c]:
                assert self.U[self.D[x]] == x and self.D[self.U[x]] == x


def build_links(m: CoverMatrix) -> NodeStore:
    n = len(m.column_names)
    s = NodeStore(n)
    for i in range(n + 1):
        s.L.append(i - 1 if i else 0)
        s.R.append(i + 1 if i else 0)
        s.U.append(i)
        s.D.append(i)
        s.C.append(i)
        s.row.append(-1)
    s.names = ["<root>"] + list(m.column_names)
    # Primary headers form the ring through the root; secondary ones ring to themselves.
    primary = [c + 1 for c in range(n) if c not in m.secondary]
    ring = [0] + primary
    for a, b in zip(ring, ring[1:] + ring[:1]):
        s.R[a] = b
        s.L[b] = a
    for c in range(n):
        if c in m.secondary:
            s.L[c + 1] = s.R[c + 1] = c + 1
    for r, (rname, cols) in enumerate(m.rows):
        s.row_names.append(rname)
        first = len(s.L)
        s.row_start.append(first)
        for k, c in enumerate(cols):
            h = c + 1
            x = len(s.L)
            s.L.append(x - 1 if k else first + len(cols) - 1)
            s.R.append(x + 1 if k < len(cols) - 1 else first)
            s.U.append(s.U[h])
            s.D.append(h)
            s.C.append(h)
            s.row.append(r)
            s.D[s.U[h]] = x
            s.U[h] = x
            s.size[h] += 1
    return s


def cover(s: NodeStore, c: int) -> int:
    """Unlink header ``c`` and every row crossing it; returns removal count."""
    L, R, U, D, C, size = s.L, s.R, s.U, s.D, s.C, s.size
    R[L[c]] = R[c]
    L[R[c]] = L[c]
    updates = 1
    i = D[c]
    while i != c:
        j = R[i]
        while j != i:
            D[U[j]] = D[j]
            U[D[j]] = U[j]
            size[C[j]] -= 1
            updates += 1
            j = R[j]
        i = D[i]
    return updates


def uncover(s: NodeStore, c: int) -> None:
    L, R, U, D, C, size = s.L, s.R, s.U, s.D, s.C, s.size
    i = U[c]
    while i != c:
        j = L[i]
        while j != i:
            size[C[j]] += 1
            D[U[j]] = j
            U[D[j]] = j
            j = L[j]
        i = U[i]
    R[L[c]] = c
    L[R[c]] = c


def _cover_row_others(s: NodeStore, x: int) -> int:
    updates = 0
    j = s.R[x]
    while j != x:
        updates += cover(s, s.C[j])
        j = s.R[j]
    return updates


def _uncover_row_others(s: NodeStore, x: int) -> None:
    j = s.L[x]
    while j != x:
        uncover(s, s.C[j])
        j = s.L[j]


# -- search --------------------------------------------------------------------

class ColumnRule(enum.Enum):
    SHORTEST = "shortest"
    RANDOM = "random"


@dataclass
class SearchConfig:
    column_rule: ColumnRule = ColumnRule.SHORTEST
    seed: int = 1
    solution_limit: int | None = None
    preselected_rows: Sequence[str] = ()

    def __post_init__(self) -> None:
        if self.solution_limit is not None and self.solution_limit < 1:
            raise ValueError("solution_limit must be at least 1")


@dataclass
class SearchReport:
    solutions_found: int = 0
    covers: int = 0
    nodes: int = 0
    covers_per_depth: Counter = field(default_factory=Counter)
    backtracks_per_depth: Counter = field(default_factory=Counter)
    degrees_per_depth: Counter = field(default_factory=Counter)
    elapsed: float = 0.0
    seed: int | None = None

    def table(self) -> str:
        """Per-depth Covers / Backtracks / Degrees table."""
        depths = sorted(set(self.covers_per_depth) | set(self.backtracks_per_depth)
                        | set(self.degrees_per_depth))
        lines = [f"{'Depth':>9}{'Covers':>14}{'Backtracks':>14}{'Degrees':>14}"]
        for d in depths:
            lines.append(f"{d:>9}{self.covers_per_depth[d]:>14}"
                         f"{self.backtracks_per_depth[d]:>14}{self.degrees_per_depth[d]:>14}")
        lines.append(f"{'Total':>9}{self.covers:>14}"
                     f"{sum(self.backtracks_per_depth.values()):>14}")
        return "\n".join(lines)


def _choose(s: NodeStore, rule: ColumnRule, rng: SplitMix64) -> int:
    R, size = s.R, s.size
    if rule is ColumnRule.RANDOM:
        cols = s.columns()
        return cols[rng.below(len(cols))]
    best, best_size = 0, 1 << 62
    c = R[0]
    while c != 0:
        if size[c] < best_size:
            best, best_size = c, size[c]
            if best_size == 0:
                break
        c = R[c]
    return best


def _apply_preselection(s: NodeStore, names: Sequence[str]) -> list[int]:
    """Cover the columns of each preselected row; returns the row heads used."""
    index = {n: r for r, n in enumerate(s.row_names)}
    live = set(s.columns())
    heads = []
    try:
        for name in names:
            if name not in index:
                raise InvalidPreselection(f"unknown row {name!r}")
            x = s.row_start[index[name]]
            cols = [s.C[x]]
            j = s.R[x]
            while j != x:
                cols.append(s.C[j])
                j = s.R[j]
            if any(c not in live for c in cols):
                raise InvalidPreselection(f"row {name!r} clashes with an earlier given")
            cover(s, s.C[x])
            _cover_row_others(s, x)
            live.difference_update(cols)
            heads.append(x)
    except InvalidPreselection:
        _undo_preselection(s, heads)
        raise
    return heads


def _undo_preselection(s: NodeStore, heads: list[int]) -> None:
    for x in reversed(heads):
        _uncover_row_others(s, x)
        uncover(s, s.C[x])


def search(s: NodeStore, cfg: SearchConfig | None = None,
           on_solution: Callable[[list[str]], None] | None = None) -> SearchReport:
    """Enumerate every exact cover, calling ``on_solution`` with row names.

    The store is restored to its initial state on return, including after an
    early stop at ``solution_limit``.
    """
    cfg = cfg or SearchConfig()
    rng = SplitMix64(cfg.seed)
    rep = SearchReport(seed=cfg.seed if cfg.column_rule is ColumnRule.RANDOM else None)
    start = time.perf_counter()
    heads = _apply_preselection(s, cfg.preselected_rows)
    partial = list(heads)
    limit = cfg.solution_limit
    R, D, row, names = s.R, s.D, s.row, s.row_names

    def rec(k: int) -> bool:
        rep.nodes += 1
        if R[0] == 0:
            rep.solutions_found += 1
            if on_solution is not None:
                on_solution([names[row[x]] for x in partial])
            return limit is not None and rep.solutions_found >= limit
        c = _choose(s, cfg.column_rule, rng)
        rep.degrees_per_depth[k] += s.size[c]
        u = cover(s, c)
        r = D[c]
        stop = False
        while r != c and not stop:
            partial.append(r)
            u += _cover_row_others(s, r)
            stop = rec(k + 1)
            _uncover_row_others(s, r)
            partial.pop()
            rep.backtracks_per_depth[k] += 1
            r = D[r]
        uncover(s, c)
        rep.covers_per_depth[k] += u
        rep.covers += u
        return stop

    try:
        rec(0)
    finally:
        _undo_preselection(s, heads)
    rep.elapsed = time.perf_counter() - start
    return rep


def solve_all(m: CoverMatrix, cfg: SearchConfig | None = None) -> tuple[list[list[str]], SearchReport]:
    """Convenience wrapper collecting all solutions in a list."""
    found: list[list[str]] = []
    rep = search(build_links(m), cfg, found.append)
    return found, rep


# -- tree size estimation -------------------------------------------------------

@dataclass
class EstimateReport:
    estimates: list[int]
    seed: int

    @property
    def mean(self) -> float:
        return fmean(self.estimates)

    @property
    def variance(self) -> float:
        return pvariance(self.estimates) if len(self.estimates) > 1 else 0.0


def estimate_tree(s: NodeStore, cfg: SearchConfig | None = None, samples: int = 1,
                  seed: int = 1) -> EstimateReport:
    """Random-path estimates of the search tree size, 1 + D1 + D1*D2 + ...

    Each sample walks from the root, picking one of the D candidate rows of
    the chosen column uniformly; the walk stops at a solution or at D = 0.
    The expectation equals the number of ``search`` calls of a full run.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    cfg = cfg or SearchConfig()
    rng = SplitMix64(seed)
    heads = _apply_preselection(s, cfg.preselected_rows)
    out = []
    try:
        for _ in range(samples):
            est = prod = 1
            path: list[tuple[int, int]] = []
            while s.R[0] != 0:
                c = _choose(s, cfg.column_rule, rng)
                d = s.size[c]
                prod *= d
                est += prod
                if d == 0:
                    break
                cover(s, c)
                r = s.column_rows(c)[rng.below(d)]
                _cover_row_others(s, r)
                path.append((c, r))
            for c, r in reversed(path):
                _uncover_row_others(s, r)
                uncover(s, c)
            out.append(est)
    finally:
        _undo_preselection(s, heads)
    return EstimateReport(out, seed)
