import random

from sudokit import ps12
from sudokit.generate import carve, random_grid
from sudokit.grid import (Puzzle, Size, Variant, check_solution, parse_puzzle, peers_of,
                          units_of)
from sudokit.ps12 import (Mode, Status, TRACE_HEADER, _Search, iter_solutions, next_pair,
                          propagate_assignments, reduce_units, solve_ps12, solve_step)

from conftest import DATA, EXAMPLE1_SOLUTION, dlx_solution_set

FLAT1 = [v for row in EXAMPLE1_SOLUTION for v in row]


def _random_puzzles(count, seed, lo=3, hi=9):
    rng = random.Random(seed)
    for _ in range(count):
        g = random_grid(Size(2), rng)
        yield carve(g, rng.randint(lo, hi), rng)


def test_example1_both_modes(example1):
    for mode in Mode:
        out = solve_ps12(example1, mode)
        assert out.status is Status.SOLVED
        assert out.grid.values() == FLAT1


def test_strict_mode_gives_up_without_pairs():
    out = solve_ps12(Puzzle.empty(Size(2)), Mode.STRICT)
    assert out.status is Status.NO_PAIR_AVAILABLE
    assert out.grid is None


def test_complete_mode_solves_empty_grid():
    out = solve_ps12(Puzzle.empty(Size(2)), Mode.COMPLETE)
    assert out.status is Status.SOLVED and check_solution(out.grid)


def test_blocked_puzzle():
    p = parse_puzzle((DATA / "contradictory.sdk").read_text(), Size(2))
    assert solve_ps12(p).status is Status.BLOCKED
    assert list(iter_solutions(p)) == []


def test_enumerates_all_grids():
    plain = {tuple(g.values()) for g in iter_solutions(Puzzle.empty(Size(2)))}
    assert len(plain) == 288
    diag = list(iter_solutions(Puzzle.empty(Size(2), Variant.DIAGONAL)))
    assert len(diag) == 48


def test_single_cell_grid():
    out = solve_ps12(Puzzle.empty(Size(1)))
    assert out.grid.values() == [1]


def test_next_pair_is_first_in_row_major_order():
    cells = [0b1111, 0b0111, 0b0110, 0b0011]
    assert next_pair(cells) == 2
    assert next_pair([0b1, 0b111]) is None


def test_propagate_removes_given_from_peers():
    p = Puzzle.from_values(Size(2), [1] + [0] * 15)
    q, changed = propagate_assignments(p)
    assert changed
    for c in peers_of(Size(2))[0]:
        assert not q.cells[c] & 1
    assert propagate_assignments(q)[1] is False


def test_reduce_assigns_hidden_single():
    # value 1 only possible in cell 3 of line 0
    cells = [0b1110, 0b1110, 0b1110, 0b1111] + [0b1111] * 12
    q, changed = reduce_units(Puzzle(Size(2), tuple(cells)))
    assert changed and q.cells[3] == 0b0001


def test_trace_has_header_and_rows(example1):
    out = solve_ps12(example1, trace=True)
    assert out.stats.trace[0] == TRACE_HEADER
    assert len(out.stats.trace) > 2
    assert out.stats.propagation_steps > 0 and out.stats.reduction_steps > 0


def _reference_fixpoint(cells, size, variant, rng):
    """Apply single eliminations and hidden singles one at a time in random order."""
    cells = list(cells)
    peers = peers_of(size, variant)
    units = [u.members for u in units_of(size, variant)]
    while True:
        moves = [("e", c) for c in range(len(cells))] + [("h", i) for i in range(len(units))]
        rng.shuffle(moves)
        changed = False
        for kind, x in moves:
            if kind == "e":
                d = cells[x]
                if d and not d & (d - 1):
                    for p in peers[x]:
                        if cells[p] & d:
                            cells[p] &= ~d
                            changed = True
            else:
                members = units[x]
                for v in range(size.side):
                    b = 1 << v
                    holders = [c for c in members if cells[c] & b]
                    if len(holders) == 1 and cells[holders[0]] != b:
                        cells[holders[0]] = b
                        changed = True
        if not changed:
            return cells


def test_confluence_random_orders():
    rng = random.Random(11)
    for p in _random_puzzles(200, 5):
        fixed, _ = solve_step(p)
        for _ in range(3):
            assert _reference_fixpoint(p.cells, p.size, p.variant, rng) == list(fixed.cells)


def test_soundness_and_monotonicity():
    for p in _random_puzzles(200, 6, lo=2, hi=8):
        fixed, _ = solve_step(p)
        for a, b in zip(p.cells, fixed.cells):
            assert b & ~a == 0
        for sol in dlx_solution_set(p):
            for c, v in enumerate(sol):
                assert fixed.cells[c] >> (v - 1) & 1


def test_fixpoint_satisfies_dual_rule():
    for p in _random_puzzles(100, 8):
        fixed, _ = solve_step(p)
        cells = fixed.cells
        if 0 in cells:
            continue
        for u in units_of(p.size):
            for v in range(4):
                holders = [c for c in u.members if cells[c] >> v & 1]
                assert len(holders) != 1 or cells[holders[0]] == 1 << v


def test_search_restores_state():
    for p in _random_puzzles(50, 9, lo=0, hi=6):
        search = _Search(p, Mode.COMPLETE, ps12.SolveStats())
        cells = list(p.cells)
        search.step(cells)
        before = list(cells)
        list(search.run(cells))
        assert cells == before


def test_solution_sets_match_dlx():
    for p in _random_puzzles(100, 10, lo=0, hi=8):
        mine = {tuple(g.values()) for g in iter_solutions(p)}
        assert mine == dlx_solution_set(p)
