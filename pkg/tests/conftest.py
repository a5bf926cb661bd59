from importlib import resources
from pathlib import Path

import pytest

from sudokit.builders import puzzle_preselection, solution_to_grid, sudoku_matrix
from sudokit.dlx import SearchConfig, solve_all
from sudokit.grid import Size, parse_puzzle

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"

# 6x4 matrix from the hitting-set illustration; rows are numbered from 1
HITTING_MATRIX = [
    [1, 0, 1, 0],
    [0, 0, 1, 1],
    [0, 1, 0, 0],
    [1, 0, 1, 1],
    [0, 0, 0, 1],
    [1, 1, 0, 0],
]

EXAMPLE1_SOLUTION = [
    [6, 1, 2, 5, 3, 4, 8, 7, 9],
    [3, 4, 9, 2, 8, 7, 1, 6, 5],
    [7, 5, 8, 9, 1, 6, 4, 2, 3],
    [5, 9, 4, 1, 2, 8, 7, 3, 6],
    [8, 2, 7, 6, 5, 3, 9, 4, 1],
    [1, 6, 3, 4, 7, 9, 5, 8, 2],
    [4, 8, 6, 3, 9, 5, 2, 1, 7],
    [9, 7, 1, 8, 6, 2, 3, 5, 4],
    [2, 3, 5, 7, 4, 1, 6, 9, 8],
]


def example1_text() -> str:
    return resources.files("sudokit").joinpath("data/example1.sdk").read_text()


@pytest.fixture
def example1():
    return parse_puzzle(example1_text(), Size(3))


def dlx_solution_set(puzzle) -> set[tuple[int, ...]]:
    """All solutions of a puzzle as flat value tuples, by dancing links."""
    cfg = SearchConfig(preselected_rows=puzzle_preselection(puzzle))
    found, _ = solve_all(sudoku_matrix(puzzle.size, puzzle.variant), cfg)
    return {tuple(solution_to_grid(puzzle.size, puzzle.variant, rows).values()) for rows in found}


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
