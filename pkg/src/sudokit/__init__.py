"""Su-Doku combinatorics: propagation search, alldifferent filtering,
dancing links, permanents and CNF export."""

from .grid import Puzzle, Size, Variant, parse_puzzle, render_grid

__all__ = ["Puzzle", "Size", "Variant", "parse_puzzle", "render_grid"]
__version__ = "0.1.0"
