"""Exact screening, search, verification and analysis of N-tilings of an equilateral triangle."""

from .numeric import Q3, Zeta3, format_q3, parse_q3, q3_sqrt
from .theory import CandidateRow, GammaCase, TileShape, enumerate_candidates, prime_screen, reproduce_table
from .model import PlacedTile, Tiling, compute_coloring, verify_tiling
from .search import SolveConfig, SolveOutcome, Verdict, decide, solve
from .io import parse_tiling, serialize_tiling

__version__ = "0.1.0"

__all__ = [
    "Q3", "Zeta3", "format_q3", "parse_q3", "q3_sqrt",
    "CandidateRow", "GammaCase", "TileShape", "enumerate_candidates", "prime_screen", "reproduce_table",
    "PlacedTile", "Tiling", "compute_coloring", "verify_tiling",
    "SolveConfig", "SolveOutcome", "Verdict", "decide", "solve",
    "parse_tiling", "serialize_tiling",
]
