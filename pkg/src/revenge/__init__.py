"""Solver for the 4x4x4 Rubik's Revenge.

Finds full solutions by solving a chain of eight progressively restricted
move-set phases, each one optimally by iterative deepening with an
admissible per-piece twist-distance bound.  Includes WCA move notation, a
96-sticker text state format, seeded scramble generation, verification,
and a benchmarking CLI.
"""

from .cube import (
    CubeState,
    InvalidStateError,
    SOLVED,
    ValidationReport,
    anchor_state,
    apply_move,
    apply_sequence,
    count_configurations,
    format_state,
    is_solved,
    parse_state,
    pigeonhole_bound,
    validate,
)
from .heuristic import DistanceTable, build_distance_tables, twist_distance
from .moves import (
    ALL_MOVES,
    Move,
    MoveParseError,
    MoveSequence,
    format_moves,
    inverse,
    parse_moves,
    random_scramble,
    simplify,
)
from .phases import (
    PHASE_COUNT,
    PhaseSpec,
    describe,
    generators,
    is_reduced,
    phase_spec,
    predicate,
)
from .search import (
    SearchConfig,
    Solution,
    SolveError,
    phase_search,
    simplify_boundaries,
    solve,
    solve_relaxed,
    successors,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_MOVES",
    "CubeState",
    "DistanceTable",
    "InvalidStateError",
    "Move",
    "MoveParseError",
    "MoveSequence",
    "PHASE_COUNT",
    "PhaseSpec",
    "SOLVED",
    "SearchConfig",
    "Solution",
    "SolveError",
    "ValidationReport",
    "anchor_state",
    "apply_move",
    "apply_sequence",
    "build_distance_tables",
    "count_configurations",
    "describe",
    "format_moves",
    "format_state",
    "generators",
    "inverse",
    "is_reduced",
    "is_solved",
    "parse_moves",
    "parse_state",
    "phase_search",
    "phase_spec",
    "pigeonhole_bound",
    "predicate",
    "random_scramble",
    "simplify",
    "simplify_boundaries",
    "solve",
    "solve_relaxed",
    "successors",
    "twist_distance",
    "validate",
]
