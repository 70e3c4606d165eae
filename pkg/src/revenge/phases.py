"""The eight solving phases: allowed move sets and goal predicates.

Solving runs through eight nested restrictions of the allowed twists.  Each
phase searches with the moves of the row above its target and stops when
the state satisfies the target's goal predicate:

    phase 1: all 36 twists        -> left/right center colors confined
    phase 2: f,b,u,d half only    -> all centers on their axis pair, wing
                                     slot classes restored, wing permutation
                                     even
    phase 3: + R,L half only      -> centers solvable by inner half turns,
                                     four complete edge pairs in the middle
                                     layer
    phase 4: + F,B half, no u/d   -> full reduction (everything paired,
                                     centers done, parities consistent)
    phase 5: outer moves only     -> every edge pair oriented for a cube
                                     that may no longer quarter-turn R/L
    phase 6: + R,L half only      -> corners oriented, middle-layer pairs
                                     home
    phase 7: + F,B half only      -> solvable by half turns alone
    phase 8: half turns only      -> solved

The first four phases work on raw wing slots; outer x-axis quarter turns do
not preserve the wing-slot classes those goals are phrased in, so goals 4
and up are phrased purely in reduced-cube terms (pairs, pair orientation,
parities).  Goal 3's center condition and goal 7 are exact reachable-set
memberships computed once and cached (see :mod:`revenge.tables`).

Predicates read the state's colors literally.  States supplied in an
arbitrary color scheme should be re-anchored first
(:func:`revenge.cube.anchor_state`); the solver does this on entry.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, FrozenSet, Optional, Tuple

from . import _model as _m
from .cube import SOLVED, CubeState
from .moves import Move, parse_moves

__all__ = [
    "PHASE_COUNT",
    "PhaseSpec",
    "generators",
    "target_moves",
    "predicate",
    "is_reduced",
    "phase_spec",
    "describe",
]

PHASE_COUNT = 8

# Allowed moves per phase; row i (0-based) is the move set searched during
# phase i+1, row i+1 is the group its goal lands in.  A bare letter allows
# all three turns of the slice, a letter with 2 only the half turn.
_CHAIN = (
    "R L F B U D r l f b u d",
    "R L F B U D r l f2 b2 u2 d2",
    "R2 L2 F B U D r2 l2 f2 b2 u2 d2",
    "R2 L2 F2 B2 U D r2 l2 f2 b2",
    "R L F B U D",
    "R2 L2 F B U D",
    "R2 L2 F2 B2 U D",
    "R2 L2 F2 B2 U2 D2",
)

_LETTER_SLICE = {
    _m.LAYER_LETTERS[ax][lay]: (ax, lay) for ax in range(3) for lay in range(4)
}


def _expand(spec: str) -> Tuple[Move, ...]:
    out = []
    for token in spec.split():
        if token.endswith("2"):
            axis, layer = _LETTER_SLICE[token[:-1]]
            out.append(Move(axis, layer, 2))
        else:
            axis, layer = _LETTER_SLICE[token]
            out.extend(Move(axis, layer, t) for t in (1, 2, 3))
    return tuple(sorted(out))


_MOVE_SETS = tuple(_expand(row) for row in _CHAIN)


def _check_phase(phase: int) -> None:
    if not 1 <= phase <= PHASE_COUNT:
        raise ValueError(f"phase must be 1..{PHASE_COUNT}, got {phase}")


def generators(phase: int) -> Tuple[Move, ...]:
    """The moves available while searching the given phase."""
    _check_phase(phase)
    return _MOVE_SETS[phase - 1]


def target_moves(phase: int) -> Tuple[Move, ...]:
    """The moves that remain available once the phase's goal is reached
    (empty for phase 8, whose goal is the solved state)."""
    _check_phase(phase)
    return _MOVE_SETS[phase] if phase < PHASE_COUNT else ()


# --------------------------------------------------------------------------
# Structure tables derived from the move model
# --------------------------------------------------------------------------

# Wing slot classes: the two 12-slot orbits that remain separate while all
# inner slices are limited to half turns.  Inner quarter turns exchange the
# classes; so do outer x-axis quarter turns, which is why these classes only
# appear in the goals of phases 2 and 3.
WING_CLASS: Tuple[int, ...] = _m.slot_orbits([m.id for m in _MOVE_SETS[2]])
assert sorted(WING_CLASS).count(0) == 12 and len(set(WING_CLASS)) == 2
for _lo, _hi in _m.POSITIONS:
    assert WING_CLASS[_lo] != WING_CLASS[_hi]

CLASS0_SLOTS = tuple(s for s in range(24) if WING_CLASS[s] == 0)
CLASS1_SLOTS = tuple(s for s in range(24) if WING_CLASS[s] == 1)
CLASS_INDEX = tuple(
    (CLASS0_SLOTS if WING_CLASS[s] == 0 else CLASS1_SLOTS).index(s)
    for s in range(24)
)
# Class-0 and class-1 wing of each edge position (wing ids are home slots).
PAIR_WING0 = tuple(lo if WING_CLASS[lo] == 0 else hi for lo, hi in _m.POSITIONS)
PAIR_WING1 = tuple(hi if WING_CLASS[lo] == 0 else lo for lo, hi in _m.POSITIONS)

# Pair-orientation components: placements of one complete pair, as
# (position, assignment bit), split in two orbits of 12 when x-axis outer
# quarter turns are forbidden.  A pair placed in the component of its home
# placement is "oriented"; x-axis outer quarter turns toggle the component.
_PAIR_COMP = _m.pair_components([m.id for m in _MOVE_SETS[5]])
assert len(set(_PAIR_COMP.values())) == 2
for _q in range(12):
    assert _PAIR_COMP[(_q, 0)] != _PAIR_COMP[(_q, 1)]

# PAIR_FLIPPED[w][s]: with wing w in slot s and its partner beside it, is
# the pair out of its home orientation component?  Defined for all 24*24
# placements; both wings of a placed pair agree on the value.
PAIR_FLIPPED: Tuple[Tuple[int, ...], ...] = tuple(
    tuple(
        int(
            _PAIR_COMP[
                (
                    _m.POSITION_OF_SLOT[s],
                    int(_m.IS_HI_SLOT[w] != _m.IS_HI_SLOT[s]),
                )
            ]
            != _PAIR_COMP[(_m.POSITION_OF_SLOT[w], 0)]
        )
        for s in range(24)
    )
    for w in range(24)
)

_LR_COLORS = frozenset((_m.L, _m.R))
_FB_COLORS = frozenset((_m.F, _m.B))
_UD_COLORS = frozenset((_m.U, _m.D))


def center_config_index(centers) -> Optional[int]:
    """Rank of an axis-separated center arrangement, or None.

    The 343000-point configuration space used by the phase 3 and 4 center
    tables: which four of the eight x-face slots hold the L color, and
    likewise for F among the z faces and U among the y faces.
    """
    idx = 0
    for slots, first, pair in (
        (_m.LR_CENTER_SLOTS, _m.L, _LR_COLORS),
        (_m.FB_CENTER_SLOTS, _m.F, _FB_COLORS),
        (_m.UD_CENTER_SLOTS, _m.U, _UD_COLORS),
    ):
        rank = 0
        k = 0
        for i, s in enumerate(slots):
            c = centers[s]
            if c not in pair:
                return None
            if c == first:
                k += 1
                rank += _comb(i, k)
        if k != 4:
            return None
        idx = idx * 70 + rank
    return idx


def _comb(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def _corner_parity(cp) -> int:
    return _m.perm_parity(cp)


def _all_paired(state: CubeState) -> bool:
    ep = state.edge_perm
    return all(
        _m.PARTNER_WING[ep[lo]] == ep[hi] for lo, hi in _m.POSITIONS
    )


def _pair_positions_parity(state: CubeState) -> int:
    ep = state.edge_perm
    perm = [_m.HOME_POSITION[ep[lo]] for lo, _hi in _m.POSITIONS]
    return _m.perm_parity(perm)


def _flipped_pair_count(state: CubeState) -> int:
    ep = state.edge_perm
    return sum(PAIR_FLIPPED[ep[lo]][lo] for lo, _hi in _m.POSITIONS)


def _goal_1(state: CubeState) -> bool:
    return all(state.centers[s] in _LR_COLORS for s in _m.LR_CENTER_SLOTS)


def _goal_2(state: CubeState) -> bool:
    if not _goal_1(state):
        return False
    if not all(state.centers[s] in _FB_COLORS for s in _m.FB_CENTER_SLOTS):
        return False
    if not all(state.centers[s] in _UD_COLORS for s in _m.UD_CENTER_SLOTS):
        return False
    ep = state.edge_perm
    if any(WING_CLASS[ep[s]] != WING_CLASS[s] for s in range(24)):
        return False
    return _m.perm_parity(ep) == 0


def _goal_3(state: CubeState) -> bool:
    if not _goal_2(state):
        return False
    from . import tables

    idx = center_config_index(state.centers)
    if idx is None or not tables.shared().center_member[idx]:
        return False
    ep = state.edge_perm
    return all(
        _m.PARTNER_WING[ep[_m.POSITIONS[q][0]]] == ep[_m.POSITIONS[q][1]]
        for q in _m.MID_POSITIONS
    )


def _goal_4(state: CubeState) -> bool:
    if not _all_paired(state):
        return False
    if state.centers != _m.SOLVED_CENTERS:
        return False
    if _corner_parity(state.corner_perm) != _pair_positions_parity(state):
        return False
    return _flipped_pair_count(state) % 2 == 0


def _goal_5(state: CubeState) -> bool:
    return _goal_4(state) and _flipped_pair_count(state) == 0


def _goal_6(state: CubeState) -> bool:
    if not _goal_5(state):
        return False
    if any(o != 0 for o in state.corner_ori):
        return False
    ep = state.edge_perm
    return all(
        _m.HOME_POSITION[ep[_m.POSITIONS[q][0]]] in _m.MID_POSITIONS
        for q in _m.MID_POSITIONS
    )


def _goal_7(state: CubeState) -> bool:
    if not _goal_6(state):
        return False
    from . import tables

    return tables.shared().half_turn_reachable(state)


def _goal_8(state: CubeState) -> bool:
    return state == SOLVED


_PREDICATES: Tuple[Callable[[CubeState], bool], ...] = (
    _goal_1,
    _goal_2,
    _goal_3,
    _goal_4,
    _goal_5,
    _goal_6,
    _goal_7,
    _goal_8,
)


def predicate(phase: int, state: CubeState) -> bool:
    """True when the state has reached the given phase's goal.

    Colors are read literally; anchor the state first if it came from an
    arbitrary frame.
    """
    _check_phase(phase)
    return _PREDICATES[phase - 1](state)


def is_reduced(state: CubeState) -> bool:
    """Everything paired, centers done, parities consistent: the cube now
    behaves as a 3x3x3 under outer moves alone."""
    return predicate(4, state)


# --------------------------------------------------------------------------
# Phase specs
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PhaseSpec:
    """One phase: its id, the moves it may use, its goal test, and which
    pieces its distance heuristic sums over."""

    id: int
    generators: Tuple[Move, ...]
    predicate: Callable[[CubeState], bool] = field(repr=False)
    corner_pieces: FrozenSet[int]
    edge_pieces: FrozenSet[int]
    center_colors: FrozenSet[int]


_ALL = frozenset(range(24))
_ALL_CORNERS = frozenset(range(8))
_NO: FrozenSet[int] = frozenset()
_ALL_COLORS = frozenset(range(6))

_PIECE_SETS = (
    (_NO, _NO, _LR_COLORS),
    (_NO, _ALL, _ALL_COLORS),
    (_NO, _ALL, _ALL_COLORS),
    (_NO, _ALL, _ALL_COLORS),
    (_NO, _ALL, _NO),
    (_ALL_CORNERS, _ALL, _NO),
    (_ALL_CORNERS, _ALL, _NO),
    (_ALL_CORNERS, _ALL, _ALL_COLORS),
)


def phase_spec(phase: int) -> PhaseSpec:
    _check_phase(phase)
    corners, edges, colors = _PIECE_SETS[phase - 1]
    return PhaseSpec(
        id=phase,
        generators=generators(phase),
        predicate=_PREDICATES[phase - 1],
        corner_pieces=corners,
        edge_pieces=edges,
        center_colors=colors,
    )


_GOAL_SUMMARIES = (
    "left and right face centers hold only the left/right colors",
    "every center color sits on its own or the opposite face; wing slot"
    " classes match and the wing permutation is even",
    "centers are arranged so inner half turns can finish them; four"
    " complete edge pairs occupy the middle layer",
    "reduction: all twelve edge pairs complete, centers solved, corner and"
    " edge-pair permutation parities match, flipped-pair count even",
    "every edge pair is oriented (solvable without R/L quarter turns)",
    "corners oriented; the four middle-layer pairs are in the middle layer",
    "reachable from solved by half turns alone (corner/edge permutation"
    " classes and parities all consistent)",
    "solved",
)


def describe(phase: int) -> str:
    """Human-readable summary of one phase for the CLI."""
    _check_phase(phase)
    gens = " ".join(str(m) for m in generators(phase))
    lines = [
        f"phase {phase}",
        f"  moves allowed ({len(generators(phase))}): {gens}",
        f"  goal: {_GOAL_SUMMARIES[phase - 1]}",
    ]
    if phase < PHASE_COUNT:
        nxt = " ".join(str(m) for m in target_moves(phase))
        lines.append(f"  moves that remain afterward: {nxt}")
    return "\n".join(lines)
