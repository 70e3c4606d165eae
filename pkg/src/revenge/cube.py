"""Cube state: permutation/orientation arrays, the 96-sticker text format,
validation, and the exact configuration count.

A state holds four read-only tuples:

* ``corner_perm[slot]``  - which corner piece occupies the slot (0..7,
  piece ids are home slots)
* ``corner_ori[slot]``   - 0..2, how far the piece's U/D sticker is rotated
  clockwise from the slot's U/D facelet
* ``edge_perm[slot]``    - which of the 24 wing pieces occupies the slot;
  wings have no orientation because each one fits a slot in exactly one way
* ``centers[slot]``      - the face color shown at the slot; center pieces
  of one color are indistinguishable, so color is the whole state

States are immutable values; every operation returns a new state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Tuple

from . import _model as _m
from .moves import Move, MoveSequence

__all__ = [
    "CubeState",
    "SOLVED",
    "ValidationReport",
    "InvalidStateError",
    "apply_move",
    "apply_sequence",
    "validate",
    "is_solved",
    "render_facelets",
    "format_state",
    "parse_state",
    "anchor_state",
    "count_configurations",
    "pigeonhole_bound",
]


@dataclass(frozen=True)
class CubeState:
    corner_perm: Tuple[int, ...]
    corner_ori: Tuple[int, ...]
    edge_perm: Tuple[int, ...]
    centers: Tuple[int, ...]

    def __post_init__(self):
        if (
            len(self.corner_perm) != 8
            or len(self.corner_ori) != 8
            or len(self.edge_perm) != 24
            or len(self.centers) != 24
        ):
            raise ValueError("bad state array lengths")


SOLVED = CubeState(
    corner_perm=tuple(range(8)),
    corner_ori=(0,) * 8,
    edge_perm=tuple(range(24)),
    centers=_m.SOLVED_CENTERS,
)


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: Tuple[str, ...]


class InvalidStateError(ValueError):
    def __init__(self, violations):
        super().__init__("; ".join(violations))
        self.violations = tuple(violations)


def apply_move(state: CubeState, move: Move) -> CubeState:
    m = move.id
    c_src, c_od = _m.C_SRC[m], _m.C_OD[m]
    e_src, z_src = _m.E_SRC[m], _m.Z_SRC[m]
    cp, co = state.corner_perm, state.corner_ori
    return CubeState(
        corner_perm=tuple(cp[c_src[i]] for i in range(8)),
        corner_ori=tuple((co[c_src[i]] + c_od[i]) % 3 for i in range(8)),
        edge_perm=tuple(state.edge_perm[e_src[i]] for i in range(24)),
        centers=tuple(state.centers[z_src[i]] for i in range(24)),
    )


def apply_sequence(state: CubeState, seq: Iterable[Move]) -> CubeState:
    for m in seq:
        state = apply_move(state, m)
    return state


def validate(state: CubeState) -> ValidationReport:
    """Check every state invariant; the report names each failure."""
    violations: List[str] = []
    if sorted(state.corner_perm) != list(range(8)):
        violations.append("corner permutation is not a bijection on 8 slots")
    if sorted(state.edge_perm) != list(range(24)):
        violations.append("edge permutation is not a bijection on 24 slots")
    if any(o not in (0, 1, 2) for o in state.corner_ori):
        violations.append("corner orientation values outside 0..2")
    elif sum(state.corner_ori) % 3 != 0:
        violations.append("corner orientation sum is not 0 mod 3")
    for color in range(6):
        n = sum(1 for c in state.centers if c == color)
        if n != 4:
            violations.append(
                f"center color {_m.FACE_CHARS[color]} appears {n} times, expected 4"
            )
    return ValidationReport(valid=not violations, violations=tuple(violations))


def render_facelets(state: CubeState) -> List[int]:
    """Face color of each of the 96 facelets."""
    colors = [-1] * 96
    for slot in range(8):
        piece = state.corner_perm[slot]
        ori = state.corner_ori[slot]
        home = _m.CORNER_FACELETS[piece]
        here = _m.CORNER_FACELETS[slot]
        for k in range(3):
            colors[here[(k + ori) % 3]] = _m.FACE_OF_FACELET[home[k]]
    for slot in range(24):
        piece = state.edge_perm[slot]
        arr = _m.WING_ARR[piece][slot]
        home = _m.EDGE_FACELETS[piece]
        here = _m.EDGE_FACELETS[slot]
        for k in range(2):
            colors[here[k ^ arr]] = _m.FACE_OF_FACELET[home[k]]
    for slot in range(24):
        colors[_m.CENTER_FACELET[slot]] = state.centers[slot]
    return colors


def is_solved(state: CubeState) -> bool:
    """True when every face shows a single color (the solved arrangement in
    whichever of the 24 color schemes the state is expressed)."""
    colors = render_facelets(state)
    return all(
        colors[16 * f + i] == colors[16 * f] for f in range(6) for i in range(16)
    )


def format_state(state: CubeState) -> str:
    """96 sticker letters, six lines of sixteen, faces in U R F D L B order."""
    colors = render_facelets(state)
    lines = []
    for f in range(6):
        lines.append("".join(_m.FACE_CHARS[c] for c in colors[16 * f : 16 * f + 16]))
    return "\n".join(lines)


_CORNER_HOME_COLORS = tuple(
    tuple(_m.FACE_OF_FACELET[f] for f in tri) for tri in _m.CORNER_FACELETS
)
_EDGE_HOME_COLORS = tuple(
    tuple(_m.FACE_OF_FACELET[f] for f in pair) for pair in _m.EDGE_FACELETS
)
_EDGE_BY_COLORSET: dict = {}
for _w, _pair in enumerate(_EDGE_HOME_COLORS):
    _EDGE_BY_COLORSET.setdefault(frozenset(_pair), []).append(_w)


def _parse_facelets(colors: List[int]) -> CubeState:
    violations: List[str] = []
    corner_perm = [-1] * 8
    corner_ori = [0] * 8
    for slot in range(8):
        tri = tuple(colors[f] for f in _m.CORNER_FACELETS[slot])
        found = False
        for piece, home in enumerate(_CORNER_HOME_COLORS):
            for ori in range(3):
                if (tri[ori], tri[(ori + 1) % 3], tri[(ori + 2) % 3]) == home:
                    corner_perm[slot] = piece
                    corner_ori[slot] = ori
                    found = True
                    break
            if found:
                break
        if not found:
            name = "".join(_m.FACE_CHARS[c] for c in tri)
            violations.append(
                f"stickers {name} at corner {_m.CORNER_NAMES[slot]} form no corner piece"
            )
    edge_perm = [-1] * 24
    for slot in range(24):
        duo = tuple(colors[f] for f in _m.EDGE_FACELETS[slot])
        candidates = _EDGE_BY_COLORSET.get(frozenset(duo), ())
        for piece in candidates:
            arr = _m.WING_ARR[piece][slot]
            home = _EDGE_HOME_COLORS[piece]
            if duo[arr] == home[0] and duo[1 ^ arr] == home[1]:
                edge_perm[slot] = piece
                break
        if edge_perm[slot] == -1:
            name = "".join(_m.FACE_CHARS[c] for c in duo)
            violations.append(f"stickers {name} at edge slot {slot} fit no wing piece")
    centers = tuple(colors[_m.CENTER_FACELET[s]] for s in range(24))
    if violations:
        raise InvalidStateError(violations)
    state = CubeState(tuple(corner_perm), tuple(corner_ori), tuple(edge_perm), centers)
    report = validate(state)
    if not report.valid:
        raise InvalidStateError(report.violations)
    return state


def parse_state(text: str) -> CubeState:
    """Parse the 96-character format (whitespace ignored), validating fully."""
    raw = "".join(text.split())
    if len(raw) != 96:
        raise InvalidStateError([f"expected 96 sticker characters, got {len(raw)}"])
    try:
        colors = [_m.FACE_CHARS.index(ch) for ch in raw]
    except ValueError:
        bad = next(ch for ch in raw if ch not in _m.FACE_CHARS)
        raise InvalidStateError([f"unknown color letter {bad!r}"]) from None
    return _parse_facelets(colors)


def anchor_state(state: CubeState) -> Tuple[CubeState, Tuple[int, ...]]:
    """Re-express a state in the color scheme designated by its own DBL
    corner: the three stickers of the piece sitting in the down-back-left
    corner name the D, B and L colors, and opposite faces follow.

    Returns the re-colored state plus the color permutation that was
    applied (``new_color = perm[old_color]``).  Solutions computed on the
    anchored state apply verbatim to the original one, because recoloring
    commutes with every move.
    """
    colors = render_facelets(state)
    tri = _m.CORNER_FACELETS[_m.DBL_CORNER]
    # tri is ordered (y-facelet, then clockwise): for DBL that is D, B, L.
    d_col = colors[tri[0]]
    faces = tuple(_m.FACE_OF_FACELET[f] for f in tri)
    assert faces == (_m.D, _m.B, _m.L)
    b_col, l_col = colors[tri[1]], colors[tri[2]]
    perm = [-1] * 6
    perm[d_col] = _m.D
    perm[b_col] = _m.B
    perm[l_col] = _m.L
    perm[_m.OPPOSITE_FACE[d_col]] = _m.U
    perm[_m.OPPOSITE_FACE[b_col]] = _m.F
    perm[_m.OPPOSITE_FACE[l_col]] = _m.R
    if sorted(perm) != list(range(6)):
        raise InvalidStateError(
            ["down-back-left corner stickers do not define a color scheme"]
        )
    recolored = [perm[c] for c in colors]
    return _parse_facelets(recolored), tuple(perm)


def count_configurations() -> int:
    """Exact number of distinguishable configurations.

    8 corners permute freely and carry 3 orientations with one forced by
    the rest; the 24 wings permute freely; the 24 centers permute freely
    but the four of each color are interchangeable; and with no fixed
    centers the whole-cube orientation absorbs a factor of 24.
    """
    numerator = (
        math.factorial(8)
        * 3**7
        * math.factorial(24)
        * math.factorial(24)
    )
    denominator = math.factorial(4) ** 6 * 24
    assert numerator % denominator == 0
    return numerator // denominator


def pigeonhole_bound(total: int) -> int:
    """Smallest n with 36 * 24**(n-1) >= total, by exact integer arithmetic.

    36 twists are available for the first move of a sequence and at most 24
    lead to distinct successors afterward, so any move count n with
    36 * 24**(n-1) below the configuration count is too small to reach
    everything: some configuration needs at least this many twists.
    """
    if total < 1:
        raise ValueError("total must be >= 1")
    n = 1
    reach = 36
    while reach < total:
        n += 1
        reach *= 24
    return n
