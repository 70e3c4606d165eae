"""Slice twists, WCA notation, and sequence algebra.

A move is one of the 36 slice twists: 3 axes x 4 layers x 3 turn amounts.
Turn amounts are stored relative to the axis's positive face (R, U, F), so
``L`` and ``R`` quarter turns are opposite rotations about x internally;
the letter-level direction convention is applied only while parsing and
formatting.  Move values are immutable and interned in :data:`ALL_MOVES`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

from . import _model as _m

__all__ = [
    "Move",
    "MoveSequence",
    "ALL_MOVES",
    "MoveParseError",
    "parse_moves",
    "format_moves",
    "inverse",
    "simplify",
    "allowed_after",
    "random_scramble",
]


class MoveParseError(ValueError):
    """A token in a move string is not a legal WCA single-slice twist."""

    def __init__(self, token: str, position: int):
        super().__init__(f"bad move token {token!r} at position {position}")
        self.token = token
        self.position = position


@dataclass(frozen=True, order=True)
class Move:
    """One twist of one slice.

    axis: 0 = x (L..R), 1 = y (D..U), 2 = z (B..F)
    layer: 0..3 along the axis; 0 and 3 are outer slices
    turn: quarter turns clockwise viewed from the axis's positive face
          (1 = quarter, 2 = half, 3 = counter-clockwise quarter)
    """

    axis: int
    layer: int
    turn: int

    def __post_init__(self):
        if self.axis not in (0, 1, 2) or self.layer not in (0, 1, 2, 3):
            raise ValueError(f"bad slice ({self.axis},{self.layer})")
        if self.turn not in (1, 2, 3):
            raise ValueError(f"bad turn {self.turn}")

    @property
    def id(self) -> int:
        return _m.move_id(self.axis, self.layer, self.turn)

    @property
    def letter(self) -> str:
        return _m.LAYER_LETTERS[self.axis][self.layer]

    @property
    def is_outer(self) -> bool:
        return self.layer in (0, 3)

    @property
    def inverse(self) -> "Move":
        return Move(self.axis, self.layer, 4 - self.turn if self.turn != 2 else 2)

    def __str__(self) -> str:
        positive_side = self.layer >= 2
        shown = self.turn if positive_side else (4 - self.turn if self.turn != 2 else 2)
        return self.letter + {1: "", 2: "2", 3: "'"}[shown]

    def __repr__(self) -> str:
        return f"Move({str(self)!r})"


MoveSequence = Tuple[Move, ...]

ALL_MOVES: Tuple[Move, ...] = tuple(
    Move(_m.MOVE_AXIS[i], _m.MOVE_LAYER[i], _m.MOVE_TURN[i]) for i in range(36)
)

_LETTER_TO_SLICE = {
    _m.LAYER_LETTERS[ax][lay]: (ax, lay) for ax in range(3) for lay in range(4)
}


def move_from_id(mid: int) -> Move:
    return ALL_MOVES[mid]


def parse_moves(text: str) -> MoveSequence:
    """Parse a whitespace-separated WCA move string.

    Raises :class:`MoveParseError` naming the first offending token.
    """
    out = []
    for pos, token in enumerate(text.split()):
        letter, suffix = token[0], token[1:]
        if letter not in _LETTER_TO_SLICE or suffix not in ("", "2", "'"):
            raise MoveParseError(token, pos)
        axis, layer = _LETTER_TO_SLICE[letter]
        shown = {"": 1, "2": 2, "'": 3}[suffix]
        positive_side = layer >= 2
        turn = shown if positive_side else (4 - shown if shown != 2 else 2)
        out.append(Move(axis, layer, turn))
    return tuple(out)


def format_moves(seq: Iterable[Move]) -> str:
    """Inverse of :func:`parse_moves`, single-space separated."""
    return " ".join(str(m) for m in seq)


def inverse(seq: Iterable[Move]) -> MoveSequence:
    """Reverse the order and the direction of every move."""
    return tuple(m.inverse for m in reversed(tuple(seq)))


def simplify(seq: Iterable[Move]) -> MoveSequence:
    """Canonical fixed point of merging and reordering.

    Adjacent moves of the same slice merge (and cancel when the turns sum
    to a full rotation); adjacent moves on distinct layers of one axis
    commute and are put in ascending layer order.  The result induces the
    same transformation as the input and is never longer.
    """
    out = list(seq)
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(out) - 1:
            a, b = out[i], out[i + 1]
            if a.axis == b.axis and a.layer == b.layer:
                t = (a.turn + b.turn) % 4
                del out[i : i + 2]
                if t:
                    out.insert(i, Move(a.axis, a.layer, t))
                changed = True
                i = max(i - 1, 0)
            elif a.axis == b.axis and a.layer > b.layer:
                out[i], out[i + 1] = b, a
                changed = True
                i += 1
            else:
                i += 1
    return tuple(out)


def allowed_after(move: Move, last: Optional[Move]) -> bool:
    """Canonical successor rule shared by the search and the scrambler.

    Never twist the slice that was just twisted; among slices on the same
    axis, allow only strictly increasing layer index so each set of
    commuting moves is generated in exactly one order.
    """
    if last is None:
        return True
    if move.axis != last.axis:
        return True
    return move.layer > last.layer


def random_scramble(n: int, seed) -> MoveSequence:
    """A reproducible n-move scramble that is its own simplify fixed point."""
    if n < 0:
        raise ValueError("move count must be >= 0")
    rng = random.Random(seed)
    out: list[Move] = []
    last = None
    for _ in range(n):
        candidates = [m for m in ALL_MOVES if allowed_after(m, last)]
        last = rng.choice(candidates)
        out.append(last)
    return tuple(out)
