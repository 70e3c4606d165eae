"""Admissible twist-distance bound built from per-piece tables.

For each phase, every piece that the phase's goal constrains gets a table
of minimal twist counts: how many of the phase's allowed moves are needed
to carry that piece alone from its current placement to one it occupies in
some goal state.  Per-piece counts are summed per piece class and scaled
by the most pieces of that class one twist can disturb (4 corners, 8 wing
slots, 8 center slots); the bound is the largest scaled term.  Any single
twist moves each piece at most one step, so the bound never exceeds the
true remaining distance.

Summed per-piece counts cannot see joint conditions (pairing, permutation
parity), so they can be zero off-goal; the reported distance is therefore
floored at one whenever the goal predicate fails, keeping "zero exactly on
goal states" true while staying admissible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import phases as _ph
from . import tables as _tables
from .cube import CubeState

__all__ = ["DistanceTable", "build_distance_tables", "twist_distance"]


@dataclass(frozen=True)
class DistanceTable:
    """Per-piece minimal twist counts for one phase.

    corner[piece, slot, ori], edge[piece, slot] and center[color, slot] are
    exact single-piece breadth-first distances under the phase's move set;
    entries are zero on goal placements and 99 marks placements the phase's
    moves cannot reach at all (they never occur once the previous phases
    have run).
    """

    phase: int
    corner: np.ndarray
    edge: np.ndarray
    center: np.ndarray


def build_distance_tables(phase: int) -> DistanceTable:
    """Build the per-piece tables for one phase from scratch (deterministic
    single-piece BFS; the disk cache in :mod:`revenge.tables` stores the
    same arrays)."""
    pt = _tables.build_phase_tables(phase)
    return DistanceTable(
        phase=phase, corner=pt.corner_dist, edge=pt.edge_dist, center=pt.center_dist
    )


def _from_phase_tables(pt: _tables.PhaseTables) -> DistanceTable:
    return DistanceTable(
        phase=pt.phase, corner=pt.corner_dist, edge=pt.edge_dist, center=pt.center_dist
    )


def piece_sums(state: CubeState, tables: DistanceTable):
    """Raw per-class sums (corners, edges, centers) of per-piece distances."""
    corner = int(
        sum(
            tables.corner[state.corner_perm[s], s, state.corner_ori[s]]
            for s in range(8)
        )
    )
    edge = int(sum(tables.edge[state.edge_perm[s], s] for s in range(24)))
    center = int(sum(tables.center[state.centers[s], s] for s in range(24)))
    return corner, edge, center


def twist_distance(
    state: CubeState, phase: int, tables: Optional[DistanceTable] = None
) -> Fraction:
    """Lower bound, in twists of the phase's move set, on the distance from
    `state` to the phase goal.  Exactly zero on goal states."""
    if tables is None:
        tables = _from_phase_tables(_tables.shared().phases[phase])
    elif tables.phase != phase:
        raise ValueError(f"tables built for phase {tables.phase}, not {phase}")
    c, e, z = piece_sums(state, tables)
    bound = max(Fraction(c, 4), Fraction(e, 8), Fraction(z, 8))
    if bound == 0:
        return Fraction(0) if _ph.predicate(phase, state) else Fraction(1)
    return bound
