"""Two-level solver: iterative deepening over each phase's depth, with a
depth-limited DFS (pruned by the twist-distance bound and exact auxiliary
tables) at the bottom.

The outer loop runs the eight phases in order.  For each phase it retries
the depth-limited search at depth 0, 1, 2, ... until a sequence reaching
the phase's goal is found, so each phase's sequence is as short as that
phase allows from its incoming position.  Successors follow the canonical
rule (never the same slice twice in a row; same-axis runs only in
ascending layer order), which reaches every state some shortest way while
generating each set of commuting twists once.

Every solve self-verifies: the goal predicate is checked as each phase
ends, and the concatenated and boundary-simplified sequences are both
applied to the original position before a Solution is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import _kernels as _k
from . import phases as _ph
from . import tables as _tables
from .cube import (
    CubeState,
    InvalidStateError,
    anchor_state,
    apply_sequence,
    is_solved,
    validate,
)
from .moves import ALL_MOVES, Move, MoveSequence, allowed_after, simplify

__all__ = [
    "SearchConfig",
    "Solution",
    "SolveError",
    "successors",
    "phase_search",
    "solve",
    "solve_relaxed",
    "simplify_boundaries",
]


class SolveError(RuntimeError):
    """A phase hit its depth cap or the node budget; with default limits
    this indicates corrupted tables or an unreachable goal, not bad luck."""

    def __init__(self, phase: int, reason: str):
        super().__init__(f"phase {phase}: {reason}")
        self.phase = phase
        self.reason = reason


@dataclass(frozen=True)
class SearchConfig:
    depth_caps: Tuple[int, ...] = (25,) * 8
    node_budget: Optional[int] = None
    relax_offsets: Tuple[int, ...] = (0,) * 8
    use_heuristic: bool = True
    deterministic_order: bool = True
    max_alternatives: int = 16

    def __post_init__(self):
        if len(self.depth_caps) != 8 or any(c < 0 for c in self.depth_caps):
            raise ValueError("depth_caps must be 8 non-negative integers")
        if len(self.relax_offsets) != 8 or any(o < 0 for o in self.relax_offsets):
            raise ValueError("relax_offsets must be 8 non-negative integers")
        if self.max_alternatives < 1:
            raise ValueError("max_alternatives must be >= 1")


@dataclass(frozen=True)
class Solution:
    start: CubeState
    phases: Tuple[MoveSequence, ...]
    total: MoveSequence
    simplified_total: MoveSequence
    depths: Tuple[int, ...]
    node_counts: Tuple[int, ...]

    def verify(self) -> bool:
        if not is_solved(apply_sequence(self.start, self.total)):
            return False
        if len(self.simplified_total) > len(self.total):
            return False
        return is_solved(apply_sequence(self.start, self.simplified_total))


_SUCC_CACHE: Dict[int, Tuple[np.ndarray, np.ndarray]] = {}


def _succ_tables(phase: int) -> Tuple[np.ndarray, np.ndarray]:
    if phase not in _SUCC_CACHE:
        gens = _ph.generators(phase)
        flat: List[int] = []
        start = np.zeros(37, dtype=np.int32)
        for last in range(37):
            start[last] = len(flat)
            last_move = None if last == 36 else ALL_MOVES[last]
            for m in gens:  # ascending Move order = canonical order
                if allowed_after(m, last_move):
                    flat.append(m.id)
            flat.append(-1)
        _SUCC_CACHE[phase] = (np.array(flat, dtype=np.int8), start)
    return _SUCC_CACHE[phase]


def successors(phase: int, last: Optional[Move] = None) -> Tuple[Move, ...]:
    """The phase's generators filtered by the canonical-adjacency rule, in
    the fixed deterministic order (axis x<y<z, layer ascending, turn
    CW < half < CCW)."""
    return tuple(m for m in _ph.generators(phase) if allowed_after(m, last))


_DUMMY_I8_2D = np.zeros((1, 1), dtype=np.int8)
_DUMMY_U8 = np.zeros(1, dtype=np.uint8)
_DUMMY_U8_2D = np.zeros((1, 1), dtype=np.uint8)
_DUMMY_I8_1D = np.zeros(1, dtype=np.int8)
_DUMMY_U64 = np.zeros(1, dtype=np.uint64)


def _pack(ts: _tables.TableSet, phase: int):
    pt = ts.phases[phase]

    def nz(arr, dummy):
        return arr if arr.size else dummy

    return (
        pt.corner_dist,
        pt.edge_dist,
        pt.center_dist,
        nz(pt.pair_dist, _DUMMY_I8_2D),
        nz(pt.cfg_dist, _DUMMY_U8),
        nz(pt.cfg_member if phase == 3 else ts.phases[3].cfg_member, _DUMMY_U8),
        nz(pt.sticker_colors, _DUMMY_I8_1D),
        nz(pt.sticker_dist, _DUMMY_U8_2D),
        nz(pt.lr8_dist, _DUMMY_U8),
        nz(pt.udpair_dist, _DUMMY_U8),
        nz(pt.fbpair_dist, _DUMMY_U8),
        nz(pt.eo_dist, _DUMMY_U8),
        nz(pt.ori_dist, _DUMMY_U8),
        nz(pt.cperm_dist, _DUMMY_U8),
        nz(pt.slice_dist, _DUMMY_U8),
        nz(pt.pairperm_dist, _DUMMY_U8),
        nz(pt.squares_keys if phase == 7 else ts.phases[7].squares_keys, _DUMMY_U64),
    )


def _run(
    ts: _tables.TableSet,
    phase: int,
    arr: np.ndarray,
    depth: int,
    last_id: int,
    use_h: bool,
    budget: int,
    collect: int = 0,
):
    flat, start = _succ_tables(phase)
    path = np.empty(max(depth, 1), dtype=np.int8)
    stats = np.zeros(1, dtype=np.int64)
    out = np.empty((max(collect, 1), max(depth, 1)), dtype=np.int8)
    res = _k.search(
        phase,
        arr,
        depth,
        last_id,
        1 if use_h else 0,
        budget,
        flat,
        start,
        *_pack(ts, phase),
        path,
        stats,
        out,
        collect,
    )
    return res, path, out, int(stats[0])


def phase_search(
    phase: int,
    state: CubeState,
    depth: int,
    last: Optional[Move] = None,
    *,
    tables: Optional[_tables.TableSet] = None,
    config: Optional[SearchConfig] = None,
) -> Optional[MoveSequence]:
    """Depth-limited search for a sequence of exactly `depth` moves of the
    phase's generators reaching its goal (with no depth, success means the
    goal already holds).  Returns the first sequence in canonical order, or
    None when none exists within the depth."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    ts = tables if tables is not None else _tables.shared()
    config = config or SearchConfig()
    arr = _k.state_to_array(state)
    last_id = 36 if last is None else last.id
    budget = -1 if config.node_budget is None else config.node_budget
    res, path, _out, _n = _run(
        ts, phase, arr, depth, last_id, config.use_heuristic, budget
    )
    if res == -2:
        raise SolveError(phase, "node budget exhausted")
    if res < 0:
        return None
    return tuple(ALL_MOVES[int(path[i])] for i in range(depth))


def _solve_phases(
    anchored: CubeState,
    first_phase: int,
    config: SearchConfig,
    ts: _tables.TableSet,
    budget_left: Optional[int],
):
    seqs: List[MoveSequence] = []
    node_counts: List[int] = []
    arr = _k.state_to_array(anchored)
    state = anchored
    for phase in range(first_phase, 9):
        total_nodes = 0
        found = None
        for depth in range(config.depth_caps[phase - 1] + 1):
            budget = -1 if budget_left is None else budget_left - total_nodes
            res, path, _out, nodes = _run(
                ts, phase, arr, depth, 36, config.use_heuristic, budget
            )
            total_nodes += nodes
            if res == -2:
                raise SolveError(phase, "node budget exhausted")
            if res >= 0:
                found = tuple(ALL_MOVES[int(path[i])] for i in range(depth))
                break
        if found is None:
            raise SolveError(
                phase, f"no solution within depth cap {config.depth_caps[phase - 1]}"
            )
        if budget_left is not None:
            budget_left -= total_nodes
        state = apply_sequence(state, found)
        arr = _k.state_to_array(state)
        if not _ph.predicate(phase, state):
            raise SolveError(phase, "search returned a sequence missing the goal")
        seqs.append(found)
        node_counts.append(total_nodes)
    return seqs, node_counts, state


def solve(
    state: CubeState,
    config: Optional[SearchConfig] = None,
    *,
    tables: Optional[_tables.TableSet] = None,
) -> Solution:
    """Solve a position through all eight phases.

    The input may use any of the 24 color schemes; the scheme designated by
    the piece in its down-back-left corner is fixed once on entry and the
    returned moves bring every face to that scheme's color.  Each phase's
    sequence has minimal length for that phase given the position the
    previous phases produced.
    """
    config = config or SearchConfig()
    ts = tables if tables is not None else _tables.shared()
    report = validate(state)
    if not report.valid:
        raise InvalidStateError(report.violations)
    anchored, _perm = anchor_state(state)
    seqs, node_counts, final = _solve_phases(anchored, 1, config, ts, config.node_budget)
    total: MoveSequence = tuple(m for seq in seqs for m in seq)
    if not is_solved(final):
        raise SolveError(8, "final state failed verification")
    if not is_solved(apply_sequence(state, total)):
        raise SolveError(8, "solution failed verification on the input state")
    simplified = simplify(total)
    if not is_solved(apply_sequence(state, simplified)):
        raise SolveError(8, "simplified solution failed verification")
    return Solution(
        start=state,
        phases=tuple(seqs),
        total=total,
        simplified_total=simplified,
        depths=tuple(len(s) for s in seqs),
        node_counts=tuple(node_counts),
    )


def simplify_boundaries(solution: Solution) -> MoveSequence:
    """Merge/cancel moves across phase boundaries; the result is re-verified
    against the solution's start state and is never longer than the raw
    concatenation."""
    simplified = simplify(solution.total)
    if not is_solved(apply_sequence(solution.start, simplified)):
        raise SolveError(8, "simplified solution failed verification")
    return simplified


def _enumerate_phase(
    ts: _tables.TableSet,
    phase: int,
    state: CubeState,
    depth: int,
    limit: int,
) -> List[MoveSequence]:
    arr = _k.state_to_array(state)
    res, _path, out, _n = _run(ts, phase, arr, depth, 36, True, -1, collect=limit)
    if depth == 0:
        return [()] if res > 0 else []
    return [
        tuple(ALL_MOVES[int(out[k, i])] for i in range(depth)) for k in range(res)
    ]


def solve_relaxed(
    state: CubeState,
    config: SearchConfig,
    *,
    tables: Optional[_tables.TableSet] = None,
) -> Solution:
    """Baseline solve, then for every phase with a nonzero relaxation offset
    re-enumerate that phase's solutions up to `offset` twists beyond its
    minimum and keep whichever alternative yields the shortest simplified
    total downstream.  The baseline is among the enumerated candidates, so
    the result is never worse."""
    ts = tables if tables is not None else _tables.shared()
    base_config = replace(config, relax_offsets=(0,) * 8)
    best = solve(state, base_config, tables=tables)
    if all(o == 0 for o in config.relax_offsets):
        return best
    anchored, _perm = anchor_state(state)
    for phase in range(1, 9):
        offset = config.relax_offsets[phase - 1]
        if offset == 0:
            continue
        prefix = best.phases[: phase - 1]
        prefix_state = anchored
        for seq in prefix:
            prefix_state = apply_sequence(prefix_state, seq)
        base_depth = best.depths[phase - 1]
        candidates: List[MoveSequence] = []
        remaining = config.max_alternatives
        for depth in range(base_depth, base_depth + offset + 1):
            if remaining <= 0:
                break
            found = _enumerate_phase(ts, phase, prefix_state, depth, remaining)
            candidates.extend(found)
            remaining -= len(found)
        for alt in candidates:
            if alt == best.phases[phase - 1]:
                continue
            mid_state = apply_sequence(prefix_state, alt)
            if not _ph.predicate(phase, mid_state):
                continue
            try:
                tail_seqs, tail_nodes, final = _solve_phases(
                    mid_state, phase + 1, base_config, ts, base_config.node_budget
                )
            except SolveError:
                continue
            phases_all = prefix + (alt,) + tuple(tail_seqs)
            total = tuple(m for seq in phases_all for m in seq)
            simplified = simplify(total)
            if len(simplified) < len(best.simplified_total):
                if not is_solved(apply_sequence(state, total)):
                    continue
                best = Solution(
                    start=state,
                    phases=phases_all,
                    total=total,
                    simplified_total=simplified,
                    depths=tuple(len(s) for s in phases_all),
                    node_counts=best.node_counts[: phase - 1]
                    + (best.node_counts[phase - 1],)
                    + tuple(tail_nodes),
                )
    return best
