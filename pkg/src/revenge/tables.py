"""Precomputed distance tables and reachable-set memberships, with a
versioned binary cache.

Per phase this module builds:

* per-piece twist-distance tables (corner, wing, center sticker): breadth-
  first search over single-piece placements under the phase's allowed
  moves, seeded backward from the placements the piece can occupy in a
  goal state;
* exact auxiliary tables used only for search pruning: single-pair
  placement distances, center-configuration distances, pair-orientation /
  corner-orientation / corner-permutation / slice-assignment coordinates;
* two exact memberships: the center arrangements finishable by the phase-4
  move set (the phase 3 goal) and the states reachable by half turns alone
  (the phase 7 goal).

Every table is a deterministic BFS output, so rebuilding yields identical
bytes; the cache loader rejects any header mismatch and rebuilds.

Cache file layout (little endian): magic ``RV4T``, u16 format version,
u16 phase id, u16 section count; each section is a u8 name length, the
ASCII name, a u8 dtype code, a u8 rank, u32 dims, then the raw array data.
"""

from __future__ import annotations

import math
import os
import struct
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from numba import njit
from numba.typed import Dict as NumbaDict
from numba import types as nbtypes

from . import _model as _m
from . import phases as _ph

__all__ = [
    "PhaseTables",
    "TableSet",
    "build_phase_tables",
    "build_all",
    "save_phase_tables",
    "load_phase_tables",
    "default_cache_dir",
    "shared",
    "verify_cache",
]

CACHE_VERSION = 2
_MAGIC = b"RV4T"
UNREACHABLE = 99

FACT12 = math.factorial(12)

# ---------------------------------------------------------------------------
# numpy views of the move model
# ---------------------------------------------------------------------------

C_SRC = np.array(_m.C_SRC, dtype=np.int8)
C_OD = np.array(_m.C_OD, dtype=np.int8)
E_SRC = np.array(_m.E_SRC, dtype=np.int8)
Z_SRC = np.array(_m.Z_SRC, dtype=np.int8)
E_DST = np.array([_m.edge_slot_action(m) for m in range(36)], dtype=np.int8)
Z_DST = np.array([_m.center_slot_action(m) for m in range(36)], dtype=np.int8)

BINOM = np.zeros((26, 10), dtype=np.int64)
for _n in range(26):
    for _k in range(10):
        BINOM[_n, _k] = math.comb(_n, _k)

# multinomial (a+b+c)! / a!b!c! for two colors of four among sixteen slots
MULT448 = np.zeros((5, 5, 9), dtype=np.int64)
for _a in range(5):
    for _b in range(5):
        for _c in range(9):
            MULT448[_a, _b, _c] = math.factorial(_a + _b + _c) // (
                math.factorial(_a) * math.factorial(_b) * math.factorial(_c)
            )

MULT = np.zeros((5, 5, 5), dtype=np.int64)
for _a in range(5):
    for _b in range(5):
        for _c in range(5):
            MULT[_a, _b, _c] = math.factorial(_a + _b + _c) // (
                math.factorial(_a) * math.factorial(_b) * math.factorial(_c)
            )

_BLOCK_SLOTS = np.array(
    [_m.LR_CENTER_SLOTS, _m.FB_CENTER_SLOTS, _m.UD_CENTER_SLOTS], dtype=np.int8
)
# The sixteen center slots off the x faces, FB first then UD; closed under
# the phase-2 move set because only inner half turns leave a face and those
# map faces to their opposites.
SLOTS16 = np.array(
    tuple(_m.FB_CENTER_SLOTS) + tuple(_m.UD_CENTER_SLOTS), dtype=np.int8
)
POS_LO = np.array([lo for lo, _ in _m.POSITIONS], dtype=np.int8)
POS_HI = np.array([hi for _, hi in _m.POSITIONS], dtype=np.int8)
POSITION_OF_SLOT = np.array(_m.POSITION_OF_SLOT, dtype=np.int8)
HOME_POSITION = np.array(_m.HOME_POSITION, dtype=np.int8)
POSITION_AXIS = np.array(_m.POSITION_AXIS, dtype=np.int8)
SLICE_POSITIONS = np.array(
    [[q for q in range(12) if _m.POSITION_AXIS[q] == a] for a in range(3)],
    dtype=np.int8,
)


def _gen_ids(phase: int) -> List[int]:
    return [m.id for m in _ph.generators(phase)]


def _pos_dst(move_ids: Sequence[int]) -> np.ndarray:
    """Position-level destination maps for whole-pair (outer) moves."""
    out = np.empty((len(move_ids), 12), dtype=np.int8)
    for k, m in enumerate(move_ids):
        assert _m.pair_moves_whole(m)
        for q in range(12):
            out[k, q] = _m.POSITION_OF_SLOT[_m.edge_slot_action(m)[_m.POSITIONS[q][0]]]
    return out


def _eo_toggle(move_ids: Sequence[int]) -> np.ndarray:
    """Whether the pair at position q changes orientation component under
    each whole-pair move."""
    comp = _ph._PAIR_COMP
    out = np.empty((len(move_ids), 12), dtype=np.int8)
    for k, m in enumerate(move_ids):
        act = _m.pair_action(m)
        for q in range(12):
            q2, b2 = act[(q, 0)]
            out[k, q] = int(comp[(q2, b2)] != comp[(q, 0)])
            q2b, b2b = act[(q, 1)]
            assert int(comp[(q2b, b2b)] != comp[(q, 1)]) == out[k, q]
    return out


# ---------------------------------------------------------------------------
# numba BFS builders over coordinate spaces
# ---------------------------------------------------------------------------


@njit(cache=True)
def _cfg_bfs(seeds, zsrcs, block_slots, binom):
    size = 343000
    dist = np.full(size, 255, np.uint8)
    queue = np.empty(size, np.int32)
    tail = 0
    for i in range(seeds.shape[0]):
        s = seeds[i]
        if dist[s] == 255:
            dist[s] = 0
            queue[tail] = s
            tail += 1
    head = 0
    col = np.empty(24, np.int8)
    while head < tail:
        cur = queue[head]
        head += 1
        d = dist[cur]
        r0 = cur // 4900
        r1 = (cur // 70) % 70
        r2 = cur % 70
        rr = (r0, r1, r2)
        for b in range(3):
            for i in range(8):
                col[block_slots[b, i]] = 1
            rem = rr[b]
            for i in range(3, -1, -1):
                p = i
                while p + 1 < 8 and binom[p + 1, i + 1] <= rem:
                    p += 1
                col[block_slots[b, p]] = 0
                rem -= binom[p, i + 1]
        for mi in range(zsrcs.shape[0]):
            idx = 0
            for b in range(3):
                rank = 0
                k = 0
                for i in range(8):
                    s = block_slots[b, i]
                    if col[zsrcs[mi, s]] == 0:
                        k += 1
                        rank += binom[i, k]
                idx = idx * 70 + rank
            if dist[idx] == 255:
                dist[idx] = d + 1
                queue[tail] = idx
                tail += 1
    return dist


@njit(cache=True)
def _sticker_bfs(seeds, zdsts, binom):
    size = 10626
    dist = np.full(size, 255, np.uint8)
    queue = np.empty(size, np.int32)
    tail = 0
    for i in range(seeds.shape[0]):
        s = seeds[i]
        if dist[s] == 255:
            dist[s] = 0
            queue[tail] = s
            tail += 1
    head = 0
    pos = np.empty(4, np.int64)
    npos = np.empty(4, np.int64)
    while head < tail:
        cur = queue[head]
        head += 1
        d = dist[cur]
        rem = cur
        for i in range(3, -1, -1):
            p = i
            while p + 1 < 24 and binom[p + 1, i + 1] <= rem:
                p += 1
            pos[i] = p
            rem -= binom[p, i + 1]
        for mi in range(zdsts.shape[0]):
            for j in range(4):
                npos[j] = zdsts[mi, pos[j]]
            for a in range(1, 4):
                v = npos[a]
                b = a - 1
                while b >= 0 and npos[b] > v:
                    npos[b + 1] = npos[b]
                    b -= 1
                npos[b + 1] = v
            idx = 0
            for j in range(4):
                idx += binom[npos[j], j + 1]
            if dist[idx] == 255:
                dist[idx] = d + 1
                queue[tail] = idx
                tail += 1
    return dist


@njit(cache=True)
def _union8_bfs(goal_rank, zdsts, binom):
    """Distance over placements of eight interchangeable stickers on the 24
    center slots (binom(24,8) = 735471 configurations)."""
    size = 735471
    dist = np.full(size, 255, np.uint8)
    queue = np.empty(size, np.int32)
    dist[goal_rank] = 0
    queue[0] = goal_rank
    head, tail = 0, 1
    pos = np.empty(8, np.int64)
    npos = np.empty(8, np.int64)
    while head < tail:
        cur = queue[head]
        head += 1
        d = dist[cur]
        rem = cur
        for i in range(7, -1, -1):
            p = i
            while p + 1 < 24 and binom[p + 1, i + 1] <= rem:
                p += 1
            pos[i] = p
            rem -= binom[p, i + 1]
        for mi in range(zdsts.shape[0]):
            for j in range(8):
                npos[j] = zdsts[mi, pos[j]]
            for a in range(1, 8):
                v = npos[a]
                b = a - 1
                while b >= 0 and npos[b] > v:
                    npos[b + 1] = npos[b]
                    b -= 1
                npos[b + 1] = v
            idx = 0
            for j in range(8):
                idx += binom[npos[j], j + 1]
            if dist[idx] == 255:
                dist[idx] = d + 1
                queue[tail] = idx
                tail += 1
    return dist


@njit(cache=True)
def _trit16_rank(sym, mult):
    c0, c1, c2 = 4, 4, 8
    rank = 0
    for i in range(16):
        a = sym[i]
        if a >= 1 and c0 > 0:
            c0 -= 1
            rank += mult[c0, c1, c2]
            c0 += 1
        if a >= 2 and c1 > 0:
            c1 -= 1
            rank += mult[c0, c1, c2]
            c1 += 1
        if a == 0:
            c0 -= 1
        elif a == 1:
            c1 -= 1
        else:
            c2 -= 1
    return rank


@njit(cache=True)
def _trit16_bfs(seeds, perms, mult):
    """Distance over placements of two four-sticker colors on the sixteen
    off-x center slots (16!/(4!4!8!) = 900900 configurations)."""
    size = 900900
    dist = np.full(size, 255, np.uint8)
    queue = np.empty((size, 16), np.int8)
    tail = 0
    for i in range(seeds.shape[0]):
        r = _trit16_rank(seeds[i], mult)
        if dist[r] == 255:
            dist[r] = 0
            queue[tail] = seeds[i]
            tail += 1
    head = 0
    nxt = np.empty(16, np.int8)
    while head < tail:
        cur = queue[head]
        head += 1
        d = dist[_trit16_rank(cur, mult)]
        for mi in range(perms.shape[0]):
            for i in range(16):
                nxt[perms[mi, i]] = cur[i]
            r = _trit16_rank(nxt, mult)
            if dist[r] == 255:
                dist[r] = d + 1
                queue[tail] = nxt
                tail += 1
    return dist


@njit(cache=True)
def _eo_bfs(posdst, toggle):
    size = 4096
    dist = np.full(size, 255, np.uint8)
    queue = np.empty(size, np.int32)
    dist[0] = 0
    queue[0] = 0
    head, tail = 0, 1
    while head < tail:
        cur = queue[head]
        head += 1
        d = dist[cur]
        for mi in range(posdst.shape[0]):
            nxt = 0
            for q in range(12):
                bit = ((cur >> q) & 1) ^ toggle[mi, q]
                nxt |= bit << posdst[mi, q]
            if dist[nxt] == 255:
                dist[nxt] = d + 1
                queue[tail] = nxt
                tail += 1
    return dist


@njit(cache=True)
def _ori_bfs(csrcs, cods):
    size = 2187
    dist = np.full(size, 255, np.uint8)
    queue = np.empty(size, np.int32)
    dist[0] = 0
    queue[0] = 0
    head, tail = 0, 1
    o = np.empty(8, np.int8)
    no = np.empty(8, np.int8)
    while head < tail:
        cur = queue[head]
        head += 1
        d = dist[cur]
        rem = cur
        s = 0
        for i in range(7):
            o[i] = rem % 3
            s += o[i]
            rem //= 3
        o[7] = (3 - s % 3) % 3
        for mi in range(csrcs.shape[0]):
            for i in range(8):
                v = o[csrcs[mi, i]] + cods[mi, i]
                if v >= 3:
                    v -= 3
                no[i] = v
            idx = 0
            for i in range(6, -1, -1):
                idx = idx * 3 + no[i]
            if dist[idx] == 255:
                dist[idx] = d + 1
                queue[tail] = idx
                tail += 1
    return dist


@njit(cache=True)
def _perm8_rank(p):
    r = 0
    for i in range(8):
        c = 0
        for j in range(i + 1, 8):
            if p[j] < p[i]:
                c += 1
        r = r * (8 - i) + c
    return r


@njit(cache=True)
def _perm12_rank(p):
    r = 0
    for i in range(12):
        c = 0
        for j in range(i + 1, 12):
            if p[j] < p[i]:
                c += 1
        r = r * (12 - i) + c
    return r


@njit(cache=True)
def _cperm_bfs(seeds, csrcs):
    size = 40320
    dist = np.full(size, 255, np.uint8)
    queue = np.empty(size, np.int32)
    tail = 0
    for i in range(seeds.shape[0]):
        s = seeds[i]
        if dist[s] == 255:
            dist[s] = 0
            queue[tail] = s
            tail += 1
    head = 0
    p = np.empty(8, np.int8)
    np_ = np.empty(8, np.int8)
    avail = np.empty(8, np.int8)
    while head < tail:
        cur = queue[head]
        head += 1
        d = dist[cur]
        rem = cur
        digits = np.empty(8, np.int64)
        for i in range(7, -1, -1):
            digits[i] = rem % (8 - i)
            rem //= 8 - i
        for i in range(8):
            avail[i] = i
        n = 8
        for i in range(8):
            k = digits[i]
            p[i] = avail[k]
            for j in range(k, n - 1):
                avail[j] = avail[j + 1]
            n -= 1
        for mi in range(csrcs.shape[0]):
            for i in range(8):
                np_[i] = p[csrcs[mi, i]]
            idx = _perm8_rank(np_)
            if dist[idx] == 255:
                dist[idx] = d + 1
                queue[tail] = idx
                tail += 1
    return dist


@njit(cache=True)
def _slice_rank(assign, mult):
    counts = np.empty(3, np.int64)
    for i in range(3):
        counts[i] = 4
    rank = 0
    for i in range(12):
        a = assign[i]
        for s in range(a):
            if counts[s] > 0:
                counts[s] -= 1
                rank += mult[counts[0], counts[1], counts[2]]
                counts[s] += 1
        counts[a] -= 1
    return rank


@njit(cache=True)
def _slice_bfs(seed_assign, posdst, mult):
    size = 34650
    dist = np.full(size, 255, np.uint8)
    queue = np.empty((size, 12), np.int8)
    dist[_slice_rank(seed_assign, mult)] = 0
    queue[0] = seed_assign
    head, tail = 0, 1
    nxt = np.empty(12, np.int8)
    while head < tail:
        cur = queue[head]
        d = dist[_slice_rank(cur, mult)]
        head += 1
        for mi in range(posdst.shape[0]):
            for q in range(12):
                nxt[posdst[mi, q]] = cur[q]
            idx = _slice_rank(nxt, mult)
            if dist[idx] == 255:
                dist[idx] = d + 1
                queue[tail] = nxt
                tail += 1
    return dist


@njit(cache=True)
def _perm4_rank(a, b, c, d):
    r = 0
    vals = (a, b, c, d)
    for i in range(4):
        cnt = 0
        for j in range(i + 1, 4):
            if vals[j] < vals[i]:
                cnt += 1
        r = r * (4 - i) + cnt
    return r


@njit(cache=True)
def _pairperm_bfs(posdst, slice_positions, slice_of_pos, index_in_slice):
    size = 13824
    dist = np.full(size, 255, np.uint8)
    queue = np.empty((size, 12), np.int8)
    ident = np.empty(12, np.int8)
    for q in range(12):
        ident[q] = q
    dist[_pairperm_rank(ident, slice_positions, index_in_slice)] = 0
    queue[0] = ident
    head, tail = 0, 1
    nxt = np.empty(12, np.int8)
    while head < tail:
        cur = queue[head]
        head += 1
        d = dist[_pairperm_rank(cur, slice_positions, index_in_slice)]
        for mi in range(posdst.shape[0]):
            for q in range(12):
                nxt[posdst[mi, q]] = cur[q]
            idx = _pairperm_rank(nxt, slice_positions, index_in_slice)
            if dist[idx] == 255:
                dist[idx] = d + 1
                queue[tail] = nxt
                tail += 1
    return dist


@njit(cache=True)
def _pairperm_rank(occ, slice_positions, index_in_slice):
    idx = 0
    for a in range(3):
        r = _perm4_rank(
            index_in_slice[occ[slice_positions[a, 0]]],
            index_in_slice[occ[slice_positions[a, 1]]],
            index_in_slice[occ[slice_positions[a, 2]]],
            index_in_slice[occ[slice_positions[a, 3]]],
        )
        idx = idx * 24 + r
    return idx


@njit(cache=True)
def _squares_bfs(csrcs, posdsts):
    cap = 700000
    cps = np.empty((cap, 8), np.int8)
    pps = np.empty((cap, 12), np.int8)
    keys = np.empty(cap, np.uint64)
    seen = NumbaDict.empty(nbtypes.uint64, nbtypes.uint8)
    for i in range(8):
        cps[0, i] = i
    for q in range(12):
        pps[0, q] = q
    keys[0] = np.uint64(0)
    seen[np.uint64(0)] = np.uint8(1)
    head, tail = 0, 1
    ncp = np.empty(8, np.int8)
    npp = np.empty(12, np.int8)
    while head < tail:
        for mi in range(csrcs.shape[0]):
            for i in range(8):
                ncp[i] = cps[head, csrcs[mi, i]]
            for q in range(12):
                npp[posdsts[mi, q]] = pps[head, q]
            key = np.uint64(_perm8_rank(ncp)) * np.uint64(479001600) + np.uint64(
                _perm12_rank(npp)
            )
            if key not in seen:
                seen[key] = np.uint8(1)
                cps[tail] = ncp
                pps[tail] = npp
                keys[tail] = key
                tail += 1
        head += 1
    return np.sort(keys[:tail].copy())


# ---------------------------------------------------------------------------
# small pure-python BFS helpers for the per-piece tables
# ---------------------------------------------------------------------------


def _bfs_generic(nodes, neighbors, goal_nodes):
    dist = {n: UNREACHABLE for n in nodes}
    frontier = []
    for g in goal_nodes:
        dist[g] = 0
        frontier.append(g)
    while frontier:
        nxt = []
        for n in frontier:
            for n2 in neighbors(n):
                if dist[n2] == UNREACHABLE:
                    dist[n2] = dist[n] + 1
                    nxt.append(n2)
        frontier = nxt
    return dist


def _edge_piece_table(phase: int, goal_slots_of_piece) -> np.ndarray:
    move_ids = _gen_ids(phase)
    out = np.zeros((24, 24), dtype=np.int8)
    for w in range(24):
        goals = goal_slots_of_piece(w)
        dist = _bfs_generic(
            range(24),
            lambda s: [int(E_DST[m, s]) for m in move_ids],
            goals,
        )
        for s in range(24):
            out[w, s] = dist[s]
    return out


def _corner_piece_table(phase: int, goal_placements_of_piece) -> np.ndarray:
    move_ids = _gen_ids(phase)
    actions = [_m.corner_placement_action(m) for m in move_ids]
    nodes = [(s, o) for s in range(8) for o in range(3)]
    out = np.zeros((8, 8, 3), dtype=np.int8)
    for p in range(8):
        goals = goal_placements_of_piece(p)
        dist = _bfs_generic(nodes, lambda n: [a[n] for a in actions], goals)
        for s, o in nodes:
            out[p, s, o] = dist[(s, o)]
    return out


def _center_piece_table(phase: int, goal_slots_of_color) -> np.ndarray:
    move_ids = _gen_ids(phase)
    out = np.zeros((6, 24), dtype=np.int8)
    for color in range(6):
        goals = goal_slots_of_color(color)
        dist = _bfs_generic(
            range(24),
            lambda s: [int(Z_DST[m, s]) for m in move_ids],
            goals,
        )
        for s in range(24):
            out[color, s] = dist[s]
    return out


def _pair_table(phase: int, goal_positions) -> np.ndarray:
    """Distance for one complete-or-split pair, indexed by the class index
    of each wing's slot, to sit completed at one of the goal positions."""
    move_ids = _gen_ids(phase)
    c0, c1 = _ph.CLASS0_SLOTS, _ph.CLASS1_SLOTS
    nodes = [(a, b) for a in c0 for b in c1]
    goals = []
    for q in goal_positions:
        lo, hi = _m.POSITIONS[q]
        s0, s1 = (lo, hi) if _ph.WING_CLASS[lo] == 0 else (hi, lo)
        goals.append((s0, s1))
    dist = _bfs_generic(
        nodes,
        lambda n: [(int(E_DST[m, n[0]]), int(E_DST[m, n[1]])) for m in move_ids],
        goals,
    )
    out = np.zeros((12, 12), dtype=np.int8)
    for a, b in nodes:
        out[_ph.CLASS_INDEX[a], _ph.CLASS_INDEX[b]] = dist[(a, b)]
    return out


# ---------------------------------------------------------------------------
# phase table bundles
# ---------------------------------------------------------------------------

_EMPTY_U8 = np.zeros(0, dtype=np.uint8)
_EMPTY_U64 = np.zeros(0, dtype=np.uint64)
_EMPTY_I8_2D = np.zeros((0, 0), dtype=np.int8)


@dataclass
class PhaseTables:
    """Everything the search needs for one phase.  Arrays not used by the
    phase are empty."""

    phase: int
    corner_dist: np.ndarray  # (8,8,3) int8
    edge_dist: np.ndarray  # (24,24) int8
    center_dist: np.ndarray  # (6,24) int8
    pair_dist: np.ndarray  # (12,12) int8 or empty
    cfg_dist: np.ndarray  # (343000,) uint8 or empty
    cfg_member: np.ndarray  # (343000,) uint8 or empty
    sticker_colors: np.ndarray  # (k,) int8
    sticker_dist: np.ndarray  # (k,10626) uint8
    lr8_dist: np.ndarray  # (735471,) uint8 or empty
    udpair_dist: np.ndarray  # (900900,) uint8 or empty
    fbpair_dist: np.ndarray  # (900900,) uint8 or empty
    eo_dist: np.ndarray  # (4096,) uint8 or empty
    ori_dist: np.ndarray  # (2187,) uint8 or empty
    cperm_dist: np.ndarray  # (40320,) uint8 or empty
    slice_dist: np.ndarray  # (34650,) uint8 or empty
    pairperm_dist: np.ndarray  # (13824,) uint8 or empty
    squares_keys: np.ndarray  # sorted uint64 or empty


def _class_goal(w: int):
    return _ph.CLASS0_SLOTS if _ph.WING_CLASS[w] == 0 else _ph.CLASS1_SLOTS


def _flip_ok_goal(w: int):
    return [s for s in range(24) if _ph.PAIR_FLIPPED[w][s] == 0]


def _axis_slots(color: int):
    pair = {
        _m.L: _m.LR_CENTER_SLOTS,
        _m.R: _m.LR_CENTER_SLOTS,
        _m.F: _m.FB_CENTER_SLOTS,
        _m.B: _m.FB_CENTER_SLOTS,
        _m.U: _m.UD_CENTER_SLOTS,
        _m.D: _m.UD_CENTER_SLOTS,
    }
    return pair[color]


def _home_slots(color: int):
    return _m.CENTER_SLOTS_OF_FACE[color]


def _sticker_pdb(colors: Sequence[int], goal_slots_fn, move_ids) -> Tuple[np.ndarray, np.ndarray]:
    import itertools

    zdsts = Z_DST[np.array(move_ids)]
    dists = []
    for color in colors:
        goal = goal_slots_fn(color)
        seeds = []
        for combo in itertools.combinations(sorted(goal), 4):
            seeds.append(sum(int(BINOM[p, k + 1]) for k, p in enumerate(combo)))
        dists.append(_sticker_bfs(np.array(seeds, dtype=np.int64), zdsts, BINOM))
    return (
        np.array(list(colors), dtype=np.int8),
        np.stack(dists) if dists else np.zeros((0, 10626), dtype=np.uint8),
    )


def _slots16_perms(move_ids) -> np.ndarray:
    """Index action of each move on the sixteen off-x center slots."""
    where = {int(s): i for i, s in enumerate(SLOTS16)}
    out = np.empty((len(move_ids), 16), dtype=np.int8)
    for k, m in enumerate(move_ids):
        for i, s in enumerate(SLOTS16):
            d = int(Z_DST[m, s])
            assert d in where, "move carries an off-x center onto an x face"
            out[k, i] = where[d]
    return out


def _trit16_pdb(colors, goal_indices, move_ids) -> np.ndarray:
    """Distance table for two specific colors over the sixteen off-x center
    slots, to the arrangements with both colors inside `goal_indices`."""
    import itertools

    goal_indices = tuple(goal_indices)
    seeds = []
    for combo in itertools.combinations(goal_indices, 4):
        sym = np.full(16, 2, dtype=np.int8)
        for i in combo:
            sym[i] = 0
        for i in goal_indices:
            if sym[i] == 2:
                sym[i] = 1
        seeds.append(sym)
    return _trit16_bfs(np.stack(seeds), _slots16_perms(move_ids), MULT448)


_shared_cfg: Dict[str, np.ndarray] = {}


def _cfg_shared() -> Dict[str, np.ndarray]:
    """Center-configuration BFS shared between phases 3 and 4, plus the
    half-turn corner-permutation orbit shared between phases 7 and 8."""
    if _shared_cfg:
        return _shared_cfg
    g3 = np.array(_gen_ids(4))  # moves of phase 4 finish the centers
    uniform = _ph.center_config_index(_m.SOLVED_CENTERS)
    dist_g3 = _cfg_bfs(
        np.array([uniform], dtype=np.int64), Z_SRC[g3], _BLOCK_SLOTS, BINOM
    )
    member = (dist_g3 < 255).astype(np.uint8)
    g2 = np.array(_gen_ids(3))
    seeds = np.nonzero(member)[0].astype(np.int64)
    dist_g2 = _cfg_bfs(seeds, Z_SRC[g2], _BLOCK_SLOTS, BINOM)
    g7 = np.array(_gen_ids(8))
    cperm_g7 = _cperm_bfs(np.array([0], dtype=np.int64), C_SRC[g7])
    seeds96 = np.nonzero(cperm_g7 < 255)[0].astype(np.int64)
    g6 = np.array(_gen_ids(7))
    cperm_g6 = _cperm_bfs(seeds96, C_SRC[g6])
    _shared_cfg.update(
        dist_g3=dist_g3,
        member=member,
        dist_g2=dist_g2,
        cperm_g7=cperm_g7,
        cperm_g6=cperm_g6,
    )
    return _shared_cfg


def build_phase_tables(phase: int) -> PhaseTables:
    zeros_c = np.zeros((8, 8, 3), dtype=np.int8)
    zeros_e = np.zeros((24, 24), dtype=np.int8)
    zeros_z = np.zeros((6, 24), dtype=np.int8)
    kw = dict(
        phase=phase,
        corner_dist=zeros_c,
        edge_dist=zeros_e,
        center_dist=zeros_z,
        pair_dist=_EMPTY_I8_2D,
        cfg_dist=_EMPTY_U8,
        cfg_member=_EMPTY_U8,
        sticker_colors=np.zeros(0, dtype=np.int8),
        sticker_dist=np.zeros((0, 10626), dtype=np.uint8),
        lr8_dist=_EMPTY_U8,
        udpair_dist=_EMPTY_U8,
        fbpair_dist=_EMPTY_U8,
        eo_dist=_EMPTY_U8,
        ori_dist=_EMPTY_U8,
        cperm_dist=_EMPTY_U8,
        slice_dist=_EMPTY_U8,
        pairperm_dist=_EMPTY_U8,
        squares_keys=_EMPTY_U64,
    )
    gids = _gen_ids(phase)
    if phase == 1:
        kw["center_dist"] = _center_piece_table(
            1, lambda c: _m.LR_CENTER_SLOTS if c in (_m.L, _m.R) else range(24)
        )
        kw["sticker_colors"], kw["sticker_dist"] = _sticker_pdb(
            (_m.L, _m.R), lambda c: _m.LR_CENTER_SLOTS, gids
        )
        goal_rank = sum(
            int(BINOM[p, k + 1])
            for k, p in enumerate(sorted(_m.LR_CENTER_SLOTS))
        )
        kw["lr8_dist"] = _union8_bfs(goal_rank, Z_DST[np.array(gids)], BINOM)
    elif phase == 2:
        kw["center_dist"] = _center_piece_table(2, _axis_slots)
        kw["edge_dist"] = _edge_piece_table(2, _class_goal)
        kw["udpair_dist"] = _trit16_pdb((_m.U, _m.D), range(8, 16), gids)
        kw["fbpair_dist"] = _trit16_pdb((_m.F, _m.B), range(0, 8), gids)
    elif phase == 3:
        shared_cfg = _cfg_shared()
        kw["center_dist"] = _center_piece_table(3, _axis_slots)
        kw["edge_dist"] = _edge_piece_table(3, _class_goal)
        kw["pair_dist"] = _pair_table(3, _m.MID_POSITIONS)
        kw["cfg_dist"] = shared_cfg["dist_g2"]
        kw["cfg_member"] = shared_cfg["member"]
    elif phase == 4:
        shared_cfg = _cfg_shared()
        kw["center_dist"] = _center_piece_table(4, _home_slots)
        kw["edge_dist"] = _edge_piece_table(4, _class_goal)
        kw["pair_dist"] = _pair_table(4, range(12))
        kw["cfg_dist"] = shared_cfg["dist_g3"]
    elif phase == 5:
        kw["edge_dist"] = _edge_piece_table(5, _flip_ok_goal)
        ids = np.array(gids)
        kw["eo_dist"] = _eo_bfs(_pos_dst(gids), _eo_toggle(gids))
    elif phase == 6:
        kw["corner_dist"] = _corner_piece_table(
            6, lambda p: [(s, 0) for s in range(8)]
        )
        mid = set(_m.MID_POSITIONS)

        def goal6(w):
            home_mid = _m.HOME_POSITION[w] in mid
            return [
                s
                for s in _flip_ok_goal(w)
                if (_m.POSITION_OF_SLOT[s] in mid) == home_mid
            ]

        kw["edge_dist"] = _edge_piece_table(6, goal6)
        ids = np.array(gids)
        kw["ori_dist"] = _ori_bfs(C_SRC[ids], C_OD[ids])
    elif phase == 7:
        shared_cfg = _cfg_shared()
        tetrad = _squares_corner_orbits()

        def goal7c(p):
            return [(s, 0) for s in range(8) if tetrad[s] == tetrad[p]]

        kw["corner_dist"] = _corner_piece_table(7, goal7c)

        def goal7e(w):
            ax = _m.POSITION_AXIS[_m.HOME_POSITION[w]]
            return [
                s
                for s in _flip_ok_goal(w)
                if _m.POSITION_AXIS[_m.POSITION_OF_SLOT[s]] == ax
            ]

        kw["edge_dist"] = _edge_piece_table(7, goal7e)
        kw["cperm_dist"] = shared_cfg["cperm_g6"]
        ids = np.array(gids)
        seed = POSITION_AXIS.copy()
        kw["slice_dist"] = _slice_bfs(seed, _pos_dst(gids), MULT)
        g7ids = _gen_ids(8)
        kw["squares_keys"] = _squares_bfs(
            C_SRC[np.array(g7ids)], _pos_dst(g7ids)
        )
    elif phase == 8:
        shared_cfg = _cfg_shared()
        kw["corner_dist"] = _corner_piece_table(8, lambda p: [(p, 0)])
        kw["edge_dist"] = _edge_piece_table(8, lambda w: [w])
        kw["center_dist"] = _center_piece_table(8, _home_slots)
        kw["cperm_dist"] = shared_cfg["cperm_g7"]
        index_in_slice = np.zeros(12, dtype=np.int8)
        for a in range(3):
            for k in range(4):
                index_in_slice[SLICE_POSITIONS[a, k]] = k
        kw["pairperm_dist"] = _pairperm_bfs(
            _pos_dst(gids), SLICE_POSITIONS, POSITION_AXIS, index_in_slice
        )
    return PhaseTables(**kw)


def _squares_corner_orbits():
    orbit = [-1] * 8
    move_ids = _gen_ids(8)
    oid = 0
    for start in range(8):
        if orbit[start] != -1:
            continue
        orbit[start] = oid
        frontier = [start]
        while frontier:
            nxt = []
            for s in frontier:
                for m in move_ids:
                    d, _o = _m.corner_placement_action(m)[(s, 0)]
                    if orbit[d] == -1:
                        orbit[d] = oid
                        nxt.append(d)
            frontier = nxt
        oid += 1
    return orbit


# ---------------------------------------------------------------------------
# cache files
# ---------------------------------------------------------------------------

_DTYPE_CODES = {
    np.dtype("int8"): 0,
    np.dtype("uint8"): 1,
    np.dtype("int16"): 2,
    np.dtype("int32"): 3,
    np.dtype("int64"): 4,
    np.dtype("uint64"): 5,
}
_CODE_DTYPES = {v: k for k, v in _DTYPE_CODES.items()}


def save_phase_tables(pt: PhaseTables, path: Path) -> None:
    sections = [(f.name, getattr(pt, f.name)) for f in fields(pt) if f.name != "phase"]
    blob = [_MAGIC, struct.pack("<HHHH", CACHE_VERSION, pt.phase, len(sections), 0)]
    for name, arr in sections:
        arr = np.ascontiguousarray(arr)
        le = arr.astype(arr.dtype.newbyteorder("<"), copy=False)
        blob.append(struct.pack("<B", len(name)))
        blob.append(name.encode("ascii"))
        blob.append(struct.pack("<BB", _DTYPE_CODES[np.dtype(arr.dtype.str[1:])], arr.ndim))
        for d in arr.shape:
            blob.append(struct.pack("<I", d))
        blob.append(le.tobytes())
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_bytes(b"".join(blob))
    tmp.replace(path)


def load_phase_tables(path: Path, phase: int) -> Optional[PhaseTables]:
    try:
        data = path.read_bytes()
    except OSError:
        return None
    if len(data) < 12 or data[:4] != _MAGIC:
        return None
    version, file_phase, n_sections, _pad = struct.unpack_from("<HHHH", data, 4)
    if version != CACHE_VERSION or file_phase != phase:
        return None
    off = 12
    out = {"phase": phase}
    try:
        for _ in range(n_sections):
            (namelen,) = struct.unpack_from("<B", data, off)
            off += 1
            name = data[off : off + namelen].decode("ascii")
            off += namelen
            code, ndim = struct.unpack_from("<BB", data, off)
            off += 2
            dims = struct.unpack_from(f"<{ndim}I", data, off)
            off += 4 * ndim
            dtype = _CODE_DTYPES[code].newbyteorder("<")
            nbytes = int(np.prod(dims)) * dtype.itemsize if ndim else dtype.itemsize
            count = int(np.prod(dims)) if ndim else 1
            arr = np.frombuffer(data, dtype=dtype, count=count, offset=off)
            off += count * dtype.itemsize
            out[name] = arr.astype(dtype.newbyteorder("=")).reshape(dims)
        expected = {f.name for f in fields(PhaseTables)}
        if set(out) != expected:
            return None
        return PhaseTables(**out)
    except (struct.error, ValueError, KeyError):
        return None


def default_cache_dir() -> Path:
    env = os.environ.get("REVENGE_CACHE_DIR")
    if env:
        return Path(env)
    xdg = os.environ.get("XDG_CACHE_HOME")
    base = Path(xdg) if xdg else Path.home() / ".cache"
    return base / "revenge"


def _phase_path(cache_dir: Path, phase: int) -> Path:
    return Path(cache_dir) / f"tables-p{phase}.rv4t"


# ---------------------------------------------------------------------------
# table set facade
# ---------------------------------------------------------------------------


@dataclass
class TableSet:
    phases: Dict[int, PhaseTables]
    was_cold: bool = False

    @property
    def center_member(self) -> np.ndarray:
        return self.phases[3].cfg_member

    @property
    def squares_keys(self) -> np.ndarray:
        return self.phases[7].squares_keys

    def half_turn_reachable(self, state) -> bool:
        cp = np.array(state.corner_perm, dtype=np.int8)
        pp = np.empty(12, dtype=np.int8)
        for q in range(12):
            lo = _m.POSITIONS[q][0]
            pp[q] = _m.HOME_POSITION[state.edge_perm[lo]]
        key = np.uint64(int(_perm8_rank(cp)) * FACT12 + int(_perm12_rank(pp)))
        keys = self.squares_keys
        i = int(np.searchsorted(keys, key))
        return i < keys.shape[0] and keys[i] == key


def build_all(cache_dir: Optional[Path] = None, force: bool = False) -> TableSet:
    """Load every phase bundle from the cache, building and saving any that
    are missing or stale."""
    cache_dir = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    out: Dict[int, PhaseTables] = {}
    cold = False
    for phase in range(1, 9):
        path = _phase_path(cache_dir, phase)
        pt = None if force else load_phase_tables(path, phase)
        if pt is None:
            pt = build_phase_tables(phase)
            save_phase_tables(pt, path)
            cold = True
        out[phase] = pt
    return TableSet(phases=out, was_cold=cold)


def verify_cache(cache_dir: Optional[Path] = None) -> List[str]:
    """Rebuild every table and compare byte-for-byte with the cache files."""
    cache_dir = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    problems = []
    for phase in range(1, 9):
        path = _phase_path(cache_dir, phase)
        cached = load_phase_tables(path, phase)
        if cached is None:
            problems.append(f"phase {phase}: cache missing or unreadable at {path}")
            continue
        fresh = build_phase_tables(phase)
        for f in fields(PhaseTables):
            if f.name == "phase":
                continue
            a, b = getattr(cached, f.name), getattr(fresh, f.name)
            if a.shape != b.shape or not np.array_equal(a, b):
                problems.append(f"phase {phase}: section {f.name} differs")
    return problems


_SHARED: Optional[TableSet] = None


def shared(cache_dir: Optional[Path] = None) -> TableSet:
    """Process-wide table set, built (or loaded) on first use."""
    global _SHARED
    if _SHARED is None:
        _SHARED = build_all(cache_dir)
    return _SHARED
