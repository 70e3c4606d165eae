"""Compiled inner loops for the phase search.

The depth-limited DFS walks an explicit stack of 64-byte piece states
(corner permutation, corner orientation, wing permutation, center colors)
so a node costs one table-driven permutation plus integer pruning tests.
Goal tests and distance pruning mirror :mod:`revenge.phases` and
:mod:`revenge.heuristic` exactly; the test suite checks that equivalence
state by state.

All structural tables are baked in as compile-time constants; only the
per-phase distance tables are passed in, because they come from the
(lazy, cacheable) table build.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from . import _model as _m
from . import phases as _ph

# --- compile-time constants -------------------------------------------------

KC_SRC = np.array(_m.C_SRC, dtype=np.int8)
KC_OD = np.array(_m.C_OD, dtype=np.int8)
KE_SRC = np.array(_m.E_SRC, dtype=np.int8)
KZ_SRC = np.array(_m.Z_SRC, dtype=np.int8)

KWCLASS = np.array(_ph.WING_CLASS, dtype=np.int8)
KCLASS_IDX = np.array(_ph.CLASS_INDEX, dtype=np.int8)
KFLIPPED = np.array(_ph.PAIR_FLIPPED, dtype=np.int8)
KHOMEPOS = np.array(_m.HOME_POSITION, dtype=np.int8)
KPARTNER = np.array(_m.PARTNER_WING, dtype=np.int8)
KPOS_LO = np.array([lo for lo, _ in _m.POSITIONS], dtype=np.int8)
KPOS_HI = np.array([hi for _, hi in _m.POSITIONS], dtype=np.int8)
KMID = np.array(
    [1 if q in _m.MID_POSITIONS else 0 for q in range(12)], dtype=np.int8
)
KPOSAXIS = np.array(_m.POSITION_AXIS, dtype=np.int8)
KW0 = np.array(_ph.PAIR_WING0, dtype=np.int8)
KW1 = np.array(_ph.PAIR_WING1, dtype=np.int8)

KBLOCK_SLOTS = np.array(
    [_m.LR_CENTER_SLOTS, _m.FB_CENTER_SLOTS, _m.UD_CENTER_SLOTS], dtype=np.int8
)
KZ_HOME = np.array(_m.SOLVED_CENTERS, dtype=np.int8)
KSLICE_POS = np.array(
    [[q for q in range(12) if _m.POSITION_AXIS[q] == a] for a in range(3)],
    dtype=np.int8,
)
KIDX_IN_SLICE = np.zeros(12, dtype=np.int8)
for _a in range(3):
    for _k in range(4):
        KIDX_IN_SLICE[KSLICE_POS[_a, _k]] = _k

KBINOM = np.zeros((26, 10), dtype=np.int64)
for _n in range(26):
    _v = 1
    for _k in range(10):
        KBINOM[_n, _k] = _v
        _v = _v * (_n - _k) // (_k + 1) if _n - _k > 0 else 0

KMULT448 = np.zeros((5, 5, 9), dtype=np.int64)
for _a in range(5):
    for _b in range(5):
        for _c in range(9):
            import math as _math

            KMULT448[_a, _b, _c] = _math.factorial(_a + _b + _c) // (
                _math.factorial(_a) * _math.factorial(_b) * _math.factorial(_c)
            )

KSLOTS16 = np.array(
    tuple(_m.FB_CENTER_SLOTS) + tuple(_m.UD_CENTER_SLOTS), dtype=np.int8
)

KSOLVED = np.zeros(64, dtype=np.int8)
KSOLVED[0:8] = np.arange(8)
KSOLVED[16:40] = np.arange(24)
KSOLVED[40:64] = KZ_HOME

K_L, K_R, K_F, K_B, K_U, K_D = _m.L, _m.R, _m.F, _m.B, _m.U, _m.D


def state_to_array(state) -> np.ndarray:
    arr = np.empty(64, dtype=np.int8)
    arr[0:8] = state.corner_perm
    arr[8:16] = state.corner_ori
    arr[16:40] = state.edge_perm
    arr[40:64] = state.centers
    return arr


def array_to_state(arr):
    from .cube import CubeState

    return CubeState(
        corner_perm=tuple(int(v) for v in arr[0:8]),
        corner_ori=tuple(int(v) for v in arr[8:16]),
        edge_perm=tuple(int(v) for v in arr[16:40]),
        centers=tuple(int(v) for v in arr[40:64]),
    )


# --- compiled helpers ---------------------------------------------------------


@njit(cache=True, inline="always")
def _apply(src, m, out, inv_out):
    for i in range(8):
        out[i] = src[KC_SRC[m, i]]
        v = src[8 + KC_SRC[m, i]] + KC_OD[m, i]
        if v >= 3:
            v -= 3
        out[8 + i] = v
    for i in range(24):
        out[16 + i] = src[16 + KE_SRC[m, i]]
        out[40 + i] = src[40 + KZ_SRC[m, i]]
    for i in range(24):
        inv_out[out[16 + i]] = i


@njit(cache=True, inline="always")
def _perm_parity(st, off, n):
    seen = 0
    parity = 0
    for i in range(n):
        if seen & (1 << i):
            continue
        j = i
        length = 0
        while not (seen & (1 << j)):
            seen |= 1 << j
            j = st[off + j]
            length += 1
        parity ^= (length - 1) & 1
    return parity


@njit(cache=True, inline="always")
def _pair_positions_parity(st):
    seen = 0
    parity = 0
    for i in range(12):
        if seen & (1 << i):
            continue
        j = i
        length = 0
        while not (seen & (1 << j)):
            seen |= 1 << j
            j = KHOMEPOS[st[16 + KPOS_LO[j]]]
            length += 1
        parity ^= (length - 1) & 1
    return parity


@njit(cache=True, inline="always")
def _all_paired(st):
    for q in range(12):
        if KPARTNER[st[16 + KPOS_LO[q]]] != st[16 + KPOS_HI[q]]:
            return False
    return True


@njit(cache=True, inline="always")
def _flipped_count(st):
    n = 0
    for q in range(12):
        n += KFLIPPED[st[16 + KPOS_LO[q]], KPOS_LO[q]]
    return n


@njit(cache=True, inline="always")
def _cfg_index(st):
    idx = 0
    for b in range(3):
        first = K_L if b == 0 else (K_F if b == 1 else K_U)
        second = K_R if b == 0 else (K_B if b == 1 else K_D)
        rank = 0
        k = 0
        for i in range(8):
            c = st[40 + KBLOCK_SLOTS[b, i]]
            if c == first:
                k += 1
                rank += KBINOM[i, k]
            elif c != second:
                return np.int64(-1)
        if k != 4:
            return np.int64(-1)
        idx = idx * 70 + rank
    return np.int64(idx)


@njit(cache=True, inline="always")
def _perm8_rank_state(st):
    r = 0
    for i in range(8):
        c = 0
        for j in range(i + 1, 8):
            if st[j] < st[i]:
                c += 1
        r = r * (8 - i) + c
    return np.int64(r)


@njit(cache=True, inline="always")
def _pairperm_rank12(st):
    r = 0
    for i in range(12):
        pi = KHOMEPOS[st[16 + KPOS_LO[i]]]
        c = 0
        for j in range(i + 1, 12):
            if KHOMEPOS[st[16 + KPOS_LO[j]]] < pi:
                c += 1
        r = r * (12 - i) + c
    return np.int64(r)


@njit(cache=True, inline="always")
def _centers_axis_ok(st):
    for i in range(8):
        c = st[40 + KBLOCK_SLOTS[0, i]]
        if c != K_L and c != K_R:
            return False
        c = st[40 + KBLOCK_SLOTS[1, i]]
        if c != K_F and c != K_B:
            return False
        c = st[40 + KBLOCK_SLOTS[2, i]]
        if c != K_U and c != K_D:
            return False
    return True


@njit(cache=True)
def goal_check(phase, st, cfg_member, squares_keys):
    if phase == 1:
        for i in range(8):
            c = st[40 + KBLOCK_SLOTS[0, i]]
            if c != K_L and c != K_R:
                return False
        return True
    if phase <= 3:
        if not _centers_axis_ok(st):
            return False
        for s in range(24):
            if KWCLASS[st[16 + s]] != KWCLASS[s]:
                return False
        if _perm_parity(st, 16, 24) != 0:
            return False
        if phase == 2:
            return True
        idx = _cfg_index(st)
        if idx < 0 or cfg_member[idx] == 0:
            return False
        for q in range(12):
            if KPOSAXIS[q] == 1:  # middle layer
                if KPARTNER[st[16 + KPOS_LO[q]]] != st[16 + KPOS_HI[q]]:
                    return False
        return True
    # phases 4..8 are phrased on the reduced cube
    if not _all_paired(st):
        return False
    for s in range(24):
        if st[40 + s] != KZ_HOME[s]:
            return False
    if _perm_parity(st, 0, 8) != _pair_positions_parity(st):
        return False
    flips = _flipped_count(st)
    if flips & 1:
        return False
    if phase == 4:
        return True
    if flips != 0:
        return False
    if phase == 5:
        return True
    for i in range(8):
        if st[8 + i] != 0:
            return False
    for q in range(12):
        if KPOSAXIS[q] == 1 and KPOSAXIS[KHOMEPOS[st[16 + KPOS_LO[q]]]] != 1:
            return False
    if phase == 6:
        return True
    if phase == 7:
        key = np.uint64(_perm8_rank_state(st)) * np.uint64(479001600) + np.uint64(
            _pairperm_rank12(st)
        )
        lo = 0
        hi = squares_keys.shape[0]
        while lo < hi:
            mid = (lo + hi) >> 1
            if squares_keys[mid] < key:
                lo = mid + 1
            else:
                hi = mid
        return lo < squares_keys.shape[0] and squares_keys[lo] == key
    for i in range(64):
        if st[i] != KSOLVED[i]:
            return False
    return True


@njit(cache=True, inline="always")
def _corner_sum(st, ct):
    csum = 0
    for s in range(8):
        csum += ct[st[s], s, st[8 + s]]
    return csum


@njit(cache=True, inline="always")
def _edge_sum(st, et):
    esum = 0
    for s in range(24):
        esum += et[st[16 + s], s]
    return esum


@njit(cache=True, inline="always")
def _center_sum(st, zt):
    zsum = 0
    for s in range(24):
        zsum += zt[st[40 + s], s]
    return zsum


@njit(cache=True, inline="always")
def _trit16_index(st, first, second):
    c0, c1, c2 = 4, 4, 8
    rank = 0
    for i in range(16):
        c = st[40 + KSLOTS16[i]]
        if c == first:
            a = 0
        elif c == second:
            a = 1
        else:
            a = 2
        if a >= 1 and c0 > 0:
            c0 -= 1
            rank += KMULT448[c0, c1, c2]
            c0 += 1
        if a >= 2 and c1 > 0:
            c1 -= 1
            rank += KMULT448[c0, c1, c2]
            c1 += 1
        if a == 0:
            c0 -= 1
        elif a == 1:
            c1 -= 1
        else:
            c2 -= 1
    return rank


@njit(cache=True)
def prune_check(
    phase,
    st,
    inv,
    rem,
    ct,
    et,
    zt,
    pair_t,
    cfg_dist,
    st_colors,
    st_dist,
    lr8_dist,
    udpair_dist,
    fbpair_dist,
    eo_dist,
    ori_dist,
    cperm_dist,
    slice_dist,
    pairperm_dist,
):
    """True when no sequence of <= rem twists below this node can reach the
    phase goal.  Every term is an admissible lower bound; only the terms
    that can be nonzero within the phase are evaluated."""
    if phase == 1:
        if _center_sum(st, zt) > 8 * rem:
            return True
        for k in range(st_colors.shape[0]):
            color = st_colors[k]
            rank = 0
            cnt = 0
            for s in range(24):
                if st[40 + s] == color:
                    cnt += 1
                    rank += KBINOM[s, cnt]
            if cnt == 4 and st_dist[k, rank] > rem:
                return True
        rank = 0
        cnt = 0
        for s in range(24):
            c = st[40 + s]
            if c == K_L or c == K_R:
                cnt += 1
                rank += KBINOM[s, cnt]
        if lr8_dist[rank] > rem:
            return True
        return False

    if phase == 2:
        if _center_sum(st, zt) > 8 * rem:
            return True
        esum = 0
        wrong = 0
        for s in range(24):
            esum += et[st[16 + s], s]
            if KWCLASS[st[16 + s]] != KWCLASS[s]:
                wrong += 1
        if esum > 8 * rem or wrong > 4 * rem:
            return True
        if udpair_dist[_trit16_index(st, K_U, K_D)] > rem:
            return True
        if fbpair_dist[_trit16_index(st, K_F, K_B)] > rem:
            return True
        return False

    if phase == 3 or phase == 4:
        if phase == 4 and _center_sum(st, zt) > 8 * rem:
            return True
        idx = _cfg_index(st)
        if idx >= 0 and cfg_dist[idx] > rem:
            return True
        m1 = 0
        m2 = 0
        m3 = 0
        m4 = 0
        total = 0
        for q in range(12):
            s0 = inv[KW0[q]]
            s1 = inv[KW1[q]]
            if KWCLASS[s0] == 0 and KWCLASS[s1] == 1:
                d = pair_t[KCLASS_IDX[s0], KCLASS_IDX[s1]]
            else:
                d = 0
            total += d
            if phase == 3:
                if d > m1:
                    m4 = m3
                    m3 = m2
                    m2 = m1
                    m1 = d
                elif d > m2:
                    m4 = m3
                    m3 = m2
                    m2 = d
                elif d > m3:
                    m4 = m3
                    m3 = d
                elif d > m4:
                    m4 = d
        if phase == 3:
            if total - m1 - m2 - m3 - m4 > 4 * rem:
                return True
        else:
            if total > 8 * rem:
                return True
        return False

    if phase == 5:
        if _edge_sum(st, et) > 8 * rem:
            return True
        eo = 0
        for q in range(12):
            eo |= KFLIPPED[st[16 + KPOS_LO[q]], KPOS_LO[q]] << q
        return eo_dist[eo] > rem

    if phase == 6:
        if _corner_sum(st, ct) > 4 * rem:
            return True
        if _edge_sum(st, et) > 8 * rem:
            return True
        idx = 0
        for i in range(6, -1, -1):
            idx = idx * 3 + st[8 + i]
        return ori_dist[idx] > rem

    if phase == 7:
        if _corner_sum(st, ct) > 4 * rem:
            return True
        if _edge_sum(st, et) > 8 * rem:
            return True
        if cperm_dist[_perm8_rank_state(st)] > rem:
            return True
        counts0 = 4
        counts1 = 4
        counts2 = 4
        rank = 0
        for i in range(12):
            a = KPOSAXIS[KHOMEPOS[st[16 + KPOS_LO[i]]]]
            if a >= 1 and counts0 > 0:
                counts0 -= 1
                rank += _mult3(counts0, counts1, counts2)
                counts0 += 1
            if a >= 2 and counts1 > 0:
                counts1 -= 1
                rank += _mult3(counts0, counts1, counts2)
                counts1 += 1
            if a == 0:
                counts0 -= 1
            elif a == 1:
                counts1 -= 1
            else:
                counts2 -= 1
        return slice_dist[rank] > rem

    # phase 8
    if _corner_sum(st, ct) > 4 * rem:
        return True
    if _edge_sum(st, et) > 8 * rem:
        return True
    if cperm_dist[_perm8_rank_state(st)] > rem:
        return True
    ok = True
    for q in range(12):
        if KPOSAXIS[KHOMEPOS[st[16 + KPOS_LO[q]]]] != KPOSAXIS[q]:
            ok = False
            break
    if ok:
        idx = 0
        for a in range(3):
            r = 0
            for i in range(4):
                pi = KIDX_IN_SLICE[KHOMEPOS[st[16 + KPOS_LO[KSLICE_POS[a, i]]]]]
                c = 0
                for j in range(i + 1, 4):
                    pj = KIDX_IN_SLICE[
                        KHOMEPOS[st[16 + KPOS_LO[KSLICE_POS[a, j]]]]
                    ]
                    if pj < pi:
                        c += 1
                r = r * (4 - i) + c
            idx = idx * 24 + r
        if pairperm_dist[idx] > rem:
            return True
    return False


@njit(cache=True, inline="always")
def _mult3(a, b, c):
    f = (1, 1, 2, 6, 24, 120, 720, 5040, 40320, 362880, 3628800, 39916800, 479001600)
    return f[a + b + c] // (f[a] * f[b] * f[c])


@njit(cache=True)
def search(
    phase,
    st0,
    limit,
    last0,
    use_h,
    budget,
    succ_flat,
    succ_start,
    ct,
    et,
    zt,
    pair_t,
    cfg_dist,
    cfg_member,
    st_colors,
    st_dist,
    lr8_dist,
    udpair_dist,
    fbpair_dist,
    eo_dist,
    ori_dist,
    cperm_dist,
    slice_dist,
    pairperm_dist,
    squares_keys,
    path_out,
    stats,
    collect_out,
    max_collect,
):
    """Depth-limited DFS of exactly `limit` twists.

    Per node: with no depth left, succeed exactly when the phase goal
    holds; otherwise expand the canonical successors unless the distance
    bound already exceeds the remaining depth.  Returns `limit` on first
    success with the move ids in path_out (or, when max_collect > 0, keeps
    going and returns the number of solutions stored in collect_out);
    -1 when the depth is exhausted; -2 when the node budget runs out.
    stats[0] accumulates visited nodes.
    """
    found = 0
    stats[0] += 1
    if budget >= 0 and stats[0] > budget:
        return -2
    if limit == 0:
        if goal_check(phase, st0, cfg_member, squares_keys):
            return 1 if max_collect > 0 else 0
        return -1 if max_collect == 0 else 0

    states = np.empty((limit + 1, 64), dtype=np.int8)
    invs = np.empty((limit + 1, 24), dtype=np.int8)
    states[0] = st0
    for s in range(24):
        invs[0, st0[16 + s]] = s

    if use_h and prune_check(
        phase, states[0], invs[0], limit, ct, et, zt, pair_t, cfg_dist,
        st_colors, st_dist, lr8_dist, udpair_dist, fbpair_dist, eo_dist,
        ori_dist, cperm_dist, slice_dist, pairperm_dist,
    ):
        return -1 if max_collect == 0 else found

    cursor = np.empty(limit + 1, dtype=np.int32)
    moves = np.empty(limit + 1, dtype=np.int8)
    cursor[0] = succ_start[last0]
    level = 0
    while level >= 0:
        nxt = -1
        c = cursor[level]
        if succ_flat[c] >= 0:
            nxt = succ_flat[c]
            cursor[level] = c + 1
        if nxt < 0:
            level -= 1
            continue
        _apply(states[level], nxt, states[level + 1], invs[level + 1])
        stats[0] += 1
        if budget >= 0 and stats[0] > budget:
            return -2
        rem = limit - level - 1
        if rem == 0:
            if goal_check(phase, states[level + 1], cfg_member, squares_keys):
                moves[level] = nxt
                if max_collect == 0:
                    for i in range(limit):
                        path_out[i] = moves[i]
                    return limit
                for i in range(limit):
                    collect_out[found, i] = moves[i]
                found += 1
                if found >= max_collect:
                    return found
            continue
        if use_h and prune_check(
            phase, states[level + 1], invs[level + 1], rem, ct, et, zt,
            pair_t, cfg_dist, st_colors, st_dist, lr8_dist, udpair_dist,
            fbpair_dist, eo_dist, ori_dist, cperm_dist, slice_dist,
            pairperm_dist,
        ):
            continue
        moves[level] = nxt
        level += 1
        cursor[level] = succ_start[nxt]
    return -1 if max_collect == 0 else found


@njit(cache=True)
def goal_mask(states, phase, cfg_member, squares_keys, out):
    for i in range(states.shape[0]):
        out[i] = goal_check(phase, states[i], cfg_member, squares_keys)


@njit(cache=True)
def expand_states(states, move_ids, out):
    """out[k*n + i] = states[i] twisted by move_ids[k]; used by the breadth-
    first test oracle."""
    n = states.shape[0]
    inv = np.empty(24, dtype=np.int8)
    for k in range(move_ids.shape[0]):
        m = move_ids[k]
        for i in range(n):
            _apply(states[i], m, out[k * n + i], inv)
