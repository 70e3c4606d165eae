"""Geometric model of the 4x4x4 cube and the piece-level move tables.

Everything in this module is derived once, at import, from a 96-facelet
model of the cube.  Slice turns are literal rotations of cubie coordinates
and sticker normals, so the piece tables (corner cycles and twists, wing
cycles, center cycles) cannot drift out of sync with the printed state
format.  The derived tables are plain tuples; they are read-only and safe
to share across threads.

Coordinate frame
----------------
Cubie coordinates run 0..3 on each axis:

    x: 0 = L face side, 3 = R face side
    y: 0 = D,           3 = U
    z: 0 = B,           3 = F

A slice is (axis, layer).  Layers 0 and 3 are the outer slices (they carry
corners), layers 1 and 2 the inner ones.  Turn direction is normalised to
the view from the axis's positive face (R, U, F): turn 1 is a quarter turn
clockwise in that view, 2 a half turn, 3 a quarter counter-clockwise.

Facelet layout (the 96-character state format)
----------------------------------------------
Faces are printed in the order U, R, F, D, L, B, 16 stickers each,
row-major as seen on this unfolding (U toward the viewer's top):

            +----+
            | U  |
       +----+----+----+----+
       | L  | F  | R  | B  |
       +----+----+----+----+
            | D  |
            +----+

Row 0 of U is its back row; row 0 of D is its front row; L, F, R, B are
read looking straight at each face with U up.  Facelet index =
16 * face + 4 * row + col.
"""

from __future__ import annotations

# Face ids double as color ids in the state format.
U, R, F, D, L, B = range(6)
FACE_CHARS = "URFDLB"
OPPOSITE_FACE = (D, L, B, U, R, F)

AXIS_X, AXIS_Y, AXIS_Z = 0, 1, 2
AXIS_NAMES = "xyz"

# Letter of each (axis, layer); lowercase letters are the inner slices.
LAYER_LETTERS = (
    ("L", "l", "r", "R"),
    ("D", "d", "u", "U"),
    ("B", "b", "f", "F"),
)

N_MOVES = 36


def move_id(axis: int, layer: int, turn: int) -> int:
    return axis * 12 + layer * 3 + (turn - 1)


MOVE_AXIS = tuple(i // 12 for i in range(N_MOVES))
MOVE_LAYER = tuple(i % 12 // 3 for i in range(N_MOVES))
MOVE_TURN = tuple(i % 3 + 1 for i in range(N_MOVES))


def _face_rc_coord(face, r, c):
    """Cubie coordinate and outward normal of facelet (face, r, c)."""
    if face == U:
        return (c, 3, r), (0, 1, 0)
    if face == R:
        return (3, 3 - r, 3 - c), (1, 0, 0)
    if face == F:
        return (c, 3 - r, 3), (0, 0, 1)
    if face == D:
        return (c, 0, 3 - r), (0, -1, 0)
    if face == L:
        return (0, 3 - r, c), (-1, 0, 0)
    return (3 - c, 3 - r, 0), (0, 0, -1)


FACELET_COORD = tuple(
    _face_rc_coord(f, r, c) for f in range(6) for r in range(4) for c in range(4)
)
_COORD_TO_FACELET = {pn: i for i, pn in enumerate(FACELET_COORD)}
FACE_OF_FACELET = tuple(i // 16 for i in range(96))


def _rot_point(axis, p):
    x, y, z = p
    if axis == AXIS_X:
        return (x, z, 3 - y)
    if axis == AXIS_Y:
        return (3 - z, y, x)
    return (y, 3 - x, z)


def _rot_normal(axis, n):
    x, y, z = n
    if axis == AXIS_X:
        return (x, z, -y)
    if axis == AXIS_Y:
        return (-z, y, x)
    return (y, -x, z)


def _quarter_src(axis, layer):
    """Facelet permutation of one clockwise quarter turn, in source form:
    new[i] = old[src[i]]."""
    src = list(range(96))
    for i, (p, n) in enumerate(FACELET_COORD):
        if p[axis] == layer:
            j = _COORD_TO_FACELET[(_rot_point(axis, p), _rot_normal(axis, n))]
            src[j] = i
    return src


def _compose_src(a, b):
    """Source-form composition: apply a, then b."""
    return [a[b[i]] for i in range(96)]


def _build_facelet_src():
    tables = []
    for axis in range(3):
        for layer in range(4):
            q = _quarter_src(axis, layer)
            h = _compose_src(q, q)
            tables.append(tuple(q))
            tables.append(tuple(h))
            tables.append(tuple(_compose_src(h, q)))
    return tuple(tables)


FACELET_SRC = _build_facelet_src()

SOLVED_FACELETS = tuple(FACE_OF_FACELET)

# --------------------------------------------------------------------------
# Corner slots
# --------------------------------------------------------------------------

CORNER_COORDS = tuple(
    (x, y, z) for x in (0, 3) for y in (0, 3) for z in (0, 3)
)
N_CORNERS = 8


def _corner_facelets(coord):
    """Facelet triple of a corner slot: the U/D sticker first, then the two
    others in clockwise order viewed from outside along the corner's
    diagonal."""
    x, y, z = coord
    d = (x - 1.5, y - 1.5, z - 1.5)
    normals = [
        (1 if x == 3 else -1, 0, 0),
        (0, 1 if y == 3 else -1, 0),
        (0, 0, 1 if z == 3 else -1),
    ]
    first = normals[1]

    def cross_dot(a, b):
        cx = a[1] * b[2] - a[2] * b[1]
        cy = a[2] * b[0] - a[0] * b[2]
        cz = a[0] * b[1] - a[1] * b[0]
        return cx * d[0] + cy * d[1] + cz * d[2]

    rest = [n for n in normals if n != first]
    second = rest[0] if cross_dot(first, rest[0]) < 0 else rest[1]
    third = rest[1] if second is rest[0] else rest[0]
    return tuple(_COORD_TO_FACELET[(coord, n)] for n in (first, second, third))


CORNER_FACELETS = tuple(_corner_facelets(c) for c in CORNER_COORDS)
CORNER_NAMES = tuple(
    "".join(FACE_CHARS[FACE_OF_FACELET[f]] for f in tri) for tri in CORNER_FACELETS
)
DBL_CORNER = CORNER_COORDS.index((0, 0, 0))

# --------------------------------------------------------------------------
# Edge (wing) slots
# --------------------------------------------------------------------------


def _is_wing(coord):
    return sum(1 for v in coord if v in (1, 2)) == 1


EDGE_COORDS = tuple(
    c
    for c in (
        (x, y, z) for x in range(4) for y in range(4) for z in range(4)
    )
    if _is_wing(c)
)
N_EDGES = 24


def _edge_facelets(coord):
    pair = [
        _COORD_TO_FACELET[(coord, n)]
        for n in (
            (1 if coord[0] == 3 else -1, 0, 0) if coord[0] in (0, 3) else None,
            (0, 1 if coord[1] == 3 else -1, 0) if coord[1] in (0, 3) else None,
            (0, 0, 1 if coord[2] == 3 else -1) if coord[2] in (0, 3) else None,
        )
        if n is not None
    ]
    return tuple(sorted(pair))


EDGE_FACELETS = tuple(_edge_facelets(c) for c in EDGE_COORDS)


def _edge_axis(coord):
    for a in range(3):
        if coord[a] in (1, 2):
            return a
    raise AssertionError(coord)


EDGE_AXIS = tuple(_edge_axis(c) for c in EDGE_COORDS)

# Logical edge positions: the two wing slots that share the same pair of
# extreme coordinates.  The lo slot has inner coordinate 1, the hi slot 2.
_pos_key_to_slots: dict = {}
for _s, _c in enumerate(EDGE_COORDS):
    _a = EDGE_AXIS[_s]
    _key = (_a, tuple(v for i, v in enumerate(_c) if i != _a))
    _pos_key_to_slots.setdefault(_key, []).append(_s)

POSITIONS = tuple(
    tuple(sorted(slots, key=lambda s: EDGE_COORDS[s][EDGE_AXIS[s]]))
    for _key, slots in sorted(_pos_key_to_slots.items())
)
N_POSITIONS = 12
POSITION_OF_SLOT = [0] * N_EDGES
IS_HI_SLOT = [False] * N_EDGES
SIBLING_SLOT = [0] * N_EDGES
for _q, (_lo, _hi) in enumerate(POSITIONS):
    POSITION_OF_SLOT[_lo] = POSITION_OF_SLOT[_hi] = _q
    IS_HI_SLOT[_hi] = True
    SIBLING_SLOT[_lo], SIBLING_SLOT[_hi] = _hi, _lo
POSITION_OF_SLOT = tuple(POSITION_OF_SLOT)
IS_HI_SLOT = tuple(IS_HI_SLOT)
SIBLING_SLOT = tuple(SIBLING_SLOT)

POSITION_AXIS = tuple(EDGE_AXIS[lo] for lo, _hi in POSITIONS)
# The middle layer: the four edge positions not in the top or bottom layer,
# i.e. the positions whose own axis is vertical.
MID_POSITIONS = tuple(q for q in range(N_POSITIONS) if POSITION_AXIS[q] == AXIS_Y)
POSITION_NAMES = tuple(
    "".join(
        sorted(
            FACE_CHARS[FACE_OF_FACELET[f]] for f in EDGE_FACELETS[lo]
        )
    )
    for lo, _hi in POSITIONS
)

# Home position of a wing piece (piece ids equal their home slot).
HOME_POSITION = POSITION_OF_SLOT
PARTNER_WING = SIBLING_SLOT

# --------------------------------------------------------------------------
# Center slots
# --------------------------------------------------------------------------

CENTER_COORDS = tuple(
    c
    for c in (
        (x, y, z) for x in range(4) for y in range(4) for z in range(4)
    )
    if sum(1 for v in c if v in (1, 2)) == 2
)
N_CENTERS = 24


def _center_facelet(coord):
    for a in range(3):
        if coord[a] in (0, 3):
            n = [0, 0, 0]
            n[a] = 1 if coord[a] == 3 else -1
            return _COORD_TO_FACELET[(coord, tuple(n))]
    raise AssertionError(coord)


CENTER_FACELET = tuple(_center_facelet(c) for c in CENTER_COORDS)
CENTER_FACE = tuple(FACE_OF_FACELET[f] for f in CENTER_FACELET)
CENTER_SLOTS_OF_FACE = tuple(
    tuple(s for s in range(N_CENTERS) if CENTER_FACE[s] == f) for f in range(6)
)
SOLVED_CENTERS = CENTER_FACE

# Center slots grouped by axis pair, used by the phase goal conditions.
LR_CENTER_SLOTS = CENTER_SLOTS_OF_FACE[L] + CENTER_SLOTS_OF_FACE[R]
FB_CENTER_SLOTS = CENTER_SLOTS_OF_FACE[F] + CENTER_SLOTS_OF_FACE[B]
UD_CENTER_SLOTS = CENTER_SLOTS_OF_FACE[U] + CENTER_SLOTS_OF_FACE[D]

# --------------------------------------------------------------------------
# Piece-level move tables, lifted from the facelet permutations
# --------------------------------------------------------------------------

_facelet_to_corner = {}
for _i, _tri in enumerate(CORNER_FACELETS):
    for _k, _f in enumerate(_tri):
        _facelet_to_corner[_f] = (_i, _k)
_facelet_to_edge = {}
for _i, _pair in enumerate(EDGE_FACELETS):
    for _k, _f in enumerate(_pair):
        _facelet_to_edge[_f] = (_i, _k)
_facelet_to_center = {CENTER_FACELET[_i]: _i for _i in range(N_CENTERS)}


def _lift_move(src):
    """Derive corner/edge/center tables (source form) from a facelet table."""
    c_src = list(range(N_CORNERS))
    c_od = [0] * N_CORNERS
    e_src = list(range(N_EDGES))
    e_flip = [0] * N_EDGES
    z_src = list(range(N_CENTERS))

    dst_of = [0] * 96
    for i in range(96):
        dst_of[src[i]] = i

    for a in range(N_CORNERS):
        img = [dst_of[f] for f in CORNER_FACELETS[a]]
        b, k0 = _facelet_to_corner[img[0]]
        for k in range(3):
            bk, kk = _facelet_to_corner[img[k]]
            assert bk == b and kk == (k0 + k) % 3, "corner stickers tore apart"
        c_src[b] = a
        c_od[b] = k0
    for a in range(N_EDGES):
        img = [dst_of[f] for f in EDGE_FACELETS[a]]
        b, k0 = _facelet_to_edge[img[0]]
        b1, k1 = _facelet_to_edge[img[1]]
        assert b1 == b and k1 == 1 - k0, "wing stickers tore apart"
        e_src[b] = a
        e_flip[b] = k0
    for a in range(N_CENTERS):
        b = _facelet_to_center[dst_of[CENTER_FACELET[a]]]
        z_src[b] = a
    return tuple(c_src), tuple(c_od), tuple(e_src), tuple(e_flip), tuple(z_src)


_lifted = tuple(_lift_move(FACELET_SRC[m]) for m in range(N_MOVES))
C_SRC = tuple(t[0] for t in _lifted)
C_OD = tuple(t[1] for t in _lifted)
E_SRC = tuple(t[2] for t in _lifted)
E_FLIP = tuple(t[3] for t in _lifted)
Z_SRC = tuple(t[4] for t in _lifted)

INVERSE_MOVE = tuple(
    move_id(MOVE_AXIS[m], MOVE_LAYER[m], 4 - MOVE_TURN[m])
    if MOVE_TURN[m] != 2
    else m
    for m in range(N_MOVES)
)


def edge_slot_action(m: int):
    """dst_of[slot] for the wing slots under move m."""
    dst = [0] * N_EDGES
    for b in range(N_EDGES):
        dst[E_SRC[m][b]] = b
    return tuple(dst)


def corner_placement_action(m: int):
    """(slot, ori) -> (slot', ori') for a single corner under move m."""
    dst = {}
    for b in range(N_CORNERS):
        a = C_SRC[m][b]
        for o in range(3):
            dst[(a, o)] = (b, (o + C_OD[m][b]) % 3)
    return dst


def center_slot_action(m: int):
    dst = [0] * N_CENTERS
    for b in range(N_CENTERS):
        dst[Z_SRC[m][b]] = b
    return tuple(dst)


# --------------------------------------------------------------------------
# Wing sticker transport: arrangement of piece w sitting in slot s
# --------------------------------------------------------------------------


def _build_wing_arrangement():
    """WING_ARR[w][s]: which facelet of slot s carries piece w's first home
    sticker.  A wing fits each slot in exactly one way, so a BFS transport
    from the home placement is globally consistent; the assertion guards
    that property."""
    arr = [[-1] * N_EDGES for _ in range(N_EDGES)]
    for w in range(N_EDGES):
        arr[w][w] = 0
        frontier = [w]
        while frontier:
            nxt = []
            for s in frontier:
                for m in range(N_MOVES):
                    dst = edge_slot_action(m)[s]
                    val = arr[w][s] ^ E_FLIP[m][dst]
                    if arr[w][dst] == -1:
                        arr[w][dst] = val
                        nxt.append(dst)
                    else:
                        assert arr[w][dst] == val, "wing arrangement conflict"
            frontier = nxt
    return tuple(tuple(row) for row in arr)


_EDGE_DST = tuple(edge_slot_action(m) for m in range(N_MOVES))
_CENTER_DST = tuple(center_slot_action(m) for m in range(N_MOVES))


def _build_wing_arrangement_fast():
    arr = [[-1] * N_EDGES for _ in range(N_EDGES)]
    for w in range(N_EDGES):
        arr[w][w] = 0
        frontier = [w]
        seen = {w}
        while frontier:
            nxt = []
            for s in frontier:
                for m in range(N_MOVES):
                    dst = _EDGE_DST[m][s]
                    val = arr[w][s] ^ E_FLIP[m][dst]
                    if arr[w][dst] == -1:
                        arr[w][dst] = val
                        if dst not in seen:
                            seen.add(dst)
                            nxt.append(dst)
                    else:
                        assert arr[w][dst] == val, "wing arrangement conflict"
            frontier = nxt
        assert len(seen) == N_EDGES
    return tuple(tuple(row) for row in arr)


WING_ARR = _build_wing_arrangement_fast()


def pair_assignment_bit(w: int, s: int) -> int:
    """0 when wing w occupies the slot matching its home lo/hi side."""
    return int(IS_HI_SLOT[w] != IS_HI_SLOT[s])


# --------------------------------------------------------------------------
# Pair placement graph: (position, assignment bit) under complete-pair moves
# --------------------------------------------------------------------------


def pair_moves_whole(m: int) -> bool:
    """True when move m never separates a wing pair (outer slices only)."""
    return MOVE_LAYER[m] in (0, 3)


def pair_action(m: int):
    """(position, bit) -> (position, bit) for outer moves."""
    assert pair_moves_whole(m)
    act = {}
    for q, (lo, hi) in enumerate(POSITIONS):
        dlo = _EDGE_DST[m][lo]
        dhi = _EDGE_DST[m][hi]
        q2 = POSITION_OF_SLOT[dlo]
        assert POSITION_OF_SLOT[dhi] == q2, "pair split by an outer move"
        flip = int(IS_HI_SLOT[dlo])
        for bit in (0, 1):
            act[(q, bit)] = (q2, bit ^ flip)
    return act


def pair_components(move_ids) -> dict:
    """Connected components of the (position, bit) graph under the given
    whole-pair moves.  Returns {(q, bit): component_id}."""
    comp = {}
    actions = [pair_action(m) for m in move_ids]
    cid = 0
    for start in [(q, b) for q in range(N_POSITIONS) for b in (0, 1)]:
        if start in comp:
            continue
        comp[start] = cid
        frontier = [start]
        while frontier:
            nxt = []
            for node in frontier:
                for act in actions:
                    other = act[node]
                    if other not in comp:
                        comp[other] = cid
                        nxt.append(other)
            frontier = nxt
        cid += 1
    return comp


# --------------------------------------------------------------------------
# Wing slot classes: orbits when the inner slices are limited to half turns
# --------------------------------------------------------------------------


def slot_orbits(move_ids):
    """Orbit id per wing slot under the given moves."""
    orbit = [-1] * N_EDGES
    oid = 0
    for start in range(N_EDGES):
        if orbit[start] != -1:
            continue
        orbit[start] = oid
        frontier = [start]
        while frontier:
            nxt = []
            for s in frontier:
                for m in move_ids:
                    d = _EDGE_DST[m][s]
                    if orbit[d] == -1:
                        orbit[d] = oid
                        nxt.append(d)
            frontier = nxt
        oid += 1
    return tuple(orbit)


def perm_parity(perm) -> int:
    seen = [False] * len(perm)
    parity = 0
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity
