"""Array kernels for the hot loops.

Every function here works on flat numpy arrays only, so the same code runs
either jit-compiled through numba or as plain Python (set NCPATHS_NO_JIT=1
to force the interpreted path, e.g. for coverage or debugging).

Dart conventions used throughout:
  * edge e owns darts 2e (lo -> hi) and 2e+1 (hi -> lo); rev(d) = d ^ 1
  * rot_darts is the CSR concatenation of per-vertex outgoing darts in
    counterclockwise order; rot_pos[d] is d's index inside its tail's list
"""

import os

import numpy as np

try:  # pragma: no cover - exercised implicitly by every jitted call
    from numba import njit as _njit
except ImportError:  # pragma: no cover
    _njit = None

JIT_ENABLED = _njit is not None and not os.environ.get("NCPATHS_NO_JIT")


def _maybe_jit(fn):
    if JIT_ENABLED:
        return _njit(cache=True)(fn)
    return fn


NEVER = np.int32(2**31 - 1)  # stamp value meaning "not in any X_i"


# ---------------------------------------------------------------------------
# Embedding construction helpers
# ---------------------------------------------------------------------------

@_maybe_jit
def face_orbits(rot_start, rot_darts, rot_pos, dart_head, face_id):
    """Label every dart with its left-face orbit id; returns orbit count.

    The face permutation is d -> ccw-predecessor of rev(d) in the rotation
    of head(d); iterating it walks the boundary of the face left of d.
    """
    nd = dart_head.shape[0]
    for d in range(nd):
        face_id[d] = -1
    nf = 0
    for d0 in range(nd):
        if face_id[d0] >= 0:
            continue
        d = d0
        while face_id[d] < 0:
            face_id[d] = nf
            h = dart_head[d]
            r = d ^ 1
            s = rot_start[h]
            deg = rot_start[h + 1] - s
            p = rot_pos[r] - 1
            if p < 0:
                p += deg
            d = rot_darts[s + p]
        nf += 1
    return nf


@_maybe_jit
def reach_count(rot_start, rot_darts, dart_head, n):
    """Number of vertices reachable from vertex 0 (connectivity check)."""
    seen = np.zeros(n, dtype=np.uint8)
    queue = np.empty(n, dtype=np.int64)
    seen[0] = 1
    queue[0] = 0
    head = 0
    tail = 1
    while head < tail:
        v = queue[head]
        head += 1
        for j in range(rot_start[v], rot_start[v + 1]):
            w = dart_head[rot_darts[j]]
            if seen[w] == 0:
                seen[w] = 1
                queue[tail] = w
                tail += 1
    return tail


# ---------------------------------------------------------------------------
# Leftmost shortest-path trees
# ---------------------------------------------------------------------------

@_maybe_jit
def leftmost_bfs(rot_start, rot_darts, rot_pos, dart_head, root, root_dart,
                 parent, depth, queue):
    """Canonical leftmost BFS tree.

    Parents are assigned on first visit while scanning each vertex's
    outgoing darts in leftmost-first order relative to the arrival dart
    (ccw-predecessor sweep).  At the root the sweep starts from the outer
    boundary dart leaving it clockwise (root_dart).
    """
    n = parent.shape[0]
    for i in range(n):
        parent[i] = -1
        depth[i] = -1
    depth[root] = 0
    queue[0] = root
    head = 0
    tail = 1
    while head < tail:
        v = queue[head]
        head += 1
        s = rot_start[v]
        deg = rot_start[v + 1] - s
        if v == root:
            d = root_dart
        else:
            # first candidate: ccw-predecessor of rev(arrival dart)
            r = parent[v] ^ 1
            p = rot_pos[r] - 1
            if p < 0:
                p += deg
            d = rot_darts[s + p]
        dv = depth[v]
        for _ in range(deg):
            w = dart_head[d]
            if depth[w] < 0:
                depth[w] = dv + 1
                parent[w] = d
                queue[tail] = w
                tail += 1
            p = rot_pos[d] - 1
            if p < 0:
                p += deg
            d = rot_darts[s + p]


@_maybe_jit
def parent_diff(old_parent, new_parent, out_darts):
    """Darts whose head gained that parent dart in the transition.

    Writes into out_darts (capacity n) and returns the count; heads appear
    in ascending vertex order.
    """
    n = old_parent.shape[0]
    cnt = 0
    for v in range(n):
        d = new_parent[v]
        if d >= 0 and d != old_parent[v]:
            out_darts[cnt] = d
            cnt += 1
    return cnt


# ---------------------------------------------------------------------------
# Supergraph stamping
# ---------------------------------------------------------------------------

@_maybe_jit
def stamp_walks(heads, hcount, parent, dart_head, stamp, vertex_stamp,
                edge_stamp, connect_mode):
    """Backward tree walks that stamp vertices and edges until an
    already-stamped vertex is met.

    Two gates on each listed start vertex:
      * connect_mode=0 (changed heads): only starts already stamped
        qualify, and the first backward step is taken unconditionally so
        the changed parent dart's edge always enters the subgraph.
      * connect_mode=1 (terminal hookup): an already-stamped start adds
        nothing; otherwise the start is stamped and walked backward.
    Either way every added segment runs between two stamped vertices.

    Returns (steps, skipped, error_flag, stop_vertex); error_flag is 1 if
    a walk fell off the root without meeting a stamped vertex (upstream
    bug), and stop_vertex ends the last walk that ran (-1 if none).
    """
    steps = 0
    skipped = 0
    err = 0
    stop_v = np.int32(-1)
    for j in range(hcount):
        h = heads[j]
        if connect_mode == 0:
            if vertex_stamp[h] == NEVER:
                skipped += 1
                continue
        else:
            if vertex_stamp[h] != NEVER:
                continue
            vertex_stamp[h] = stamp
        v = h
        d = parent[v]
        if d < 0:
            continue  # start is the tree root
        while True:
            e = d >> 1
            if edge_stamp[e] == NEVER:
                edge_stamp[e] = stamp
            steps += 1
            v = dart_head[d ^ 1]
            if vertex_stamp[v] != NEVER:
                break
            vertex_stamp[v] = stamp
            d = parent[v]
            if d < 0:
                err = 1
                break
        stop_v = v
    return steps, skipped, err, stop_v


# ---------------------------------------------------------------------------
# Union extraction walks
# ---------------------------------------------------------------------------

@_maybe_jit
def build_restricted_rotation(rot_start, rot_darts, edge_stamp,
                              xrot_start, xrot_darts, xrot_pos):
    """CSR rotation sublists keeping only darts whose edge entered some X_i.

    xrot_pos[d] is d's index within its tail's restricted list (-1 when the
    dart is not a member).
    """
    n = rot_start.shape[0] - 1
    nd = rot_darts.shape[0]
    for d in range(nd):
        xrot_pos[d] = -1
    out = 0
    for v in range(n):
        xrot_start[v] = out
        for j in range(rot_start[v], rot_start[v + 1]):
            d = rot_darts[j]
            if edge_stamp[d >> 1] != NEVER:
                xrot_darts[out] = d
                xrot_pos[d] = out - xrot_start[v]
                out += 1
    xrot_start[n] = out
    return out


@_maybe_jit
def turn_walk(start, goal, level, leftward, rot_start, rot_darts, rot_pos,
              xrot_start, xrot_darts, xrot_pos, edge_stamp, dart_head,
              y_dart, anchor, out_darts, max_steps):
    """Leftmost (or rightmost) walk in X_level from start toward goal.

    Stops when goal is reached, or right before the first candidate dart d
    with d in Y (leftward) / rev(d) in Y (rightward).  The walk starts as if
    arriving along the external boundary, encoded by `anchor` = rev(virtual
    arrival dart), scanned over the full rotation of the start vertex.

    Returns (ndarts, stop_dart, status) with status 0 = reached goal,
    1 = stopped on a union dart, 2 = walk escaped (violated assumption).
    """
    cnt = 0
    cur = start
    arrival = np.int32(-1)
    skips = 0
    while True:
        if cur == goal:
            return cnt, np.int32(-1), 0, skips
        nxt = np.int32(-1)
        if arrival < 0:
            # virtual boundary arrival: sweep the full rotation of `cur`
            # starting beside the anchor, skipping non-member darts
            s = rot_start[cur]
            deg = rot_start[cur + 1] - s
            p = rot_pos[anchor]
            for _ in range(deg):
                if leftward:
                    p -= 1
                    if p < 0:
                        p += deg
                else:
                    p += 1
                    if p >= deg:
                        p -= deg
                d = rot_darts[s + p]
                if edge_stamp[d >> 1] <= level:
                    nxt = d
                    break
                skips += 1
        else:
            r = arrival ^ 1
            s = xrot_start[cur]
            deg = xrot_start[cur + 1] - s
            p = xrot_pos[r]
            for _ in range(deg):
                if leftward:
                    p -= 1
                    if p < 0:
                        p += deg
                else:
                    p += 1
                    if p >= deg:
                        p -= deg
                d = xrot_darts[s + p]
                if edge_stamp[d >> 1] <= level:
                    nxt = d
                    break
                skips += 1
        if nxt < 0:
            return cnt, np.int32(-1), 2, skips
        if leftward:
            if y_dart[nxt]:
                return cnt, nxt, 1, skips
        else:
            if y_dart[nxt ^ 1]:
                return cnt, nxt, 1, skips
        if arrival >= 0 and nxt == (arrival ^ 1) and cur != goal:
            # dead-end U-turn; the walk should have ended at the goal
            return cnt, np.int32(-1), 2, skips
        if cnt >= max_steps:
            return cnt, np.int32(-1), 2, skips
        out_darts[cnt] = nxt
        cnt += 1
        arrival = nxt
        cur = dart_head[nxt]


# ---------------------------------------------------------------------------
# Plain BFS (used by builders; the verify module keeps its own pure-Python
# oracle implementation on purpose)
# ---------------------------------------------------------------------------

@_maybe_jit
def bfs_depths(rot_start, rot_darts, dart_head, src, depth, queue):
    n = depth.shape[0]
    for i in range(n):
        depth[i] = -1
    depth[src] = 0
    queue[0] = src
    head = 0
    tail = 1
    while head < tail:
        v = queue[head]
        head += 1
        dv = depth[v]
        for j in range(rot_start[v], rot_start[v + 1]):
            w = dart_head[rot_darts[j]]
            if depth[w] < 0:
                depth[w] = dv + 1
                queue[tail] = w
                tail += 1
    return tail
