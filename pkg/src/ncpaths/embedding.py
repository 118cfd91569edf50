"""Dart-based combinatorial embedding of an undirected planar graph.

The embedding is the ground truth for every walk in the library: rotation
lists are stored counterclockwise, the external face is traversed clockwise
(so the unbounded region lies to the left of its darts), and the leftmost
turn out of a dart is the ccw-predecessor sweep from its reverse.

Edge e owns darts 2e (lo -> hi by vertex id) and 2e+1, so rev(d) = d ^ 1 and
all per-dart state lives in flat arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from .errors import (
    Disconnected,
    EnclosesOuterFace,
    MalformedRotation,
    NotAClosedWalk,
    NotPlanar,
    OuterNotAFace,
    OuterNotSimple,
    ParseError,
)


@dataclass(frozen=True)
class Dart:
    """Materialized view of a dart, mainly for debugging and tests."""

    id: int
    tail: int
    head: int

    @property
    def rev(self) -> int:
        return self.id ^ 1


class FaceSet:
    """Face id per dart plus the dart cycle of every face."""

    def __init__(self, face_id: np.ndarray, n_faces: int, emb: "PlanarEmbedding"):
        self.face_id = face_id
        self.n_faces = n_faces
        self._emb = emb

    def darts_of(self, fid: int) -> list[int]:
        start = int(np.flatnonzero(self.face_id == fid)[0])
        return self._emb.face_walk(start)

    def __len__(self) -> int:
        return self.n_faces


@dataclass
class RegionSubgraph:
    """Region R_C bounded by a cycle: the cycle plus everything inside it."""

    vertex_mask: np.ndarray  # (n,) bool
    edge_mask: np.ndarray    # (m,) bool

    @property
    def vertices(self) -> list[int]:
        return [int(v) for v in np.flatnonzero(self.vertex_mask)]

    @property
    def edges(self) -> list[int]:
        return [int(e) for e in np.flatnonzero(self.edge_mask)]

    def has_vertex(self, v: int) -> bool:
        return bool(self.vertex_mask[v])


class PlanarEmbedding:
    """Immutable rotation system with a distinguished simple external face.

    Build through :func:`build_embedding`; after construction the object is
    read-only and safe to share between threads.
    """

    def __init__(self, rot_start, rot_darts, rot_pos, dart_head,
                 face_id, n_faces, outer_verts, outer_darts, outer_pos,
                 coords=None):
        self.n = rot_start.shape[0] - 1
        self.m = dart_head.shape[0] // 2
        self.rot_start = rot_start
        self.rot_darts = rot_darts
        self.rot_pos = rot_pos
        self.dart_head = dart_head
        self.face_id = face_id
        self.n_faces = n_faces
        self.outer_verts = outer_verts
        self.outer_darts = outer_darts
        self.outer_pos = outer_pos
        self.outer_face = int(face_id[outer_darts[0]])
        self.coords = coords
        self._adj = None  # lazy python adjacency for the oracles

    # -- elementary dart queries -------------------------------------------

    @staticmethod
    def rev(d: int) -> int:
        return d ^ 1

    def head(self, d: int) -> int:
        return int(self.dart_head[d])

    def tail(self, d: int) -> int:
        return int(self.dart_head[d ^ 1])

    def dart(self, d: int) -> Dart:
        return Dart(d, self.tail(d), self.head(d))

    def degree(self, v: int) -> int:
        return int(self.rot_start[v + 1] - self.rot_start[v])

    def rotation(self, v: int) -> list[int]:
        """Outgoing darts at v in counterclockwise order."""
        return [int(d) for d in
                self.rot_darts[self.rot_start[v]:self.rot_start[v + 1]]]

    def dart_between(self, u: int, v: int) -> Optional[int]:
        """The dart u -> v, or None when uv is not an edge (O(deg u))."""
        for j in range(self.rot_start[u], self.rot_start[u + 1]):
            d = int(self.rot_darts[j])
            if self.dart_head[d] == v:
                return d
        return None

    def ccw_pred(self, d: int) -> int:
        """Previous outgoing dart at tail(d) in counterclockwise order."""
        v = self.tail(d)
        s = self.rot_start[v]
        deg = self.rot_start[v + 1] - s
        return int(self.rot_darts[s + (self.rot_pos[d] - 1) % deg])

    def ccw_succ(self, d: int) -> int:
        v = self.tail(d)
        s = self.rot_start[v]
        deg = self.rot_start[v + 1] - s
        return int(self.rot_darts[s + (self.rot_pos[d] + 1) % deg])

    # -- faces ---------------------------------------------------------------

    def face_successor_left(self, d: int) -> int:
        """Next dart along the boundary of the face lying left of d."""
        return self.ccw_pred(d ^ 1)

    def face_walk(self, d: int) -> list[int]:
        """All darts of the face orbit containing d, starting at d."""
        out = [d]
        cur = self.face_successor_left(d)
        while cur != d:
            out.append(cur)
            cur = self.face_successor_left(cur)
        return out

    def faces(self) -> FaceSet:
        return FaceSet(self.face_id, self.n_faces, self)

    # -- turn operators -------------------------------------------------------

    def turn_left(self, d: int, member: Callable[[int], bool]) -> Optional[int]:
        """First member dart strictly left of rev(d) (ccw-predecessor sweep);
        rev(d) itself only as a dead-end U-turn; None if nothing is a member.
        """
        r = d ^ 1
        c = self.ccw_pred(r)
        while c != r:
            if member(c):
                return c
            c = self.ccw_pred(c)
        return r if member(r) else None

    def turn_right(self, d: int, member: Callable[[int], bool]) -> Optional[int]:
        r = d ^ 1
        c = self.ccw_succ(r)
        while c != r:
            if member(c):
                return c
            c = self.ccw_succ(c)
        return r if member(r) else None

    # -- external boundary helpers ---------------------------------------------

    def on_outer(self, v: int) -> bool:
        return bool(self.outer_pos[v] >= 0)

    def boundary_len(self) -> int:
        return len(self.outer_verts)

    def outer_next(self, v: int) -> int:
        """Clockwise successor of v on the external boundary."""
        p = int(self.outer_pos[v])
        return int(self.outer_verts[(p + 1) % len(self.outer_verts)])

    def outer_prev(self, v: int) -> int:
        p = int(self.outer_pos[v])
        return int(self.outer_verts[(p - 1) % len(self.outer_verts)])

    def boundary_dart_cw(self, v: int) -> int:
        """Dart leaving v clockwise along the external boundary."""
        return int(self.outer_darts[self.outer_pos[v]])

    # -- adjacency view for the oracles ----------------------------------------

    def adjacency(self) -> tuple[list[list[int]], list[list[int]]]:
        """(neighbor vertex ids, parallel edge ids) per vertex; cached."""
        if self._adj is None:
            nbr = []
            eids = []
            heads = self.dart_head
            for v in range(self.n):
                ds = self.rot_darts[self.rot_start[v]:self.rot_start[v + 1]]
                nbr.append([int(heads[d]) for d in ds])
                eids.append([int(d) >> 1 for d in ds])
            self._adj = (nbr, eids)
        return self._adj

    # -- regions ---------------------------------------------------------------

    def dual_groups(self, wall_edge: np.ndarray) -> np.ndarray:
        """Group faces connected through non-wall edges; returns group id per
        face.  Wall edges act as barriers."""
        group = np.full(self.n_faces, -1, dtype=np.int64)
        fid = self.face_id
        ngroups = 0
        for f0 in range(self.n_faces):
            if group[f0] >= 0:
                continue
            group[f0] = ngroups
            stack = [f0]
            while stack:
                f = stack.pop()
                for d in self._face_darts_cache()[f]:
                    if wall_edge[d >> 1]:
                        continue
                    g = int(fid[d ^ 1])
                    if group[g] < 0:
                        group[g] = ngroups
                        stack.append(g)
            ngroups += 1
        return group

    def _face_darts_cache(self) -> list[list[int]]:
        cache = getattr(self, "_face_darts", None)
        if cache is None:
            cache = [[] for _ in range(self.n_faces)]
            for d in range(2 * self.m):
                cache[int(self.face_id[d])].append(d)
            self._face_darts = cache
        return cache

    def region_of_cycle(self, walk: Sequence[int]) -> RegionSubgraph:
        """Region bounded by a closed dart walk: the walk plus every face on
        its finite side, extracted by a dual flood fill."""
        if not walk:
            raise NotAClosedWalk("empty walk")
        for a, b in zip(walk, list(walk[1:]) + [walk[0]]):
            if self.head(a) != self.tail(b):
                raise NotAClosedWalk(
                    f"dart {a} head {self.head(a)} != dart {b} tail {self.tail(b)}")
        wall = np.zeros(self.m, dtype=bool)
        for d in walk:
            wall[d >> 1] = True
        group = self.dual_groups(wall)
        outer_grp = group[self.outer_face]
        left_grp = group[self.face_id[walk[0]]]
        right_grp = group[self.face_id[walk[0] ^ 1]]
        if left_grp == right_grp:
            raise EnclosesOuterFace("walk does not bound a finite region")
        # the unbounded side of a separating walk always floods into f^inf
        if left_grp == outer_grp:
            inner = right_grp
        elif right_grp == outer_grp:
            inner = left_grp
        else:
            raise EnclosesOuterFace("neither side of the walk reaches f^inf")
        return self._region_from_groups(group, {int(inner)}, wall)

    def _region_from_groups(self, group, inner_groups, wall) -> RegionSubgraph:
        emask = np.zeros(self.m, dtype=bool)
        vmask = np.zeros(self.n, dtype=bool)
        fid = self.face_id
        heads = self.dart_head
        for e in range(self.m):
            gl = int(group[fid[2 * e]])
            gr = int(group[fid[2 * e + 1]])
            if wall[e]:
                if gl in inner_groups or gr in inner_groups:
                    emask[e] = True
            else:
                if gl in inner_groups:  # gl == gr for non-wall edges
                    emask[e] = True
            if emask[e]:
                vmask[heads[2 * e]] = True
                vmask[heads[2 * e + 1]] = True
        return RegionSubgraph(vmask, emask)

    def subgraph_face_regions(self, edge_member: np.ndarray
                              ) -> list[RegionSubgraph]:
        """Regions of the interior faces of the subgraph selected by
        edge_member (which must contain the external cycle)."""
        group = self.dual_groups(edge_member)
        outer_grp = int(group[self.outer_face])
        regions = []
        for g in range(int(group.max()) + 1):
            if g == outer_grp:
                continue
            regions.append(self._region_from_groups(group, {g}, edge_member))
        return regions

    # -- output -----------------------------------------------------------------

    def rotations_as_lists(self) -> list[list[int]]:
        nbr, _ = self.adjacency()
        return [list(x) for x in nbr]


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def build_embedding(rotations: Sequence[Sequence[int]],
                    outer: Sequence[int],
                    coords: Optional[Sequence[tuple[float, float]]] = None,
                    cw_rotations: bool = False) -> PlanarEmbedding:
    """Validate rotation lists plus an outer-face hint into an embedding.

    rotations[v] lists the neighbors of v in counterclockwise geometric
    order (clockwise input is accepted behind cw_rotations, which reverses
    every list on load).  outer is the external face as a clockwise vertex
    cycle and must match a face orbit exactly.
    """
    n = len(rotations)
    if cw_rotations:
        rotations = [list(reversed(r)) for r in rotations]
    degs = np.array([len(r) for r in rotations], dtype=np.int64)
    rot_start = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(degs, out=rot_start[1:])
    flat = np.empty(int(rot_start[-1]), dtype=np.int64)
    pos = 0
    for v, lst in enumerate(rotations):
        for u in lst:
            flat[pos] = u
            pos += 1
    return _build_from_csr(n, rot_start, flat, outer, coords)


def build_embedding_arrays(rot_start: np.ndarray, rot_neighbors: np.ndarray,
                           outer: Sequence[int],
                           coords: Optional[np.ndarray] = None
                           ) -> PlanarEmbedding:
    """CSR fast path used by the generators for large instances."""
    n = rot_start.shape[0] - 1
    return _build_from_csr(n, rot_start.astype(np.int64),
                           rot_neighbors.astype(np.int64), outer, coords)


def _build_from_csr(n, rot_start, flat, outer, coords) -> PlanarEmbedding:
    if n < 3:
        raise MalformedRotation(f"need at least 3 vertices, got {n}")
    if flat.size and (flat.min() < 0 or flat.max() >= n):
        raise MalformedRotation("neighbor id out of range")
    tails = np.repeat(np.arange(n, dtype=np.int64), np.diff(rot_start))
    if np.any(tails == flat):
        v = int(tails[np.flatnonzero(tails == flat)[0]])
        raise MalformedRotation(f"self-loop at vertex {v}")

    lo = np.minimum(tails, flat)
    hi = np.maximum(tails, flat)
    key = lo * n + hi
    uniq, inverse, counts = np.unique(key, return_inverse=True,
                                      return_counts=True)
    if np.any(counts != 2):
        bad = int(uniq[np.flatnonzero(counts != 2)[0]])
        u, v = divmod(bad, n)
        raise MalformedRotation(
            f"edge {u}-{v} appears {int(counts[counts != 2][0])} time(s); "
            "needs exactly one entry in each endpoint list")
    # the two occurrences of every edge must come from opposite endpoints
    order = np.argsort(inverse, kind="stable")
    t_sorted = tails[order]
    pair_ok = (np.minimum(t_sorted[0::2], t_sorted[1::2]) == uniq // n) & \
              (np.maximum(t_sorted[0::2], t_sorted[1::2]) == uniq % n)
    if not np.all(pair_ok):
        bad = int(uniq[np.flatnonzero(~pair_ok)[0]])
        u, v = divmod(bad, n)
        raise MalformedRotation(
            f"edge {u}-{v} duplicated in one endpoint list (parallel edge?)")

    m = uniq.shape[0]
    # dart 2e runs lo -> hi; an entry (tail, nbr) is dart 2e + (tail > nbr)
    rot_darts = (2 * inverse + (tails > flat)).astype(np.int32)
    dart_head = np.empty(2 * m, dtype=np.int32)
    dart_head[0::2] = (uniq % n).astype(np.int32)
    dart_head[1::2] = (uniq // n).astype(np.int32)
    rot_pos = np.empty(2 * m, dtype=np.int32)
    within = (np.arange(rot_darts.shape[0], dtype=np.int64)
              - np.repeat(rot_start[:-1], np.diff(rot_start)))
    rot_pos[rot_darts] = within.astype(np.int32)

    if _kernels.reach_count(rot_start, rot_darts, dart_head, n) != n:
        raise Disconnected("graph is not connected")

    face_id = np.empty(2 * m, dtype=np.int32)
    n_faces = _kernels.face_orbits(rot_start, rot_darts, rot_pos, dart_head,
                                   face_id)
    if n - m + n_faces != 2:
        raise NotPlanar(
            f"Euler check failed: n={n} m={m} f={n_faces} gives "
            f"{n - m + n_faces} != 2")

    outer = [int(v) for v in outer]
    if len(outer) < 3:
        raise OuterNotAFace("outer hint needs at least 3 vertices")
    if len(set(outer)) != len(outer):
        raise OuterNotSimple("outer hint repeats a vertex")
    if any(v < 0 or v >= n for v in outer):
        raise OuterNotAFace("outer hint lists an unknown vertex")

    emb = PlanarEmbedding(rot_start, rot_darts, rot_pos, dart_head,
                          face_id, n_faces,
                          np.array(outer, dtype=np.int32),
                          np.zeros(len(outer), dtype=np.int32),
                          np.full(n, -1, dtype=np.int32), coords=None)
    d0 = emb.dart_between(outer[0], outer[1])
    if d0 is None:
        raise OuterNotAFace(f"{outer[0]}-{outer[1]} is not an edge")
    orbit = emb.face_walk(d0)
    if len(orbit) != len(outer) or \
            [emb.tail(d) for d in orbit] != outer:
        raise OuterNotAFace("outer hint does not trace a face orbit")
    outer_darts = np.array(orbit, dtype=np.int32)
    outer_pos = np.full(n, -1, dtype=np.int32)
    for i, v in enumerate(outer):
        outer_pos[v] = i
    emb.outer_darts = outer_darts
    emb.outer_pos = outer_pos
    emb.outer_face = int(face_id[d0])
    if coords is not None:
        arr = np.asarray(coords, dtype=np.float64)
        if arr.shape != (n, 2):
            raise MalformedRotation("coords must give one (x, y) per vertex")
        emb.coords = arr
    return emb


# ---------------------------------------------------------------------------
# Instance text format
# ---------------------------------------------------------------------------
#
#   line 1:       n m
#   next n lines: v deg u_1 ... u_deg     (neighbors of v, ccw)
#   next line:    outer r w_1 ... w_r     (external face, clockwise)
#   optional:     coords                  (then n lines "v x y")
#   optional:     weights                 (then m lines "u v w")
#
# All ids are 0-based.  Parse errors report the offending line number.

def parse_instance_text(text: str, path: str = "<string>"):
    """Parse the instance format; returns (rotations, outer, coords, weights).

    weights is a dict edge-key (u, v) with u < v -> positive int, or None.
    """
    lines = text.splitlines()
    idx = 0
    cur = 0  # index of the line being parsed, for error reports

    def fail(msg, line=None):
        raise ParseError(path, (cur if line is None else line) + 1, msg)

    def next_line():
        nonlocal idx, cur
        while idx < len(lines) and not lines[idx].strip():
            idx += 1
        if idx >= len(lines):
            fail("unexpected end of file", len(lines) - 1)
        cur = idx
        idx += 1
        return lines[cur].split()

    tok = next_line()
    if len(tok) != 2:
        fail("expected 'n m'")
    try:
        n, m = int(tok[0]), int(tok[1])
    except ValueError:
        fail("expected integers 'n m'")
    rotations: list[list[int]] = [[] for _ in range(n)]
    seen = [False] * n
    for _ in range(n):
        tok = next_line()
        try:
            v = int(tok[0])
            deg = int(tok[1])
            nbrs = [int(x) for x in tok[2:]]
        except (ValueError, IndexError):
            fail("expected 'v deg u_1 ... u_deg'")
        if not (0 <= v < n) or seen[v]:
            fail(f"bad or repeated vertex id {tok[0]}")
        if len(nbrs) != deg:
            fail(f"vertex {v}: {len(nbrs)} neighbors listed, {deg} declared")
        seen[v] = True
        rotations[v] = nbrs
    tok = next_line()
    if not tok or tok[0] != "outer":
        fail("expected 'outer r w_1 ... w_r'")
    try:
        r = int(tok[1])
        outer = [int(x) for x in tok[2:]]
    except (ValueError, IndexError):
        fail("expected 'outer r w_1 ... w_r'")
    if len(outer) != r:
        fail(f"outer lists {len(outer)} vertices, {r} declared")

    coords = None
    weights = None
    while True:
        while idx < len(lines) and not lines[idx].strip():
            idx += 1
        if idx >= len(lines):
            break
        header = lines[idx].split()
        if header[0] == "coords":
            idx += 1
            coords = [(0.0, 0.0)] * n
            got = [False] * n
            for _ in range(n):
                tok = next_line()
                try:
                    v = int(tok[0])
                    x, y = float(tok[1]), float(tok[2])
                except (ValueError, IndexError):
                    fail("expected 'v x y'")
                if not (0 <= v < n) or got[v]:
                    fail(f"bad or repeated coord vertex {tok[0]}")
                got[v] = True
                coords[v] = (x, y)
        elif header[0] == "weights":
            idx += 1
            weights = {}
            for _ in range(m):
                tok = next_line()
                try:
                    u, v, w = int(tok[0]), int(tok[1]), int(tok[2])
                except (ValueError, IndexError):
                    fail("expected 'u v w'")
                key = (min(u, v), max(u, v))
                if key in weights:
                    fail(f"duplicate weight for edge {u}-{v}")
                weights[key] = w
        else:
            cur = idx
            fail(f"unexpected content {header[0]!r}")
    declared_edges = sum(len(r_) for r_ in rotations) // 2
    if declared_edges != m:
        raise ParseError(path, 1,
                         f"rotations define {declared_edges} edges, m={m}")
    return rotations, outer, coords, weights


def load_instance(path: str, cw_rotations: bool = False
                  ) -> tuple[PlanarEmbedding, Optional[dict]]:
    """Read an instance file; returns (embedding, weights-or-None)."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    rotations, outer, coords, weights = parse_instance_text(text, path)
    emb = build_embedding(rotations, outer, coords=coords,
                          cw_rotations=cw_rotations)
    return emb, weights


def format_instance(rotations: Sequence[Sequence[int]], outer: Sequence[int],
                    coords=None, weights=None) -> str:
    """Canonical text rendering (bit-exact round trips with the parser)."""
    m = sum(len(r) for r in rotations) // 2
    out = [f"{len(rotations)} {m}"]
    for v, lst in enumerate(rotations):
        out.append(f"{v} {len(lst)} " + " ".join(str(u) for u in lst)
                   if lst else f"{v} 0")
    out.append(f"outer {len(outer)} " + " ".join(str(w) for w in outer))
    if coords is not None:
        out.append("coords")
        for v, (x, y) in enumerate(coords):
            out.append(f"{v} {float(x)!r} {float(y)!r}")
    if weights is not None:
        out.append("weights")
        for (u, v) in sorted(weights):
            out.append(f"{u} {v} {weights[(u, v)]}")
    return "\n".join(out) + "\n"


def save_instance(path: str, rotations, outer, coords=None, weights=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_instance(rotations, outer, coords, weights))


# ---------------------------------------------------------------------------
# Pairs file:  line 1 "k", then k lines "a b"
# ---------------------------------------------------------------------------

def load_pairs(path: str) -> list[tuple[int, int]]:
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.split() for ln in fh.read().splitlines() if ln.strip()]
    if not lines:
        raise ParseError(path, 1, "empty pairs file")
    try:
        k = int(lines[0][0])
    except (ValueError, IndexError):
        raise ParseError(path, 1, "expected pair count 'k'")
    if len(lines) - 1 != k:
        raise ParseError(path, 1, f"{len(lines) - 1} pairs listed, k={k}")
    pairs = []
    for i, tok in enumerate(lines[1:]):
        try:
            pairs.append((int(tok[0]), int(tok[1])))
        except (ValueError, IndexError):
            raise ParseError(path, i + 2, "expected 'a b'")
    return pairs


def save_pairs(path: str, pairs: Iterable[tuple[int, int]]):
    pairs = list(pairs)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{len(pairs)}\n")
        for a, b in pairs:
            fh.write(f"{a} {b}\n")
