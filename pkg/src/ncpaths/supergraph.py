"""Nested supergraph sequence X_1 ⊆ ... ⊆ X_k containing one shortest path
per terminal pair.

Membership is encoded by iteration stamps: an edge/vertex belongs to X_i
iff its stamp is <= i.  Iteration i stamps (a) backward tree walks from
every vertex already in the subgraph whose parent dart changed in the
window between consecutive sources, and (b) one backward walk from t_i,
each stopping at the first already-stamped vertex.

Gating (a) on current membership matters: a changed head outside the
subgraph would hang a dangling path on a non-terminal degree-one vertex,
and leftmost walks can run into such a dead end (observed on subdivided
grids).  With the gate, every added segment joins two subgraph vertices,
degree-one vertices stay confined to terminals, and each member vertex's
whole current-tree path lies in the subgraph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import _kernels
from .embedding import PlanarEmbedding, RegionSubgraph
from .errors import WalkEscaped
from .mssp import SptSequence
from .terminals import NormalizedInstance

NEVER = _kernels.NEVER


@dataclass
class SupergraphTimeline:
    """Stamped membership tables plus per-iteration logs."""

    emb: PlanarEmbedding
    inst: NormalizedInstance
    edge_stamp: np.ndarray    # (m,) int32, iteration the edge entered X, NEVER else
    vertex_stamp: np.ndarray  # (n,) int32
    h_sets: list[np.ndarray]  # per pair: heads of window change darts
    eta_log: list[tuple[int, int]]  # per pair: (t_i, walk stop vertex)
    counters: dict = field(default_factory=dict)

    @property
    def k(self) -> int:
        return self.inst.k

    def edge_mask(self, i: int) -> np.ndarray:
        """Boolean edge membership of X_i (i in 0..k; X_0 is empty)."""
        return self.edge_stamp <= i

    def dart_member(self, i: int) -> Callable[[int], bool]:
        """O(1) dart predicate for X_i."""
        stamps = self.edge_stamp

        def member(d: int) -> bool:
            return stamps[d >> 1] <= i

        return member

    def x_edges(self, i: int) -> list[int]:
        return [int(e) for e in np.flatnonzero(self.edge_mask(i))]

    def dump(self) -> str:
        """`edge u v stamp` lines for stamped edges, sorted by endpoints."""
        emb = self.emb
        rows = []
        for e in np.flatnonzero(self.edge_stamp != NEVER):
            u, v = emb.tail(2 * int(e)), emb.head(2 * int(e))
            rows.append((min(u, v), max(u, v), int(self.edge_stamp[e])))
        rows.sort()
        return "".join(f"edge {u} {v} {s}\n" for u, v, s in rows)

    def face_regions(self, i: int) -> list[RegionSubgraph]:
        """Regions of the interior faces of X_i together with the external
        cycle (the infinite face's region is the whole graph; skipped)."""
        member = self.edge_mask(i).copy()
        for d in self.emb.outer_darts:
            member[int(d) >> 1] = True
        return self.emb.subgraph_face_regions(member)


def x_membership(timeline: SupergraphTimeline, i: int) -> Callable[[int], bool]:
    """Dart predicate for X_i (stamp comparison)."""
    return timeline.dart_member(i)


def build_supergraphs(emb: PlanarEmbedding, inst: NormalizedInstance,
                      seq: SptSequence) -> SupergraphTimeline:
    """Run the stamping algorithm over the tree sequence.

    seq must be rooted at the deduplicated source list of inst (consecutive
    equal sources share one tree); iteration i consumes the change window
    between the trees at s_{i-1} and s_i.
    """
    n, m = emb.n, emb.m
    edge_stamp = np.full(m, NEVER, dtype=np.int32)
    vertex_stamp = np.full(n, NEVER, dtype=np.int32)
    h_sets: list[np.ndarray] = []
    eta_log: list[tuple[int, int]] = []
    counters = {"walk_steps": 0, "stamped_edges": 0, "h_total": 0,
                "h_skipped": 0, "change_darts": 0}
    k = inst.k
    if k == 0:
        return SupergraphTimeline(emb, inst, edge_stamp, vertex_stamp,
                                  h_sets, eta_log, counters)

    expected_roots = _dedup([s for s, _ in inst.pairs])
    if seq.roots != expected_roots:
        raise ValueError("tree sequence roots do not match the instance "
                         "sources (deduplicated)")

    cursor = seq.cursor()
    step, tree, _ = next(cursor)
    heads_buf = np.empty(n, dtype=np.int32)

    for i in range(k):  # 0-based pair index; stamps are i+1
        s_i, t_i = inst.pairs[i]
        stamp = np.int32(i + 1)
        if i > 0 and s_i != inst.pairs[i - 1][0]:
            step, tree, cs = next(cursor)
            added = cs.added
            counters["change_darts"] += int(added.shape[0])
            hcount = added.shape[0]
            for j in range(hcount):
                heads_buf[j] = emb.dart_head[added[j]]
            h_sets.append(heads_buf[:hcount].copy())
        else:
            hcount = 0
            h_sets.append(np.empty(0, dtype=np.int32))
        assert tree.root == s_i
        # the source joins X_i before any walk so every backward walk has a
        # stamped vertex to finish on (the root at the latest)
        if vertex_stamp[s_i] == NEVER:
            vertex_stamp[s_i] = stamp
        steps, skipped, err, _ = _kernels.stamp_walks(
            heads_buf, hcount, tree.parent_dart, emb.dart_head, stamp,
            vertex_stamp, edge_stamp, 0)
        counters["walk_steps"] += int(steps)
        counters["h_total"] += int(hcount)
        counters["h_skipped"] += int(skipped)
        if err:
            raise WalkEscaped(
                f"iteration {i + 1}: backward walk fell off the root")
        heads_buf[0] = t_i
        steps, _, err, stop_v = _kernels.stamp_walks(
            heads_buf, 1, tree.parent_dart, emb.dart_head, stamp,
            vertex_stamp, edge_stamp, 1)
        counters["walk_steps"] += int(steps)
        if err:
            raise WalkEscaped(
                f"iteration {i + 1}: walk from terminal fell off the root")
        eta_log.append((t_i, int(stop_v)))
    counters["stamped_edges"] = int(np.count_nonzero(edge_stamp != NEVER))
    return SupergraphTimeline(emb, inst, edge_stamp, vertex_stamp, h_sets,
                              eta_log, counters)


def _dedup(roots: list[int]) -> list[int]:
    out = []
    for v in roots:
        if not out or out[-1] != v:
            out.append(v)
    return out


def leftmost_path_in_x(timeline: SupergraphTimeline, i: int) -> list[int]:
    """Turn-left walk from s_i restricted to X_i; the vertex path of the
    leftmost shortest i-path.  Diagnostic extractor; raises WalkEscaped if
    the walk fails to reach t_i (violated structural assumption)."""
    emb = timeline.emb
    inst = timeline.inst
    s, t = inst.pairs[i - 1]  # public iteration indices are 1-based
    member = timeline.dart_member(i)
    path = [s]
    # virtual arrival along the boundary: rev(arrival) = dart s -> cw-prev(s)
    anchor = emb.dart_between(s, emb.outer_prev(s))
    assert anchor is not None
    cur = s
    arrival: Optional[int] = None
    guard = 4 * emb.m + 4
    while cur != t:
        if arrival is None:
            d = _scan_full(emb, anchor, member, left=True)
        else:
            d = emb.turn_left(arrival, member)
            if d is not None and d == (arrival ^ 1):
                raise WalkEscaped(
                    f"pair {i}: dead end at vertex {cur} before terminal")
        if d is None:
            raise WalkEscaped(f"pair {i}: no member dart at vertex {cur}")
        path.append(emb.head(d))
        arrival = d
        cur = emb.head(d)
        guard -= 1
        if guard == 0:
            raise WalkEscaped(f"pair {i}: walk exceeded the step budget")
    return path


def _scan_full(emb: PlanarEmbedding, anchor: int, member, left: bool
               ) -> Optional[int]:
    """Sweep the whole rotation at tail(anchor) starting beside the anchor;
    used for walk starts where the virtual arrival edge may be absent."""
    step = emb.ccw_pred if left else emb.ccw_succ
    d = step(anchor)
    while d != anchor:
        if member(d):
            return d
        d = step(d)
    return anchor if member(anchor) else None
