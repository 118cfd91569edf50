"""Directed union Y_k of the non-crossing shortest paths.

Each iteration extracts the leftmost shortest i-path from X_i as two walks:
a turn-left walk from s_i and a turn-right walk from t_i, both stopping
right before the first dart already committed to the union.  The full path
is recovered afterwards by splicing the walks around the matching segment
of the parent pair's path, so every union dart is walked O(1) times.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _kernels
from .embedding import PlanarEmbedding
from .errors import SpliceEndpointNotOnParent, WalkEscaped
from .supergraph import SupergraphTimeline
from .terminals import GenealogyTree, NormalizedInstance


@dataclass
class PathBundle:
    """Walk pieces for one pair: prefix from the source, reversed suffix
    from the target, and the junctions where they meet the parent path."""

    pair: int               # 0-based pair index
    sigma: np.ndarray       # darts walked from s_i
    tau: np.ndarray         # darts walked from t_i (reverse orientation)
    complete: bool          # sigma reached t_i; tau is then empty
    stop_dart: int          # d_i, first union dart ahead of sigma (-1 if none)
    stop_dart_rev: int      # d'_i for tau (-1 if none)
    u: int                  # tail(d_i): junction of sigma on the parent path
    v: int                  # tail(d'_i): junction of tau


@dataclass
class UnionResult:
    """Union membership per dart plus per-pair bundles and lengths."""

    emb: PlanarEmbedding
    inst: NormalizedInstance
    genealogy: GenealogyTree
    y_dart: np.ndarray           # (2m,) bool
    bundles: list[PathBundle]
    counters: dict = field(default_factory=dict)
    lengths: Optional[np.ndarray] = None
    _paths: list = field(default_factory=list)    # memoized dart paths
    _posmaps: dict = field(default_factory=dict)  # pair -> vertex -> position

    @property
    def k(self) -> int:
        return self.inst.k

    def union_darts(self) -> list[int]:
        return [int(d) for d in np.flatnonzero(self.y_dart)]

    def path_darts(self, i: int) -> list[int]:
        """Materialized rho_i (1-based i)."""
        return materialize_path(self, self.genealogy, i)

    def path_vertices(self, i: int) -> list[int]:
        darts = self.path_darts(i)
        s = self.inst.pairs[i - 1][0]
        return [s] + [self.emb.head(d) for d in darts]


def extract_union(timeline: SupergraphTimeline, inst: NormalizedInstance,
                  genealogy: GenealogyTree) -> UnionResult:
    """Run the sigma/tau walks for every pair in index order."""
    emb = timeline.emb
    n, m = emb.n, emb.m
    k = inst.k
    y = np.zeros(2 * m, dtype=bool)
    bundles: list[PathBundle] = []
    counters = {"walk_steps": 0, "scan_skips": 0}
    if k == 0:
        return UnionResult(emb, inst, genealogy, y, bundles, counters,
                           _paths=[])

    # rotation sublists restricted to X_k, built once after the supergraph
    xrot_start = np.empty(n + 1, dtype=np.int64)
    xrot_darts = np.empty(2 * m, dtype=np.int32)
    xrot_pos = np.empty(2 * m, dtype=np.int32)
    _kernels.build_restricted_rotation(emb.rot_start, emb.rot_darts,
                                       timeline.edge_stamp, xrot_start,
                                       xrot_darts, xrot_pos)
    buf = np.empty(n + 1, dtype=np.int32)
    buf2 = np.empty(n + 1, dtype=np.int32)
    for idx in range(k):
        s, t = inst.pairs[idx]
        level = np.int32(idx + 1)
        anchor_s = emb.dart_between(s, emb.outer_prev(s))
        cnt, stop, status, skips = _kernels.turn_walk(
            s, t, level, True, emb.rot_start, emb.rot_darts, emb.rot_pos,
            xrot_start, xrot_darts, xrot_pos, timeline.edge_stamp,
            emb.dart_head, y, np.int32(anchor_s), buf, n)
        counters["walk_steps"] += int(cnt) + 1
        counters["scan_skips"] += int(skips)
        if status == 2:
            raise WalkEscaped(f"pair {idx + 1}: source walk escaped X_i")
        sigma = buf[:cnt].copy()
        if status == 0:
            bundles.append(PathBundle(idx, sigma, np.empty(0, np.int32),
                                      True, -1, -1, -1, -1))
            y[sigma] = True
            continue
        anchor_t = emb.dart_between(t, emb.outer_next(t))
        cnt2, stop2, status2, skips2 = _kernels.turn_walk(
            t, s, level, False, emb.rot_start, emb.rot_darts, emb.rot_pos,
            xrot_start, xrot_darts, xrot_pos, timeline.edge_stamp,
            emb.dart_head, y, np.int32(anchor_t), buf2, n)
        counters["walk_steps"] += int(cnt2) + 1
        counters["scan_skips"] += int(skips2)
        if status2 != 1:
            raise WalkEscaped(
                f"pair {idx + 1}: target walk did not stop on the union "
                f"(status {status2}) while the source walk did")
        tau = buf2[:cnt2].copy()
        bundles.append(PathBundle(idx, sigma, tau, False, int(stop),
                                  int(stop2), emb.tail(int(stop)),
                                  emb.tail(int(stop2))))
        y[sigma] = True
        y[tau ^ 1] = True
    return UnionResult(emb, inst, genealogy, y, bundles, counters,
                       _paths=[None] * k)


def materialize_path(result: UnionResult, genealogy: GenealogyTree,
                     i: int) -> list[int]:
    """Directed dart sequence of rho_i (1-based i), splicing through the
    parent path between the recorded junctions when truncated."""
    idx = i - 1
    cached = result._paths[idx]
    if cached is not None:
        return cached
    emb = result.emb
    b = result.bundles[idx]
    s, t = result.inst.pairs[idx]
    if b.complete:
        darts = [int(d) for d in b.sigma]
    else:
        pidx = genealogy.parent[idx]
        if pidx < 0:
            raise SpliceEndpointNotOnParent(
                f"pair {i} is truncated but has no parent pair")
        parent_darts = materialize_path(result, genealogy, pidx + 1)
        posmap = _position_map(result, pidx, parent_darts)
        if b.u not in posmap:
            raise SpliceEndpointNotOnParent(
                f"pair {i}: junction {b.u} not on the parent path")
        if b.v not in posmap:
            raise SpliceEndpointNotOnParent(
                f"pair {i}: junction {b.v} not on the parent path")
        pu, pv = posmap[b.u], posmap[b.v]
        if pu > pv:
            raise SpliceEndpointNotOnParent(
                f"pair {i}: junctions appear as {pu} > {pv} on the parent")
        darts = ([int(d) for d in b.sigma] + parent_darts[pu:pv]
                 + [int(d) ^ 1 for d in reversed(b.tau)])
    # structural sanity: a simple directed s -> t path
    cur = s
    seen = {s}
    for d in darts:
        if emb.tail(d) != cur:
            raise SpliceEndpointNotOnParent(
                f"pair {i}: spliced darts do not chain at vertex {cur}")
        cur = emb.head(d)
        if cur in seen:
            raise SpliceEndpointNotOnParent(
                f"pair {i}: spliced path revisits vertex {cur}")
        seen.add(cur)
    if cur != t:
        raise SpliceEndpointNotOnParent(
            f"pair {i}: spliced path ends at {cur}, not {t}")
    result._paths[idx] = darts
    return darts


def _position_map(result: UnionResult, pidx: int, parent_darts: list[int]
                  ) -> dict[int, int]:
    pm = result._posmaps.get(pidx)
    if pm is None:
        emb = result.emb
        s = result.inst.pairs[pidx][0]
        pm = {s: 0}
        for j, d in enumerate(parent_darts):
            pm[emb.head(d)] = j + 1
        result._posmaps[pidx] = pm
    return pm


def path_lengths(result: UnionResult, genealogy: GenealogyTree) -> np.ndarray:
    """|rho_i| per pair via one top-down materialization pass."""
    k = result.k
    lengths = np.zeros(k, dtype=np.int64)
    for i in range(1, k + 1):
        lengths[i - 1] = len(materialize_path(result, genealogy, i))
    result.lengths = lengths
    return lengths


# ---------------------------------------------------------------------------
# Result file:  "i length s t" per pair, optional "path i: v0 v1 ...", then
# "union: D" followed by D darts "u v" sorted by endpoints.
# ---------------------------------------------------------------------------

def format_result(result: UnionResult, include_paths: bool = True) -> str:
    if result.lengths is None:
        path_lengths(result, result.genealogy)
    lines = []
    for i in range(1, result.k + 1):
        s, t = result.inst.pairs[i - 1]
        lines.append(f"{i} {int(result.lengths[i - 1])} {s} {t}")
    if include_paths:
        for i in range(1, result.k + 1):
            vs = result.path_vertices(i)
            lines.append(f"path {i}: " + " ".join(str(v) for v in vs))
    darts = result.union_darts()
    lines.append(f"union: {len(darts)}")
    emb = result.emb
    rows = sorted((emb.tail(d), emb.head(d)) for d in darts)
    lines.extend(f"{u} {v}" for u, v in rows)
    return "\n".join(lines) + "\n"


def save_result(path: str, result: UnionResult, include_paths: bool = True):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_result(result, include_paths))
