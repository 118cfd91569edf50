"""Independent oracles and property checkers.

Everything here is deliberately decoupled from the solver modules: the
distance oracles run plain BFS/Dijkstra over the embedding's adjacency,
and the crossing detector reads only the rotation order.  Failures always
carry a minimal witness.
"""

from __future__ import annotations

import heapq
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .embedding import PlanarEmbedding, RegionSubgraph
from .errors import NotAPath
from .pathunion import UnionResult, materialize_path
from .supergraph import SupergraphTimeline
from .terminals import GenealogyTree, NormalizedInstance

INF = float("inf")


# ---------------------------------------------------------------------------
# Distance oracles
# ---------------------------------------------------------------------------

def bfs_all(emb: PlanarEmbedding, src: int,
            edge_ok: Optional[np.ndarray] = None) -> list:
    """Hop distances from src (-1 unreachable), optionally restricted to
    the edges selected by edge_ok."""
    nbrs, eids = emb.adjacency()
    dist = [-1] * emb.n
    dist[src] = 0
    q = deque([src])
    while q:
        v = q.popleft()
        dv = dist[v]
        lst = nbrs[v]
        els = eids[v]
        for j in range(len(lst)):
            if edge_ok is not None and not edge_ok[els[j]]:
                continue
            w = lst[j]
            if dist[w] < 0:
                dist[w] = dv + 1
                q.append(w)
    return dist


def bfs_distance(emb: PlanarEmbedding, a: int, b: int,
                 edge_ok: Optional[np.ndarray] = None,
                 region: Optional[RegionSubgraph] = None) -> float:
    """Exact unweighted distance; inf when disconnected.  Pass a region to
    restrict the walk to its edges."""
    if region is not None:
        edge_ok = region.edge_mask
    if a == b:
        return 0
    dist = bfs_all(emb, a, edge_ok)
    return dist[b] if dist[b] >= 0 else INF


def dijkstra_all(emb: PlanarEmbedding, weights: dict, src: int) -> list:
    """Weighted distances from src; weights keyed by (min(u,v), max(u,v))."""
    nbrs, _ = emb.adjacency()
    dist = [INF] * emb.n
    dist[src] = 0
    heap = [(0, src)]
    while heap:
        dv, v = heapq.heappop(heap)
        if dv > dist[v]:
            continue
        for w in nbrs[v]:
            nd = dv + weights[(min(v, w), max(v, w))]
            if nd < dist[w]:
                dist[w] = nd
                heapq.heappush(heap, (nd, w))
    return dist


# ---------------------------------------------------------------------------
# Crossing detection
# ---------------------------------------------------------------------------

def _validate_path(emb: PlanarEmbedding, p: Sequence[int]) -> list[int]:
    """Simple vertex path -> list of darts along it."""
    if len(p) == 0:
        raise NotAPath("empty vertex sequence")
    if len(set(p)) != len(p):
        raise NotAPath("vertex sequence repeats a vertex")
    darts = []
    for a, b in zip(p, p[1:]):
        d = emb.dart_between(a, b)
        if d is None:
            raise NotAPath(f"{a}-{b} is not an edge")
        darts.append(d)
    return darts


def check_noncrossing(emb: PlanarEmbedding, p: Sequence[int],
                      q: Sequence[int]) -> Optional[int]:
    """None when the undirected simple paths do not cross; otherwise a
    witness junction vertex.

    Their intersection decomposes into maximal common subwalks.  For each
    one, the two continuations of q leave on some side of p (left/right in
    p's own traversal, read off the rotation order); the paths cross at the
    component exactly when those sides differ.  Components containing a
    path endpoint cannot interleave and never count.
    """
    _validate_path(emb, p)
    _validate_path(emb, q)
    inq = {v: j for j, v in enumerate(q)}
    shared_edges = {frozenset(e) for e in zip(p, p[1:])} & \
                   {frozenset(e) for e in zip(q, q[1:])}
    # maximal runs along p connected by shared edges
    runs = []
    i = 0
    while i < len(p):
        if p[i] not in inq:
            i += 1
            continue
        j = i
        while j + 1 < len(p) and p[j + 1] in inq and \
                frozenset((p[j], p[j + 1])) in shared_edges:
            j += 1
        runs.append((i, j))
        i = j + 1
    for i0, i1 in runs:
        witness = _run_crosses(emb, p, q, inq, i0, i1)
        if witness is not None:
            return witness
    return None


def _run_crosses(emb, p, q, inq, i0, i1) -> Optional[int]:
    if i0 == 0 or i1 == len(p) - 1:
        return None  # p ends inside the component: touch, not a crossing
    j0 = inq[p[i0]]
    j1 = inq[p[i1]]
    ja, jb = min(j0, j1), max(j0, j1)
    if ja == 0 or jb == len(q) - 1:
        return None  # q ends inside the component
    # q's continuations just outside its run, as outgoing darts at the
    # component's two ends
    e_a = emb.dart_between(q[ja], q[ja - 1])
    e_b = emb.dart_between(q[jb], q[jb + 1])
    end_of = {q[ja]: e_a, q[jb]: e_b}
    x, y = p[i0], p[i1]
    if x == y:  # single shared vertex: both q darts measured at x
        side1 = _side_at(emb, p, i0, emb.dart_between(q[j0], q[j0 - 1]))
        side2 = _side_at(emb, p, i0, emb.dart_between(q[j0], q[j0 + 1]))
    else:
        side1 = _side_at(emb, p, i0, end_of[x])
        side2 = _side_at(emb, p, i1, end_of[y])
    if side1 != side2:
        return x
    return None


def _side_at(emb: PlanarEmbedding, p, i, e: int) -> str:
    """Side of outgoing dart e relative to p's passage through p[i].

    Sweeping ccw-predecessors from rev(p's arrival dart), everything met
    before p's departure dart lies left of p, everything after lies right.
    """
    v = p[i]
    a_in = emb.dart_between(p[i - 1], v)
    a_out = emb.dart_between(v, p[i + 1])
    c = emb.ccw_pred(a_in ^ 1)
    while True:
        if c == a_out:
            return "R" if c != e else "L"  # e == a_out cannot happen
        if c == e:
            return "L"
        c = emb.ccw_pred(c)


# ---------------------------------------------------------------------------
# Audit report
# ---------------------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: Optional[str] = None
    counters: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        extra = f" witness={self.witness}" if self.witness else ""
        cnt = "".join(f" {k}={v}" for k, v in sorted(self.counters.items()))
        return f"check={self.name} status={status}{extra}{cnt}"


@dataclass
class AuditReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, passed, witness=None, **counters):
        self.checks.append(CheckResult(name, passed, witness, counters))

    def lines(self) -> str:
        return "\n".join(c.line() for c in self.checks) + \
            ("\n" if self.checks else "")

    def merge(self, other: "AuditReport"):
        self.checks.extend(other.checks)


# ---------------------------------------------------------------------------
# ISP distance preservation
# ---------------------------------------------------------------------------

def check_isp_preservation(emb: PlanarEmbedding,
                           timeline: SupergraphTimeline, i: int,
                           samples: int = 200, seed: int = 0,
                           exhaustive: bool = False,
                           dist_cache: Optional[dict] = None,
                           region_cache: Optional[set] = None
                           ) -> AuditReport:
    """Distances inside each face region of X_i + boundary must equal the
    global distances; exact equality, sampled or exhaustive.

    dist_cache/region_cache may be shared across calls for one embedding
    to avoid recomputing global BFS trees and re-checking regions that
    did not change between iterations.
    """
    report = AuditReport()
    regions = timeline.face_regions(i)
    rng = random.Random(seed)
    if dist_cache is None:
        dist_cache = {}
    checked = 0
    failures = []

    def global_dist(a):
        if a not in dist_cache:
            dist_cache[a] = bfs_all(emb, a)
        return dist_cache[a]

    if exhaustive:
        for reg in regions:
            key = None
            if region_cache is not None:
                key = frozenset(reg.edges)
                if key in region_cache:
                    continue
            verts = reg.vertices
            for a in verts:
                da_r = bfs_all(emb, a, reg.edge_mask)
                da_g = global_dist(a)
                for b in verts:
                    if b <= a:
                        continue
                    checked += 1
                    if da_r[b] != da_g[b]:
                        failures.append((i, a, b, da_r[b], da_g[b]))
            if region_cache is not None and not any(
                    f for f in failures if f[0] == i):
                region_cache.add(key)
    else:
        budget = samples
        while budget > 0 and regions:
            reg = rng.choice(regions)
            verts = reg.vertices
            if len(verts) < 2:
                budget -= 1
                continue
            a = rng.choice(verts)
            da_r = bfs_all(emb, a, reg.edge_mask)
            da_g = global_dist(a)
            batch = min(budget, max(1, min(25, len(verts) - 1)))
            for b in rng.sample([v for v in verts if v != a],
                                min(batch, len(verts) - 1)):
                checked += 1
                budget -= 1
                if da_r[b] != da_g[b]:
                    failures.append((i, a, b, da_r[b], da_g[b]))
    report.add(f"isp_preservation_x{i}", not failures,
               witness=str(failures[0]) if failures else None,
               triples=checked, faces=len(regions))
    return report


# ---------------------------------------------------------------------------
# Full-result audit
# ---------------------------------------------------------------------------

def audit(result: UnionResult, inst: NormalizedInstance,
          genealogy: GenealogyTree, emb: PlanarEmbedding) -> AuditReport:
    """Shortestness, pairwise non-crossing, sibling dart-disjointness,
    ancestor containment, and union consistency, with counters."""
    report = AuditReport()
    k = inst.k
    if k == 0:
        report.add("empty_instance", True)
        return report

    paths = [materialize_path(result, genealogy, i) for i in range(1, k + 1)]
    vpaths = [result.path_vertices(i) for i in range(1, k + 1)]

    bad = None
    for i in range(k):
        s, t = inst.pairs[i]
        d = bfs_distance(emb, s, t)
        if len(paths[i]) != d:
            bad = f"pair {i + 1}: |rho|={len(paths[i])} dist={d}"
            break
    report.add("shortestness", bad is None, witness=bad, pairs=k)

    bad = None
    crossings = 0
    for i in range(k):
        for j in range(i + 1, k):
            w = check_noncrossing(emb, vpaths[i], vpaths[j])
            if w is not None:
                crossings += 1
                if bad is None:
                    bad = f"pairs {i + 1},{j + 1} cross at vertex {w}"
    report.add("noncrossing", crossings == 0, witness=bad,
               pairs_checked=k * (k - 1) // 2)

    dart_sets = [set(p) for p in paths]
    bad = None
    checked = 0
    for i in range(k):
        for j in range(i + 1, k):
            if genealogy.comparable(i, j):
                continue
            checked += 1
            common = dart_sets[i] & dart_sets[j]
            if common:
                d = next(iter(common))
                bad = (f"pairs {i + 1},{j + 1} share dart "
                       f"{emb.tail(d)}->{emb.head(d)}")
                break
        if bad:
            break
    report.add("sibling_dart_disjoint", bad is None, witness=bad,
               pairs_checked=checked)

    bad = None
    checked = 0
    for i in range(k):
        chain = genealogy.ancestors(i)
        for pos, j in enumerate(chain):
            common = dart_sets[i] & dart_sets[j]
            for ell in chain[:pos]:  # i < ell < j in the nesting order
                checked += 1
                if not common <= dart_sets[ell]:
                    bad = (f"darts of {i + 1} and {j + 1} escape "
                           f"intermediate {ell + 1}")
                    break
            if bad:
                break
        if bad:
            break
    report.add("ancestor_containment", bad is None, witness=bad,
               chains_checked=checked)

    union = set(result.union_darts())
    materialized = set()
    for p in paths:
        materialized.update(p)
    bad = None
    if union != materialized:
        extra = union - materialized
        missing = materialized - union
        bad = f"union minus paths: {sorted(extra)[:3]}, " \
              f"paths minus union: {sorted(missing)[:3]}"
    report.add("union_consistency", bad is None, witness=bad,
               union_darts=len(union))
    return report
