"""Terminal-pair validation, orientation, reindexing, and the nesting tree.

Pairs live on the external boundary.  A family is well-formed when the
clockwise boundary walks joining the pairs are pairwise nested or
edge-disjoint; equivalently the pairs form non-crossing chords of the
boundary circle, which a single parenthesis scan decides.

Normalization picks a reference pair whose opposite boundary walk is free
of other terminals, cuts the boundary at an edge of that walk, orients
every pair clockwise within the cut, and reindexes pairs in clockwise
order of their sources (outermost first on ties).
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .embedding import PlanarEmbedding
from .errors import ImbalancedScan, NotWellFormed, TerminalNotOnBoundary


@dataclass
class NormalizedInstance:
    """Oriented, reindexed terminal pairs plus the boundary cut."""

    emb: PlanarEmbedding
    pairs: list[tuple[int, int]]      # (s_i, t_i); index 0 is the reference pair
    e_star: Optional[tuple[int, int]]  # boundary edge outside every walk
    cut: int                           # raw boundary position just after e_star
    spos: list[int]                    # cut coordinates of the s_i
    tpos: list[int]
    source_index: list[int]            # position of each pair in the input

    @property
    def k(self) -> int:
        return len(self.pairs)

    def boundary_pos(self, v: int) -> int:
        """Cut coordinate of a boundary vertex (0 = just after e_star)."""
        r = self.emb.boundary_len()
        p = int(self.emb.outer_pos[v])
        if p < 0:
            raise TerminalNotOnBoundary(f"vertex {v} not on the boundary")
        return (p - self.cut) % r

    def gamma_vertices(self, i: int) -> list[int]:
        """Vertices of the clockwise boundary walk from s_i to t_i."""
        emb = self.emb
        r = emb.boundary_len()
        return [int(emb.outer_verts[(self.cut + p) % r])
                for p in range(self.spos[i], self.tpos[i] + 1)]

    def gamma_edges(self, i: int) -> set[tuple[int, int]]:
        vs = self.gamma_vertices(i)
        return {(min(a, b), max(a, b)) for a, b in zip(vs, vs[1:])}


@dataclass
class GenealogyTree:
    """Transitive reduction of the nesting order; pair 0 is the root."""

    parent: list[int]                  # -1 at the root
    children: list[list[int]] = field(default_factory=list)

    def __post_init__(self):
        if not self.children:
            self.children = [[] for _ in self.parent]
            for i, p in enumerate(self.parent):
                if p >= 0:
                    self.children[p].append(i)

    @property
    def k(self) -> int:
        return len(self.parent)

    def ancestors(self, i: int) -> list[int]:
        out = []
        p = self.parent[i]
        while p >= 0:
            out.append(p)
            p = self.parent[p]
        return out

    def comparable(self, i: int, j: int) -> bool:
        return j in self.ancestors(i) or i in self.ancestors(j)

    def one_based(self) -> dict[int, int]:
        """{i: parent(i)} with 1-based indices, root omitted."""
        return {i + 1: p + 1 for i, p in enumerate(self.parent) if p >= 0}

    def dump(self) -> str:
        lines = [f"{i + 1} {p + 1 if p >= 0 else 0}"
                 for i, p in enumerate(self.parent)]
        return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def _positions(emb: PlanarEmbedding, pairs: Sequence[tuple[int, int]]
               ) -> list[tuple[int, int]]:
    out = []
    for i, (a, b) in enumerate(pairs):
        pa, pb = int(emb.outer_pos[a]), int(emb.outer_pos[b])
        if pa < 0:
            raise TerminalNotOnBoundary(f"pair {i}: vertex {a} is interior")
        if pb < 0:
            raise TerminalNotOnBoundary(f"pair {i}: vertex {b} is interior")
        if a == b:
            raise NotWellFormed((i, i), f"pair {i} joins vertex {a} to itself")
        out.append((pa, pb))
    seen = {}
    for i, (pa, pb) in enumerate(out):
        key = (min(pa, pb), max(pa, pb))
        if key in seen:
            raise NotWellFormed((seen[key], i),
                                f"pairs {seen[key]} and {i} are identical")
        seen[key] = i
    return out


def check_well_formed(emb: PlanarEmbedding, pairs: Sequence[tuple[int, int]]
                      ) -> Optional[tuple[int, int]]:
    """None when the boundary walks are pairwise nested or disjoint;
    otherwise the indices of an interleaving pair.

    Cutting the boundary anywhere turns each pair into the interval between
    its endpoint positions; chord non-crossing is cut-independent, so one
    stack scan of the intervals decides.
    """
    pos = _positions(emb, pairs)
    intervals = [(min(a, b), max(a, b), i) for i, (a, b) in enumerate(pos)]
    opens: dict[int, list[tuple[int, int]]] = {}
    closes: dict[int, list[int]] = {}
    for lo, hi, i in intervals:
        opens.setdefault(lo, []).append((hi, i))
        closes.setdefault(hi, []).append(i)
    stack: list[int] = []
    for p in sorted(set(opens) | set(closes)):
        closing = set(closes.get(p, ()))
        while closing and stack and stack[-1] in closing:
            closing.discard(stack.pop())
        if closing:
            x = min(closing)
            return (x, stack[-1]) if stack else (x, x)
        for _, i in sorted(opens.get(p, ()), reverse=True):  # outer first
            stack.append(i)
    if stack:
        raise ImbalancedScan("scan left open pairs (internal error)")
    return None


# ---------------------------------------------------------------------------
# Normalization
# ---------------------------------------------------------------------------

def normalize(emb: PlanarEmbedding, pairs: Sequence[tuple[int, int]],
              validate: bool = True) -> NormalizedInstance:
    """Orient and reindex well-formed pairs; raises NotWellFormed otherwise.

    Deterministic choices: among all boundary arcs joining a pair and free
    of other terminals in their interior, take the one whose clockwise
    start has the smallest raw boundary position; its first edge becomes
    the cut edge.  Sources are then sorted clockwise from the cut, with the
    outer pair first when sources coincide.
    """
    witness = check_well_formed(emb, pairs)
    if witness is not None:
        raise NotWellFormed(witness)
    if not pairs:
        return NormalizedInstance(emb, [], None, 0, [], [], [])
    r = emb.boundary_len()
    pos = _positions(emb, pairs)
    termpos = sorted({p for ab in pos for p in ab})

    def interior_free(p: int, q: int) -> bool:
        # no terminal position strictly inside the clockwise arc p -> q:
        # the cyclically next terminal after p must be q or beyond
        j = bisect.bisect_right(termpos, p)
        nxt = termpos[j] if j < len(termpos) else termpos[0]
        return ((nxt - p) % r) >= ((q - p) % r)

    candidates = []
    for i, (pa, pb) in enumerate(pos):
        for p, q in ((pa, pb), (pb, pa)):
            if interior_free(p, q):
                candidates.append((p, q, i))
    if not candidates:
        raise ImbalancedScan("no terminal-free arc (internal error)")
    start, _, i_star = min(candidates)
    cut = (start + 1) % r

    def cpos(p: int) -> int:
        return (p - cut) % r

    oriented = []
    for i, (a, b) in enumerate(pairs):
        ca, cb = cpos(pos[i][0]), cpos(pos[i][1])
        if ca < cb:
            oriented.append((a, b, ca, cb, i))
        else:
            oriented.append((b, a, cb, ca, i))
    oriented.sort(key=lambda t: (t[2], -(t[3] - t[2])))
    inst = NormalizedInstance(
        emb,
        [(s, t) for s, t, _, _, _ in oriented],
        (int(emb.outer_verts[start]), int(emb.outer_verts[cut])),
        cut,
        [sp for _, _, sp, _, _ in oriented],
        [tp for _, _, _, tp, _ in oriented],
        [src for _, _, _, _, src in oriented],
    )
    if inst.source_index[0] != i_star:
        raise ImbalancedScan("reference pair not first after sort "
                             "(internal error)")
    if validate:
        _validate_normalized(inst)
    return inst


def _validate_normalized(inst: NormalizedInstance):
    k = inst.k
    if k > 5000:
        return  # O(k^2) assertion is a desk-scale safety net
    for i in range(k):
        # spos < tpos <= r-1 keeps every walk clear of the cut edge, which
        # spans cut coordinates r-1 -> 0
        if inst.spos[i] >= inst.tpos[i]:
            raise ImbalancedScan(f"pair {i} not clockwise after orientation")
    for i in range(k):
        lo, hi = inst.spos[i], inst.tpos[i]
        for j in range(i):
            for p in (inst.spos[j], inst.tpos[j]):
                if lo < p < hi and p not in (lo, hi):
                    raise ImbalancedScan(
                        f"terminal of pair {j} strictly inside walk of {i}")


# ---------------------------------------------------------------------------
# Genealogy tree
# ---------------------------------------------------------------------------

def genealogy(inst: NormalizedInstance) -> GenealogyTree:
    """Parent map by one stack scan of the cut boundary: push at s_i, pop at
    t_i, parent = stack top at push time."""
    k = inst.k
    parent = [-1] * k
    opens: dict[int, list[tuple[int, int]]] = {}
    closes: dict[int, list[int]] = {}
    for i in range(k):
        opens.setdefault(inst.spos[i], []).append((inst.tpos[i], i))
        closes.setdefault(inst.tpos[i], []).append(i)
    stack: list[int] = []
    for p in sorted(set(opens) | set(closes)):
        closing = set(closes.get(p, ()))
        while closing and stack and stack[-1] in closing:
            closing.discard(stack.pop())
        if closing:
            raise ImbalancedScan("pop of non-top pair after validation")
        for _, i in sorted(opens.get(p, ()), reverse=True):
            parent[i] = stack[-1] if stack else -1
            stack.append(i)
    if stack:
        raise ImbalancedScan("open pairs left on the stack")
    for i, p in enumerate(parent):
        if p >= i:
            raise ImbalancedScan("parent does not precede child")
    return GenealogyTree(parent)
