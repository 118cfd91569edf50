"""Sequence of shortest-path trees rooted along the external boundary.

The sequence is exposed as an initial tree plus per-step dart change sets;
applying the steps in order reconstructs each tree.  The mandatory
reference engine recomputes a canonical leftmost BFS tree per root and
diffs consecutive trees, which is O(n * #roots) and serves as the
correctness anchor.  A linear-time incremental engine can sit behind the
same interface; this build does not include one (see modes below).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from . import _kernels
from .embedding import PlanarEmbedding
from .errors import ModeUnavailable, RootNotOnOuterFace, RootsNotClockwise

MODES = ("reference", "incremental")


@dataclass
class SptTree:
    """Rooted shortest-path tree: per-vertex parent dart and hop depth."""

    root: int
    parent_dart: np.ndarray  # (n,) int32, -1 at the root
    depth: np.ndarray        # (n,) int32

    def path_to(self, emb: PlanarEmbedding, v: int) -> list[int]:
        """Darts from the root to v."""
        out = []
        while v != self.root:
            d = int(self.parent_dart[v])
            out.append(d)
            v = emb.tail(d)
        out.reverse()
        return out

    def validate(self, emb: PlanarEmbedding):
        """Check the shortest-path-tree property against a plain BFS."""
        n = emb.n
        depth = np.empty(n, dtype=np.int32)
        queue = np.empty(n, dtype=np.int64)
        _kernels.bfs_depths(emb.rot_start, emb.rot_darts, emb.dart_head,
                            self.root, depth, queue)
        if not np.array_equal(depth, self.depth):
            raise AssertionError("tree depths disagree with BFS distances")
        for v in range(n):
            d = int(self.parent_dart[v])
            if v == self.root:
                assert d == -1
                continue
            assert emb.head(d) == v, f"parent dart of {v} has wrong head"
            assert self.depth[v] == self.depth[emb.tail(d)] + 1, \
                f"parent dart of {v} is not tight"


@dataclass
class ChangeSet:
    """Darts whose head's parent becomes that dart at this step."""

    step: int
    added: np.ndarray  # int32 darts, ascending head id

    @property
    def heads(self) -> np.ndarray:
        return self.added  # resolved against the embedding by callers


def leftmost_spt(emb: PlanarEmbedding, root: int) -> SptTree:
    """Canonical leftmost shortest-path tree rooted on the boundary.

    BFS depths with parents assigned on first visit, scanning each vertex's
    outgoing darts leftmost-first relative to the arrival dart; the root
    sweep starts at its clockwise boundary dart.
    """
    if not emb.on_outer(root):
        raise RootNotOnOuterFace(f"vertex {root} is not on the boundary")
    n = emb.n
    parent = np.empty(n, dtype=np.int32)
    depth = np.empty(n, dtype=np.int32)
    queue = np.empty(n, dtype=np.int64)
    _kernels.leftmost_bfs(emb.rot_start, emb.rot_darts, emb.rot_pos,
                          emb.dart_head, root, emb.boundary_dart_cw(root),
                          parent, depth, queue)
    return SptTree(root, parent, depth)


def _check_roots(emb: PlanarEmbedding, roots: Sequence[int]):
    r = emb.boundary_len()
    for v in roots:
        if not emb.on_outer(v):
            raise RootNotOnOuterFace(f"vertex {v} is not on the boundary")
    if len(set(roots)) != len(roots):
        raise RootsNotClockwise("roots repeat")
    if len(roots) > 1:
        pos = [int(emb.outer_pos[v]) for v in roots]
        advance = sum((b - a) % r for a, b in zip(pos, pos[1:]))
        if advance > r - 1:
            raise RootsNotClockwise(
                f"roots advance {advance} positions on a boundary of {r}")


class SptSequence:
    """Initial leftmost tree plus change sets for each subsequent root.

    The cursor keeps one materialized tree and advances step by step, which
    is how the supergraph stage consumes it; random access replays from the
    nearest cached step (the start).  Single consumer per instance.
    """

    def __init__(self, emb: PlanarEmbedding, roots: Sequence[int],
                 mode: str = "reference"):
        if mode not in MODES:
            raise ModeUnavailable(f"unknown mode {mode!r}")
        if mode == "incremental":
            raise ModeUnavailable(
                "the incremental engine is not built; the reference mode is "
                "the correctness anchor and the only available tier")
        _check_roots(emb, roots)
        self.emb = emb
        self.roots = [int(v) for v in roots]
        self.mode = mode
        self.kernel_seconds = 0.0  # cumulative tree-building time
        n = emb.n
        self._parent = np.empty(n, dtype=np.int32)
        self._depth = np.empty(n, dtype=np.int32)
        self._scratch_parent = np.empty(n, dtype=np.int32)
        self._scratch_depth = np.empty(n, dtype=np.int32)
        self._queue = np.empty(n, dtype=np.int64)
        self._diff = np.empty(n, dtype=np.int32)
        self._step = 0
        self._run_tree(self.roots[0], self._parent, self._depth)
        self.initial = SptTree(self.roots[0], self._parent.copy(),
                               self._depth.copy())

    # -- engine -----------------------------------------------------------

    def _run_tree(self, root, parent, depth):
        t0 = time.perf_counter()
        _kernels.leftmost_bfs(self.emb.rot_start, self.emb.rot_darts,
                              self.emb.rot_pos, self.emb.dart_head,
                              root, self.emb.boundary_dart_cw(root),
                              parent, depth, self._queue)
        self.kernel_seconds += time.perf_counter() - t0

    def _advance(self) -> ChangeSet:
        """Move the cursor one step forward; returns that step's change set."""
        j = self._step + 1
        assert j < len(self.roots)
        self._run_tree(self.roots[j], self._scratch_parent,
                       self._scratch_depth)
        cnt = _kernels.parent_diff(self._parent, self._scratch_parent,
                                   self._diff)
        added = self._diff[:cnt].copy()
        self._parent, self._scratch_parent = self._scratch_parent, self._parent
        self._depth, self._scratch_depth = self._scratch_depth, self._depth
        self._step = j
        return ChangeSet(j, added)

    def _seek(self, step: int):
        if step < self._step:
            self._parent[:] = self.initial.parent_dart
            self._depth[:] = self.initial.depth
            self._step = 0
        while self._step < step:
            self._advance()

    # -- public surface ------------------------------------------------------

    def __len__(self) -> int:
        return len(self.roots)

    def tree_at(self, step: int) -> SptTree:
        """Tree for roots[step] (copies the cursor state)."""
        self._seek(step)
        return SptTree(self.roots[step], self._parent.copy(),
                       self._depth.copy())

    def current_tree_view(self) -> SptTree:
        """Zero-copy view of the cursor tree; valid until the next advance."""
        return SptTree(self.roots[self._step], self._parent, self._depth)

    def changes(self, step: int) -> ChangeSet:
        """Change set transforming tree step-1 into tree step (step >= 1)."""
        if not 1 <= step < len(self.roots):
            raise IndexError(f"step {step} out of range")
        self._seek(step - 1)
        return self._advance()

    def cursor(self) -> Iterator[tuple[int, SptTree, Optional[ChangeSet]]]:
        """Yield (step, tree-view, change set) in root order."""
        self._seek(0)
        yield 0, self.current_tree_view(), None
        while self._step + 1 < len(self.roots):
            cs = self._advance()
            yield self._step, self.current_tree_view(), cs

    def tree_path(self, step: int, v: int) -> list[int]:
        """Directed dart path roots[step] -> v; length equals the depth."""
        self._seek(step)
        return self.current_tree_view().path_to(self.emb, v)

    def apply_changes(self, parent: np.ndarray, cs: ChangeSet) -> np.ndarray:
        """Reconstruction primitive: replace parent darts by head."""
        out = parent.copy()
        for d in cs.added:
            out[self.emb.head(int(d))] = d
        out[self.roots[cs.step]] = -1
        return out

    def total_added(self) -> int:
        """Diagnostic: total darts across all change sets (full sweep)."""
        self._seek(0)
        total = 0
        while self._step + 1 < len(self.roots):
            total += int(self._advance().added.shape[0])
        return total

    def dump_changes(self) -> str:
        """Debug format: one line per change set."""
        self._seek(0)
        lines = []
        while self._step + 1 < len(self.roots):
            cs = self._advance()
            darts = " ".join(
                f"+dart({self.emb.tail(int(d))}->{self.emb.head(int(d))})"
                for d in cs.added)
            lines.append(f"step {cs.step}:" + (f" {darts}" if darts else ""))
        return "\n".join(lines) + ("\n" if lines else "")


def spt_sequence(emb: PlanarEmbedding, roots: Sequence[int],
                 mode: str = "reference") -> SptSequence:
    """Tree sequence over clockwise boundary roots (see SptSequence)."""
    return SptSequence(emb, roots, mode=mode)
