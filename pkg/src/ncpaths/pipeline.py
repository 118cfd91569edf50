"""End-to-end solve: normalize -> tree sequence -> supergraph -> union ->
lengths.  Shared by the CLI, the benchmark harness, and the test suite."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .embedding import PlanarEmbedding
from .mssp import SptSequence, spt_sequence
from .pathunion import UnionResult, extract_union, path_lengths
from .supergraph import SupergraphTimeline, build_supergraphs, _dedup
from .terminals import GenealogyTree, NormalizedInstance, genealogy, normalize


@dataclass
class SolveArtifacts:
    inst: NormalizedInstance
    genealogy: GenealogyTree
    seq: SptSequence
    timeline: SupergraphTimeline
    result: UnionResult
    lengths: np.ndarray
    phase_seconds: dict = field(default_factory=dict)

    def length_of_pair(self, a: int, b: int) -> int:
        """Length looked up by the unordered input pair."""
        for i, (s, t) in enumerate(self.inst.pairs):
            if {s, t} == {a, b}:
                return int(self.lengths[i])
        raise KeyError(f"pair {{{a}, {b}}} not in the instance")


def solve(emb: PlanarEmbedding, pairs: Sequence[tuple[int, int]],
          mode: str = "reference") -> SolveArtifacts:
    """Solve an instance; deterministic for fixed inputs and mode."""
    t0 = time.perf_counter()
    inst = normalize(emb, pairs)
    gen = genealogy(inst)
    t1 = time.perf_counter()
    seq = spt_sequence(emb, _dedup([s for s, _ in inst.pairs]) or [
        int(emb.outer_verts[0])], mode=mode)
    t2 = time.perf_counter()
    kernel_before = seq.kernel_seconds
    timeline = build_supergraphs(emb, inst, seq)
    t3 = time.perf_counter()
    result = extract_union(timeline, inst, gen)
    t4 = time.perf_counter()
    lengths = path_lengths(result, gen)
    t5 = time.perf_counter()
    # tree building happens both at construction and lazily inside the
    # supergraph pass; attribute all of it to the mssp phase
    return SolveArtifacts(
        inst, gen, seq, timeline, result, lengths,
        phase_seconds={
            "normalize": t1 - t0,
            "mssp": seq.kernel_seconds,
            "supergraph": (t3 - t2) - (seq.kernel_seconds - kernel_before),
            "union": t4 - t3,
            "lengths": t5 - t4,
        })
