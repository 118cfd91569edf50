import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncpaths.errors import SpliceEndpointNotOnParent
from ncpaths.generate import disk_instance, grid_instance, nested_pairs
from ncpaths.pathunion import format_result, materialize_path, path_lengths
from ncpaths.pipeline import solve

from conftest import brute_bfs


def test_single_pair_union_is_the_directed_path(g9):
    art = solve(g9, [(0, 8)])
    b = art.result.bundles[0]
    assert b.complete and b.tau.size == 0 and b.stop_dart == -1
    assert set(art.result.union_darts()) == set(art.result.path_darts(1))
    assert art.result.path_vertices(1) == [8, 7, 6, 3, 0]
    assert int(art.lengths[0]) == 4


def test_disjoint_pairs_have_full_walks(g9):
    # boundary walks [0,1,2] and [8,7,6] are disjoint, so are the paths
    art = solve(g9, [(0, 2), (8, 6)])
    assert all(b.complete for b in art.result.bundles)
    d1 = set(art.result.path_darts(1))
    d2 = set(art.result.path_darts(2))
    assert not d1 & d2
    assert sorted(map(int, art.lengths)) == [2, 2]


def test_nested_pairs_share_a_corridor():
    # 5x3 grid; both pairs are forced through the middle column corridor
    emb = grid_instance(5, 3).build()
    # ids: row 0 = 0..4, row 1 = 5..9, row 2 = 10..14
    pairs = [(1, 11), (3, 13)]
    art = solve(emb, pairs)
    assert sorted(map(int, art.lengths)) == [2, 2]
    truncated = [b for b in art.result.bundles if not b.complete]
    shared = set(art.result.path_darts(1)) & set(art.result.path_darts(2))
    if truncated:
        b = truncated[0]
        parent_path = art.result.path_vertices(b.pair)  # parent index + 1
        assert b.u in parent_path and b.v in parent_path


def test_splice_arithmetic_on_truncated_bundles():
    rng = random.Random(11)
    found = 0
    for trial in range(60):
        raw = disk_instance(rng.randint(12, 90), seed=trial)
        emb = raw.build()
        pairs = nested_pairs(raw.outer,
                             rng.randint(2, min(7, emb.boundary_len() // 2)),
                             seed=trial * 3)
        art = solve(emb, pairs)
        for b in art.result.bundles:
            if b.complete:
                continue
            found += 1
            i = b.pair + 1
            p = art.genealogy.parent[b.pair] + 1
            parent_vs = art.result.path_vertices(p)
            pu, pv = parent_vs.index(b.u), parent_vs.index(b.v)
            assert pu <= pv
            assert len(art.result.path_darts(i)) == \
                b.sigma.size + (pv - pu) + b.tau.size
    assert found > 5  # the corpus really exercises the splice branch


def test_lengths_match_bfs_oracle():
    rng = random.Random(23)
    for trial in range(40):
        raw = disk_instance(rng.randint(8, 120), seed=trial + 500)
        emb = raw.build()
        pairs = nested_pairs(raw.outer,
                             rng.randint(0, min(8, emb.boundary_len() // 2)),
                             seed=trial)
        art = solve(emb, pairs)
        for i, (s, t) in enumerate(art.inst.pairs):
            assert int(art.lengths[i]) == brute_bfs(emb, s)[t]


def test_union_equals_materialized_paths(g9):
    art = solve(g9, [(0, 8), (1, 5), (2, 5)])
    union = set(art.result.union_darts())
    mat = set()
    for i in range(1, art.inst.k + 1):
        mat.update(art.result.path_darts(i))
    assert union == mat


def test_result_file_is_deterministic_and_shaped(g9):
    art1 = solve(g9, [(0, 8), (1, 5)])
    art2 = solve(g9, [(0, 8), (1, 5)])
    text1 = format_result(art1.result)
    assert text1 == format_result(art2.result)
    lines = text1.splitlines()
    assert lines[0].split() == ["1", "2", "5", "1"]
    assert lines[1].split() == ["2", "4", "8", "0"]
    assert lines[2].startswith("path 1: ")
    union_at = next(i for i, ln in enumerate(lines)
                    if ln.startswith("union: "))
    count = int(lines[union_at].split()[1])
    assert len(lines) == union_at + 1 + count


def test_splice_error_surfaces_on_corrupted_bundle(g9):
    art = solve(g9, [(0, 8), (1, 5)])
    bundles = art.result.bundles
    target = next((b for b in bundles if not b.complete), None)
    if target is None:
        # force the error path artificially on a complete bundle
        b = bundles[1]
        b.complete = False
        b.u, b.v = 2, 2  # vertex 2 is not on rho_1
        art.result._paths[1] = None
        with pytest.raises(SpliceEndpointNotOnParent):
            materialize_path(art.result, art.genealogy, 2)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_walk_step_counters_stay_linear(seed):
    rng = random.Random(seed)
    raw = grid_instance(rng.randint(3, 10), rng.randint(3, 10))
    emb = raw.build()
    pairs = nested_pairs(raw.outer,
                         rng.randint(1, min(8, emb.boundary_len() // 2)),
                         seed=seed)
    art = solve(emb, pairs)
    x_darts = 2 * int(np.count_nonzero(art.timeline.edge_mask(art.inst.k)))
    assert art.result.counters["walk_steps"] <= x_darts + 2 * art.inst.k
