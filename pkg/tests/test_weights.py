import random

import pytest

from ncpaths.embedding import build_embedding
from ncpaths.errors import NonPositiveWeight, WeightCapExceeded
from ncpaths.generate import grid_instance, nested_pairs, random_weights
from ncpaths.pipeline import solve
from ncpaths.verify import dijkstra_all
from ncpaths.weights import subdivide_weights


def unit_weights(rotations):
    return {(v, u): 1
            for v, lst in enumerate(rotations) for u in lst if v < u}


def test_all_unit_weights_is_identity():
    raw = grid_instance(3, 3)
    rot, outer, vmap = subdivide_weights(raw.rotations, raw.outer,
                                         unit_weights(raw.rotations))
    assert rot == raw.rotations and outer == raw.outer
    assert vmap == list(range(9))


def test_single_heavy_edge_adds_chain():
    raw = grid_instance(2, 2)  # square 0-1 / 2-3, ids row-major
    weights = unit_weights(raw.rotations)
    weights[(0, 1)] = 3
    rot, outer, _ = subdivide_weights(raw.rotations, raw.outer, weights)
    assert len(rot) == 6  # two fresh vertices
    emb = build_embedding(rot, outer)
    # distances scale along the subdivided edge
    art = solve(emb, [(0, 1)])
    assert int(art.lengths[0]) == 3
    art = solve(emb, [(0, 3)])
    assert int(art.lengths[0]) == 2  # around the other side


def test_boundary_chain_joins_outer_cycle():
    raw = grid_instance(3, 2)
    weights = unit_weights(raw.rotations)
    weights[(0, 1)] = 4  # boundary edge
    rot, outer, _ = subdivide_weights(raw.rotations, raw.outer, weights)
    emb = build_embedding(rot, outer)  # outer must still be a face orbit
    assert emb.boundary_len() == len(raw.outer) + 3


def test_rejects_bad_weights():
    raw = grid_instance(2, 2)
    weights = unit_weights(raw.rotations)
    weights[(0, 1)] = 0
    with pytest.raises(NonPositiveWeight):
        subdivide_weights(raw.rotations, raw.outer, weights)
    weights[(0, 1)] = 2
    del weights[(0, 2)]
    with pytest.raises(NonPositiveWeight):
        subdivide_weights(raw.rotations, raw.outer, weights)
    weights[(0, 2)] = 5
    with pytest.raises(WeightCapExceeded):
        subdivide_weights(raw.rotations, raw.outer, weights, cap=4)


def test_weighted_grids_match_dijkstra_oracle():
    rng = random.Random(2)
    for trial in range(20):
        w, h = rng.randint(2, 7), rng.randint(2, 7)
        raw = grid_instance(w, h)
        weights = random_weights(raw.rotations, 5, seed=trial)
        rot, outer, _ = subdivide_weights(raw.rotations, raw.outer, weights)
        emb_unit = build_embedding(rot, outer)
        emb_orig = raw.build()
        pairs = nested_pairs(raw.outer,
                             rng.randint(1, min(4, len(raw.outer) // 2)),
                             seed=trial * 17)
        art = solve(emb_unit, pairs)
        for a, b in pairs:
            assert art.length_of_pair(a, b) == \
                dijkstra_all(emb_orig, weights, a)[b]
