import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncpaths.embedding import format_instance, parse_instance_text
from ncpaths.errors import ParamOutOfRange
from ncpaths.generate import (corner_pair, disk_instance, grid_boundary,
                              grid_embedding, grid_instance, nested_pairs,
                              random_weights)
from ncpaths.terminals import check_well_formed


def test_g9_fixture_equals_generated_grid(g9):
    raw = grid_instance(3, 3)
    emb = raw.build()
    assert emb.n == g9.n and emb.m == g9.m
    assert [emb.rotation(v) for v in range(9)] == \
        [g9.rotation(v) for v in range(9)]
    assert corner_pair(3, 3) == [(0, 8)]


def test_grid_embedding_fast_path_matches_list_build():
    for w, h in ((2, 2), (5, 3), (7, 8)):
        a = grid_instance(w, h).build()
        b = grid_embedding(w, h)
        assert a.n == b.n and a.m == b.m
        assert np.array_equal(a.rot_darts, b.rot_darts)
        assert np.array_equal(a.dart_head, b.dart_head)
        assert list(a.outer_verts) == list(b.outer_verts)


def test_grid_boundary_is_clockwise_cycle():
    b = grid_boundary(4, 3)
    assert b == [0, 1, 2, 3, 7, 11, 10, 9, 8, 4]
    assert len(set(b)) == len(b)


def test_disk_generator_is_deterministic():
    a = disk_instance(50, seed=7)
    b = disk_instance(50, seed=7)
    assert a.rotations == b.rotations and a.outer == b.outer
    c = disk_instance(50, seed=8)
    assert c.rotations != a.rotations


def test_disk_structure():
    raw = disk_instance(40, seed=3)
    emb = raw.build()
    assert emb.n == 40
    assert emb.m == 2 * 40 - 3          # triangulated polygon
    assert emb.boundary_len() == 40     # every vertex on the boundary
    assert emb.n_faces == 40 - 1        # n-2 triangles + outer


def test_generator_round_trip_bit_exact():
    for raw in (grid_instance(4, 5), disk_instance(33, seed=1)):
        text = format_instance(raw.rotations, raw.outer, coords=raw.coords)
        rot, outer, coords, _ = parse_instance_text(text)
        assert format_instance(rot, outer, coords=coords) == text


def test_param_errors():
    with pytest.raises(ParamOutOfRange):
        grid_instance(1, 5)
    with pytest.raises(ParamOutOfRange):
        disk_instance(2, seed=0)
    with pytest.raises(ParamOutOfRange):
        nested_pairs(list(range(6)), 4, seed=0)  # needs 8 boundary vertices
    with pytest.raises(ParamOutOfRange):
        random_weights([[1], [0]], 0, seed=0)


def test_nested_pairs_determinism_and_bounds():
    boundary = list(range(30))
    a = nested_pairs(boundary, 7, seed=5)
    assert a == nested_pairs(boundary, 7, seed=5)
    assert len(a) == 7
    flat = [v for p in a for v in p]
    assert len(set(flat)) == 14  # distinct terminals


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_generated_pairs_well_formed_across_seeds(seed):
    rng = random.Random(seed)
    raw = disk_instance(rng.randint(4, 50), seed=seed)
    emb = raw.build()
    pairs = nested_pairs(raw.outer, rng.randint(0, emb.boundary_len() // 2),
                         seed=seed + 1)
    assert check_well_formed(emb, pairs) is None
