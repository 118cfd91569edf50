"""Shared fixtures and tiny brute-force oracles for the test suite.

The oracles here are deliberately independent re-derivations (deque BFS
over neighbor lists, interval arithmetic over boundary positions) so the
library is never asked to certify itself.
"""

from collections import deque

import pytest

from ncpaths.embedding import build_embedding
from ncpaths.generate import disk_instance, grid_instance, nested_pairs


@pytest.fixture
def c4():
    """4-cycle a-b-c-d with outer (a, b, c, d) clockwise; ids 0..3."""
    return build_embedding([[1, 3], [2, 0], [3, 1], [0, 2]], [0, 1, 2, 3])


@pytest.fixture
def g9():
    """3x3 grid, ids row-major with row 0 on top; outer clockwise from the
    top-left corner."""
    return grid_instance(3, 3).build()


def fig2_cycle():
    """15-cycle carrying the seven nested pairs of the genealogy figure.

    Boundary roles clockwise from vertex 0:
      t1, (free), s1, s2, s3, t3, s4, s5, t5, t4, t2, s6, s7, t7, t6
    """
    n = 15
    rot = [[(v + 1) % n, (v - 1) % n] for v in range(n)]
    emb = build_embedding(rot, list(range(n)))
    pairs = [(2, 0), (3, 10), (4, 5), (6, 9), (7, 8), (11, 14), (12, 13)]
    return emb, pairs


@pytest.fixture
def fig2():
    return fig2_cycle()


# ---------------------------------------------------------------------------
# Brute-force oracles (test-local on purpose)
# ---------------------------------------------------------------------------

def brute_bfs(emb, src):
    """Plain BFS distances from neighbor lists; independent of verify.py."""
    dist = {src: 0}
    q = deque([src])
    while q:
        v = q.popleft()
        for d in emb.rotation(v):
            w = emb.head(d)
            if w not in dist:
                dist[w] = dist[v] + 1
                q.append(w)
    return dist


def brute_contains(spos_i, tpos_i, spos_j, tpos_j):
    """Interval containment of boundary walks in cut coordinates."""
    return spos_i <= spos_j and tpos_j <= tpos_i and \
        (spos_i, tpos_i) != (spos_j, tpos_j)


def random_instance(rng, max_grid=10, max_disk=80, max_k=8):
    """Small random instance + well-formed pairs, for property tests."""
    if rng.random() < 0.5:
        raw = grid_instance(rng.randint(2, max_grid), rng.randint(2, max_grid))
    else:
        raw = disk_instance(rng.randint(4, max_disk), seed=rng.randint(0, 10**9))
    emb = raw.build()
    k = rng.randint(0, min(max_k, emb.boundary_len() // 2))
    pairs = nested_pairs(raw.outer, k, seed=rng.randint(0, 10**9))
    return raw, emb, pairs
