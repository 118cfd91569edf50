"""Instance generators: grids, random triangulated disks, terminal pairs.

Both generators emit rotation lists in counterclockwise order with the
external boundary reported clockwise, matching the embedding convention.
Generated pairs are always well-formed by construction (balanced nesting).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .embedding import PlanarEmbedding, build_embedding, build_embedding_arrays
from .errors import ParamOutOfRange


@dataclass
class RawInstance:
    """Generator output kept in list form so it can be written to disk or
    built directly."""

    rotations: list[list[int]]
    outer: list[int]
    coords: list[tuple[float, float]]
    weights: Optional[dict] = None

    def build(self) -> PlanarEmbedding:
        return build_embedding(self.rotations, self.outer, coords=self.coords)


# ---------------------------------------------------------------------------
# Grid
# ---------------------------------------------------------------------------

def grid_instance(width: int, height: int) -> RawInstance:
    """width x height grid; vertex (row, col) has id row*width + col with
    row 0 at the top.  Rotations are [E, N, W, S] filtered to the grid."""
    if width < 2 or height < 2:
        raise ParamOutOfRange("grid needs width, height >= 2")
    idx = lambda r, c: r * width + c
    rotations = []
    coords = []
    for r in range(height):
        for c in range(width):
            rot = []
            if c + 1 < width:
                rot.append(idx(r, c + 1))    # east
            if r > 0:
                rot.append(idx(r - 1, c))    # north
            if c > 0:
                rot.append(idx(r, c - 1))    # west
            if r + 1 < height:
                rot.append(idx(r + 1, c))    # south
            rotations.append(rot)
            coords.append((float(c), float(height - 1 - r)))
    outer = grid_boundary(width, height)
    return RawInstance(rotations, outer, coords)


def grid_boundary(width: int, height: int) -> list[int]:
    """Boundary vertices clockwise starting at the top-left corner."""
    idx = lambda r, c: r * width + c
    out = [idx(0, c) for c in range(width)]
    out += [idx(r, width - 1) for r in range(1, height)]
    out += [idx(height - 1, c) for c in range(width - 2, -1, -1)]
    out += [idx(r, 0) for r in range(height - 2, 0, -1)]
    return out


def grid_embedding(width: int, height: int) -> PlanarEmbedding:
    """Array fast path for big benchmark grids (no Python rotation lists)."""
    if width < 2 or height < 2:
        raise ParamOutOfRange("grid needs width, height >= 2")
    n = width * height
    rows = np.repeat(np.arange(height, dtype=np.int64), width)
    cols = np.tile(np.arange(width, dtype=np.int64), height)
    nbr_cols = []
    # ccw order east, north, west, south with a validity mask each
    for dr, dc in ((0, 1), (-1, 0), (0, -1), (1, 0)):
        rr, cc = rows + dr, cols + dc
        ok = (rr >= 0) & (rr < height) & (cc >= 0) & (cc < width)
        nbr_cols.append((ok, rr * width + cc))
    ok_mat = np.stack([ok for ok, _ in nbr_cols], axis=1)
    id_mat = np.stack([ids for _, ids in nbr_cols], axis=1)
    deg = ok_mat.sum(axis=1)
    rot_start = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(deg, out=rot_start[1:])
    flat = id_mat[ok_mat]
    return build_embedding_arrays(rot_start, flat, grid_boundary(width, height))


# ---------------------------------------------------------------------------
# Random triangulated disk (uniform ear insertion)
# ---------------------------------------------------------------------------

def disk_instance(n: int, seed: int) -> RawInstance:
    """Random triangulated polygon on n vertices, all on the boundary.

    Starts from a triangle and repeatedly hangs a fresh ear over a uniformly
    random boundary edge; the covered edge becomes an internal diagonal.
    """
    if n < 3:
        raise ParamOutOfRange("disk needs n >= 3")
    rng = random.Random(seed)
    # rotation invariant at boundary vertex v: [cw-next, cw-prev, interior...]
    rotations: list[list[int]] = [[1, 2], [2, 0], [0, 1]]
    boundary = [0, 1, 2]  # clockwise
    for v in range(3, n):
        j = rng.randrange(len(boundary))
        a = boundary[j]
        b = boundary[(j + 1) % len(boundary)]
        rotations.append([b, a])
        # a: new cw-next is v, old cw-next b becomes the last interior dart
        rotations[a] = [v] + rotations[a][1:] + [b]
        # b: new cw-prev is v, old cw-prev a becomes the first interior dart
        rotations[b] = [rotations[b][0], v] + rotations[b][1:]
        boundary.insert(j + 1, v)
    coords = [(0.0, 0.0)] * n
    r = len(boundary)
    for j, v in enumerate(boundary):
        ang = math.pi / 2 - 2 * math.pi * j / r  # clockwise placement
        coords[v] = (math.cos(ang), math.sin(ang))
    return RawInstance(rotations, boundary, coords)


# ---------------------------------------------------------------------------
# Terminal pair models
# ---------------------------------------------------------------------------

def nested_pairs(boundary: list[int], k: int, seed: int) -> list[tuple[int, int]]:
    """k pairs over distinct boundary vertices matched by a random balanced
    parenthesis string, hence nested or disjoint (never interleaved)."""
    if k < 0:
        raise ParamOutOfRange("k must be >= 0")
    if 2 * k > len(boundary):
        raise ParamOutOfRange(
            f"k={k} needs {2 * k} boundary vertices, have {len(boundary)}")
    rng = random.Random(seed)
    positions = sorted(rng.sample(range(len(boundary)), 2 * k))
    paren = _random_balanced(k, rng)
    stack: list[int] = []
    pairs: list[Optional[tuple[int, int]]] = [None] * k
    nxt = 0
    for pos, ch in zip(positions, paren):
        if ch == "(":
            stack.append((nxt, pos))
            nxt += 1
        else:
            i, open_pos = stack.pop()
            pairs[i] = (boundary[open_pos], boundary[pos])
    return [p for p in pairs if p is not None]


def _random_balanced(k: int, rng: random.Random) -> str:
    """Uniform balanced string of k '(' and k ')' via the cycle lemma."""
    if k == 0:
        return ""
    word = ["("] * k + [")"] * (k)
    rng.shuffle(word)
    # rotate to the cyclic shift that is balanced (exists and is unique
    # for k+? mismatch-free prefix; classic cycle-lemma fixup)
    best, depth, min_depth = 0, 0, 0
    for i, ch in enumerate(word):
        depth += 1 if ch == "(" else -1
        if depth < min_depth:
            min_depth = depth
            best = i + 1
    word = word[best:] + word[:best]
    return "".join(word)


def corner_pair(width: int, height: int) -> list[tuple[int, int]]:
    """Single pair joining the top-left and bottom-right grid corners."""
    return [(0, width * height - 1)]


def random_weights(rotations: list[list[int]], max_weight: int, seed: int
                   ) -> dict:
    """Uniform integer weights in [1, max_weight] per undirected edge."""
    if max_weight < 1:
        raise ParamOutOfRange("max_weight must be >= 1")
    rng = random.Random(seed)
    weights = {}
    for v, lst in enumerate(rotations):
        for u in lst:
            if v < u:
                weights[(v, u)] = rng.randint(1, max_weight)
    return weights
