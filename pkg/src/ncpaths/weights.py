"""Small-integer edge weights via subdivision.

A weight-r edge becomes a path of r unit edges through fresh degree-2
vertices, splicing rotation lists (and the outer cycle when the edge lies
on the boundary).  Original vertex ids are stable; fresh ids start at n.
"""

from __future__ import annotations

from .errors import NonPositiveWeight, WeightCapExceeded

DEFAULT_WEIGHT_CAP = 20_000_000


def subdivide_weights(rotations: list[list[int]], outer: list[int],
                      weights: dict, cap: int = DEFAULT_WEIGHT_CAP
                      ) -> tuple[list[list[int]], list[int], list[int]]:
    """Returns (unit rotations, unit outer cycle, vertex map).

    The map sends each original vertex to its id in the subdivided
    instance (stable, hence the identity); fresh chain vertices take ids
    n, n+1, ... in sorted edge order.
    """
    n = len(rotations)
    edges = sorted({(min(v, u), max(v, u))
                    for v, lst in enumerate(rotations) for u in lst})
    for key in edges:
        w = weights.get(key)
        if w is None:
            raise NonPositiveWeight(f"edge {key[0]}-{key[1]} has no weight")
        if not isinstance(w, int) or w < 1:
            raise NonPositiveWeight(
                f"edge {key[0]}-{key[1]} has weight {w!r}; need a positive "
                "integer")
    total = sum(weights[k] for k in edges)
    if total > cap:
        raise WeightCapExceeded(f"total weight {total} exceeds cap {cap}")

    new_rot = [list(lst) for lst in rotations]
    chains: dict[tuple[int, int], list[int]] = {}
    nxt = n
    for (lo, hi) in edges:
        w = weights[(lo, hi)]
        if w == 1:
            continue
        chain = list(range(nxt, nxt + w - 1))
        nxt += w - 1
        chains[(lo, hi)] = chain
        new_rot[lo][new_rot[lo].index(hi)] = chain[0]
        new_rot[hi][new_rot[hi].index(lo)] = chain[-1]
        # chain ids were allocated in append order, so ids stay aligned
        link = [lo] + chain + [hi]
        for j in range(len(chain)):
            new_rot.append([link[j], link[j + 2]])

    new_outer = []
    r = len(outer)
    for i, a in enumerate(outer):
        b = outer[(i + 1) % r]
        new_outer.append(a)
        key = (min(a, b), max(a, b))
        chain = chains.get(key)
        if chain:
            new_outer.extend(chain if a == key[0] else list(reversed(chain)))
    return new_rot, new_outer, list(range(n))
