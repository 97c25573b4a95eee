"""Brute-force reference computations, written against the definitions only.

Nothing here imports the package's enumerator, bracket or closure code, so
agreement with those is evidence rather than tautology.
"""

from __future__ import annotations

import itertools
from collections import deque
from functools import lru_cache
from math import factorial

import numpy as np


# --------------------------------------------------------------------------
# pair-all-flags census


@lru_cache(maxsize=None)
def perfect_matchings(m: int) -> np.ndarray:
    """Every fixed-point-free involution of ``range(m)`` as rows of an int16 array."""
    if m == 0:
        return np.zeros((1, 0), dtype=np.int16)
    blocks = []
    for j in range(1, m):
        rest = np.array([i for i in range(1, m) if i != j], dtype=np.int16)
        sub = perfect_matchings(m - 2)
        block = np.empty((sub.shape[0], m), dtype=np.int16)
        block[:, 0] = j
        block[:, j] = 0
        block[:, rest] = rest[sub]
        blocks.append(block)
    return np.concatenate(blocks)


def _open_pairings(n: int) -> np.ndarray:
    """Tail fixed at flag 0, every head, every matching of the other flags."""
    m = 4 * n
    blocks = []
    for head in range(1, m):
        rest = np.array([i for i in range(1, m) if i != head], dtype=np.int16)
        sub = perfect_matchings(m - 2)
        block = np.empty((sub.shape[0], m), dtype=np.int16)
        block[:, 0] = 0
        block[:, head] = head
        block[:, rest] = rest[sub]
        blocks.append(block)
    return np.concatenate(blocks)


def _cycle_count(perm: np.ndarray) -> np.ndarray:
    """Number of cycles of each row permutation, by pointer-doubling min labels."""
    rows, m = perm.shape
    idx = np.arange(rows)[:, None]
    lab = np.broadcast_to(np.arange(m, dtype=np.int16), perm.shape).copy()
    p = perm.copy()
    steps = 1
    while steps < m:
        lab = np.minimum(lab, lab[idx, p])
        p = p[idx, p]
        steps *= 2
    return (lab == np.arange(m)).sum(axis=1)


def _connected(tau: np.ndarray) -> np.ndarray:
    rows, m = tau.shape
    idx = np.arange(rows)[:, None]
    sigma = np.array([(f & ~3) | ((f + 1) & 3) for f in range(m)], dtype=np.int16)
    lab = np.broadcast_to(np.arange(m, dtype=np.int16), tau.shape).copy()
    for _ in range(m):
        new = np.minimum(lab, np.minimum(lab[:, sigma], lab[idx, tau]))
        if np.array_equal(new, lab):
            break
        lab = new
    return (lab == 0).all(axis=1)


def brute_force_counts(n: int) -> dict[str, int]:
    """Rooted planar counts of all four shadow classes at ``n`` crossings.

    Labeled maps are counted among all pairings, then divided by the
    ``n! 4^n`` relabelings; each rooted map has no automorphism, so the
    division is exact.
    """
    m = 4 * n
    sigma = np.array([(f & ~3) | ((f + 1) & 3) for f in range(m)], dtype=np.int16)
    group = factorial(n) * 4 ** n
    out = {}
    for open_ in (False, True):
        tau = _open_pairings(n) if open_ else perfect_matchings(m)
        faces = _cycle_count(sigma[tau])
        strands = _cycle_count(tau ^ 2)
        planar = _connected(tau) & (faces == (n + 1 if open_ else n + 2))
        single = planar & (strands == (1 if open_ else 2))
        for name, mask in (("all", planar), ("single", single)):
            labeled = int(mask.sum()) * m
            assert labeled % group == 0, (n, open_, name)
            out[(open_, name)] = labeled // group
    return {
        "link-shadow": out[(False, "all")],
        "knot-shadow": out[(False, "single")],
        "multi-knotoid-shadow": out[(True, "all")],
        "knotoid-shadow": out[(True, "single")],
    }


# --------------------------------------------------------------------------
# bracket by direct state sum


def _a_regions_joined(sign: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Flag pairs joined by the A-smoothing.

    Turning the over strand counterclockwise sweeps the two A regions; the
    A-smoothing opens a channel between them.  With the over strand on flags
    {0, 2} those regions sit after flags 0 and 2, so arcs join 1-2 and 3-0.
    """
    return ((1, 2), (3, 0)) if sign > 0 else ((0, 1), (2, 3))


def _b_pairs(sign: int):
    return _a_regions_joined(-sign)


def state_sum_bracket(tau, signs) -> dict[int, int]:
    """Kauffman bracket in ``A`` with unit loop value for the crossingless circle."""
    n = len(signs)
    if n == 0:
        return {0: 1}
    total: dict[int, int] = {}
    for state in itertools.product((True, False), repeat=n):
        parent = list(range(4 * n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            parent[find(a)] = find(b)

        for f, g in enumerate(tau):
            union(f, g)
        for v, a in enumerate(state):
            pairs = _a_regions_joined(signs[v]) if a else _b_pairs(signs[v])
            for p, q in pairs:
                union(4 * v + p, 4 * v + q)
        loops = len({find(f) for f in range(4 * n)})
        n_a = sum(state)
        # A^(a-b) d^(loops-1), d = -A^2 - A^-2
        poly = {n_a - (n - n_a): 1}
        for _ in range(loops - 1):
            nxt: dict[int, int] = {}
            for e, c in poly.items():
                nxt[e + 2] = nxt.get(e + 2, 0) - c
                nxt[e - 2] = nxt.get(e - 2, 0) - c
            poly = nxt
        for e, c in poly.items():
            total[e] = total.get(e, 0) + c
    return {e: c for e, c in total.items() if c}


# Jones polynomials of small prime knots from the standard Rolfsen-table
# literature, as {exponent of t: coefficient}, one chirality each.
REFERENCE_JONES = {
    "3_1": {1: 1, 3: 1, 4: -1},
    "4_1": {-2: 1, -1: -1, 0: 1, 1: -1, 2: 1},
    "5_1": {-7: -1, -6: 1, -5: -1, -4: 1, -2: 1},
    "5_2": {-6: -1, -5: 1, -4: -1, -3: 2, -2: -1, -1: 1},
    "6_1": {-4: 1, -3: -1, -2: 1, -1: -2, 0: 2, 1: -1, 2: 1},
    "6_2": {-1: 1, 0: -1, 1: 2, 2: -2, 3: 2, 4: -2, 5: 1},
    "6_3": {-3: -1, -2: 2, -1: -2, 0: 3, 1: -2, 2: 2, 3: -1},
    "7_1": {-10: -1, -9: 1, -8: -1, -7: 1, -6: -1, -5: 1, -3: 1},
}


def mirror_poly(p: dict[int, int]) -> dict[int, int]:
    return {-e: c for e, c in p.items()}


# --------------------------------------------------------------------------
# geodesic distance by breadth-first search on the dual graph


def dual_distance(tau, tail: int, head: int) -> int:
    m = len(tau)
    face = [-1] * m
    k = 0
    for s in range(m):
        if face[s] >= 0:
            continue
        f = s
        while face[f] < 0:
            face[f] = k
            g = tau[f]
            f = (g & ~3) | ((g + 1) & 3)
        k += 1
    adj = {i: set() for i in range(k)}
    for f, g in enumerate(tau):
        if f != g:
            adj[face[f]].add(face[g])
            adj[face[g]].add(face[f])
    dist = {face[tail]: 0}
    queue = deque([face[tail]])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist[face[head]]
