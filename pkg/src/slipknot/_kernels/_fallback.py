"""Pure-Python versions of the compiled kernels (same algorithms, same outputs)."""

from __future__ import annotations

from collections import deque


def _sigma(f):
    return (f & ~3) | ((f + 1) & 3)


def walk_maps(n, open_):
    """Yield every rooted planar map with ``n`` crossings exactly once.

    Maps come out in breadth-first canonical labeling: flags are processed in
    increasing order and each is either paired with a loose flag on its face,
    attached to offset 0 of a fresh crossing, or (open maps) made the head leg.
    Closed maps are rooted at flag 0; open maps have flag 0 as their tail.
    Yields ``(tau, head)`` where ``tau`` is a shared list (copy it to keep it)
    and ``head`` is -1 for closed maps.
    """
    if n <= 0:
        return
    tau = [0, 1, 2, 3]
    state = {"crossings": 1, "head": -1}

    def rec(f):
        size = len(tau)
        while f < size and (tau[f] != f or (open_ and (f == 0 or f == state["head"]))):
            f += 1
        if f == size:
            if state["crossings"] == n and (not open_ or state["head"] >= 0):
                yield tau, state["head"]
            return
        # partners on the same face keep the map planar
        g = _sigma(tau[f])
        while g != f:
            if tau[g] == g and g != state["head"] and not (open_ and g == 0):
                tau[f], tau[g] = g, f
                yield from rec(f + 1)
                tau[f], tau[g] = f, g
            g = _sigma(tau[g])
        if state["crossings"] < n:
            c = state["crossings"]
            state["crossings"] += 1
            tau.extend(range(4 * c, 4 * c + 4))
            tau[f], tau[4 * c] = 4 * c, f
            yield from rec(f + 1)
            tau[f] = f
            del tau[4 * c:]
            state["crossings"] -= 1
        if open_ and state["head"] < 0:
            state["head"] = f
            yield from rec(f + 1)
            state["head"] = -1

    yield from rec(0)


def strand_cycle_count(tau):
    seen = bytearray(len(tau))
    count = 0
    for s in range(len(tau)):
        if seen[s]:
            continue
        count += 1
        f = s
        while not seen[f]:
            seen[f] = 1
            f = tau[f] ^ 2
    return count


def face_labels(tau):
    lab = [-1] * len(tau)
    k = 0
    for s in range(len(tau)):
        if lab[s] >= 0:
            continue
        f = s
        while lab[f] < 0:
            lab[f] = k
            f = _sigma(tau[f])
        k += 1
    return lab, k


def leg_distance(tau, tail, head):
    """Fewest edges crossed by a path in the surface from the tail's face to the head's."""
    lab, k = face_labels(tau)
    adj = [[] for _ in range(k)]
    for f, g in enumerate(tau):
        if f < g:
            adj[lab[f]].append(lab[g])
            adj[lab[g]].append(lab[f])
    start, goal = lab[tail], lab[head]
    dist = [-1] * k
    dist[start] = 0
    queue = deque([start])
    while queue:
        u = queue.popleft()
        if u == goal:
            return dist[u]
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return -1


def census_counts(n, open_):
    """Tallies over all rooted planar maps with ``n >= 1`` crossings.

    Closed: ``{"all": N, "single": K}`` (link and knot shadows).
    Open: ``{"all", "single", "all_by_distance", "single_by_distance"}``,
    where ``single`` means one strand (knotoid) and distances are lists.
    """
    out = {"all": 0, "single": 0}
    if open_:
        out["all_by_distance"] = [0] * (n + 1)
        out["single_by_distance"] = [0] * (n + 1)
    for tau, head in walk_maps(n, open_):
        out["all"] += 1
        single = strand_cycle_count(tau) == (1 if open_ else 2)
        if single:
            out["single"] += 1
        if open_:
            d = leg_distance(tau, 0, head)
            out["all_by_distance"][d] += 1
            if single:
                out["single_by_distance"][d] += 1
    return out


def state_histogram(tau, signs):
    """``hist[a][loops]``: number of states with ``a`` A-smoothings and ``loops`` circles.

    A crossing of sign +1 has its over strand on flags 0 and 2; its A-smoothing
    joins flags 1-2 and 3-0.  For sign -1 the A-smoothing joins 0-1 and 2-3.
    """
    n = len(signs)
    size = 4 * n
    hist = [[0] * (size + 1) for _ in range(n + 1)]
    for mask in range(1 << n):
        parent = list(range(size))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        n_a = 0
        for i in range(n):
            plus = (mask >> i) & 1 == 1
            n_a += plus
            base = 4 * i
            if plus == (signs[i] > 0):
                joins = ((1, 2), (3, 0))
            else:
                joins = ((0, 1), (2, 3))
            for p, q in joins:
                parent[find(base + p)] = find(base + q)
        for f in range(size):
            a, b = find(f), find(tau[f])
            if a != b:
                parent[a] = b
        loops = sum(1 for f in range(size) if parent[f] == f)
        hist[n_a][loops] += 1
    return hist
