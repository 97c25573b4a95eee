# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled census kernel: same canonical generation as ``_fallback.walk_maps``."""

from libc.string cimport memset

DEF MAXN = 12
DEF MAXF = 4 * MAXN


cdef struct Ctx:
    int n
    int open_
    int crossings
    int head
    int tau[MAXF]
    long long total
    long long single
    long long all_by_d[MAXN + 1]
    long long single_by_d[MAXN + 1]


cdef inline int sig(int f) nogil:
    return (f & ~3) | ((f + 1) & 3)


cdef int strand_cycles(Ctx* c) nogil:
    cdef unsigned char seen[MAXF]
    cdef int size = 4 * c.n
    cdef int s, f, count = 0
    memset(seen, 0, size)
    for s in range(size):
        if seen[s]:
            continue
        count += 1
        f = s
        while not seen[f]:
            seen[f] = 1
            f = c.tau[f] ^ 2
    return count


cdef int leg_distance(Ctx* c) nogil:
    cdef int lab[MAXF]
    cdef int dist[MAXF]
    cdef int queue[MAXF]
    cdef int size = 4 * c.n
    cdef int s, f, g, k = 0, u, qh = 0, qt = 0, start, goal
    for s in range(size):
        lab[s] = -1
    for s in range(size):
        if lab[s] >= 0:
            continue
        f = s
        while lab[f] < 0:
            lab[f] = k
            f = sig(c.tau[f])
        k += 1
    for s in range(k):
        dist[s] = -1
    start = lab[0]
    goal = lab[c.head]
    dist[start] = 0
    queue[qt] = start
    qt += 1
    while qh < qt:
        u = queue[qh]
        qh += 1
        if u == goal:
            return dist[u]
        # faces adjacent across each edge of face u
        for f in range(size):
            if lab[f] != u:
                continue
            g = c.tau[f]
            if g == f:
                continue
            if dist[lab[g]] < 0:
                dist[lab[g]] = dist[u] + 1
                queue[qt] = lab[g]
                qt += 1
    return -1


cdef inline bint is_leg(Ctx* c, int f) nogil:
    return c.open_ and (f == 0 or f == c.head)


cdef void leaf(Ctx* c) nogil:
    cdef int cycles = strand_cycles(c)
    cdef bint single = cycles == (1 if c.open_ else 2)
    cdef int d
    c.total += 1
    if single:
        c.single += 1
    if c.open_:
        d = leg_distance(c)
        c.all_by_d[d] += 1
        if single:
            c.single_by_d[d] += 1


cdef void rec(Ctx* c, int f) nogil:
    cdef int size = 4 * c.crossings
    cdef int g, k
    while f < size and (c.tau[f] != f or is_leg(c, f)):
        f += 1
    if f == size:
        if c.crossings == c.n and (not c.open_ or c.head >= 0):
            leaf(c)
        return
    g = sig(c.tau[f])
    while g != f:
        if c.tau[g] == g and not is_leg(c, g):
            c.tau[f] = g
            c.tau[g] = f
            rec(c, f + 1)
            c.tau[f] = f
            c.tau[g] = g
        g = sig(c.tau[g])
    if c.crossings < c.n:
        k = c.crossings
        c.crossings += 1
        for g in range(4):
            c.tau[4 * k + g] = 4 * k + g
        c.tau[f] = 4 * k
        c.tau[4 * k] = f
        rec(c, f + 1)
        c.tau[f] = f
        c.crossings -= 1
    if c.open_ and c.head < 0:
        c.head = f
        rec(c, f + 1)
        c.head = -1


def census_counts(int n, bint open_):
    """Compiled twin of ``_fallback.census_counts``."""
    if n < 1 or n > MAXN:
        raise ValueError(f"compiled census supports 1 <= n <= {MAXN}")
    cdef Ctx c
    memset(&c, 0, sizeof(Ctx))
    c.n = n
    c.open_ = open_
    c.crossings = 1
    c.head = -1
    for k in range(4):
        c.tau[k] = k
    with nogil:
        rec(&c, 0)
    out = {"all": c.total, "single": c.single}
    if open_:
        out["all_by_distance"] = [c.all_by_d[k] for k in range(n + 1)]
        out["single_by_distance"] = [c.single_by_d[k] for k in range(n + 1)]
    return out
