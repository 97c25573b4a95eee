# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Kauffman state enumeration (twin of ``_fallback.state_histogram``)."""

from libc.stdlib cimport malloc, free

DEF MAXN = 24


cdef inline int find(int* parent, int x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def state_histogram(tau, signs):
    """``hist[a][loops]``: number of states with ``a`` A-smoothings and ``loops`` circles."""
    cdef int n = len(signs)
    cdef int size = 4 * n
    if n > MAXN:
        raise ValueError(f"state enumeration supports at most {MAXN} crossings")
    cdef int ctau[4 * MAXN]
    cdef int csign[MAXN]
    cdef int parent[4 * MAXN]
    cdef long long* hist
    cdef long long mask, total = 1LL << n
    cdef int i, f, a, b, loops, n_a, plus
    for f in range(size):
        ctau[f] = tau[f]
    for i in range(n):
        csign[i] = signs[i]
    hist = <long long*> malloc((n + 1) * (size + 1) * sizeof(long long))
    for i in range((n + 1) * (size + 1)):
        hist[i] = 0
    with nogil:
        for mask in range(total):
            for f in range(size):
                parent[f] = f
            n_a = 0
            for i in range(n):
                # bit set = A-smoothing
                plus = ((mask >> i) & 1) == 1
                if plus:
                    n_a += 1
                if plus == (csign[i] > 0):
                    a = find(parent, 4 * i + 1)
                    b = find(parent, 4 * i + 2)
                    parent[a] = b
                    a = find(parent, 4 * i + 3)
                    b = find(parent, 4 * i)
                    parent[a] = b
                else:
                    a = find(parent, 4 * i)
                    b = find(parent, 4 * i + 1)
                    parent[a] = b
                    a = find(parent, 4 * i + 2)
                    b = find(parent, 4 * i + 3)
                    parent[a] = b
            for f in range(size):
                a = find(parent, f)
                b = find(parent, ctau[f])
                if a != b:
                    parent[a] = b
            loops = 0
            for f in range(size):
                if parent[f] == f:
                    loops += 1
            hist[n_a * (size + 1) + loops] += 1
    out = [[hist[i * (size + 1) + loops] for loops in range(size + 1)] for i in range(n + 1)]
    free(hist)
    return out
