# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled folding kernel.

Same contract as _foldpy.fold_edges (which holds the reference
semantics and the full docstring); the union-find lives in a C int
array, adjacency stays in per-class dicts keyed by label.  Folding is
confluent and the output is canonically ordered, so both backends
return identical results.
"""

from cpython cimport array
import array

BACKEND = "cython"


cdef inline int _find(int[::1] parent, int v):
    while parent[v] != v:
        parent[v] = parent[parent[v]]
        v = parent[v]
    return v


def fold_edges(int n, edges, pending=()):
    cdef array.array parent_arr = array.array('i', range(n))
    cdef int[::1] parent = parent_arr
    cdef list adj = [dict() for _ in range(n)]
    cdef list queue = [(int(a), int(b)) for a, b in pending]
    cdef dict d, big, small
    cdef object lab, cur, tv
    cdef int s, t, a, b, ra, rb, rc, rt, v, r

    for s, lab, t in edges:
        d = <dict> adj[_find(parent, s)]
        cur = d.get(lab)
        if cur is None:
            d[lab] = t
        elif <int> cur != t:
            queue.append((<int> cur, t))

    while queue:
        a, b = queue.pop()
        ra = _find(parent, a)
        rb = _find(parent, b)
        if ra == rb:
            continue
        big = <dict> adj[ra]
        small = <dict> adj[rb]
        if len(big) < len(small):
            ra, rb = rb, ra
            big, small = small, big
        parent[rb] = ra
        for lab, tv in small.items():
            cur = big.get(lab)
            if cur is None:
                big[lab] = tv
            else:
                rc = _find(parent, <int> cur)
                rt = _find(parent, <int> tv)
                if rc != rt:
                    queue.append((rc, rt))
        adj[rb] = {}

    min_of = {}
    for v in range(n):
        r = _find(parent, v)
        if r not in min_of or v < min_of[r]:
            min_of[r] = v
    roots = sorted(min_of, key=min_of.get)
    dense = {rr: i for i, rr in enumerate(roots)}
    mapping = [dense[_find(parent, v)] for v in range(n)]

    out = set()
    for rr in roots:
        s = dense[rr]
        for lab, tv in (<dict> adj[rr]).items():
            out.add((s, lab, dense[_find(parent, <int> tv)]))
    return mapping, sorted(out)
