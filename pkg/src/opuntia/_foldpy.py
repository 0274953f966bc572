"""Pure-Python folding kernel.

fold_edges collapses a labeled graph to a deterministic one: whenever two
edges with the same label leave one vertex their targets are identified,
union-find style, until no clash remains.  Vertex ids are re-densified so
that classes are numbered by their smallest original member.

The compiled twin lives in _foldcore.pyx; both expose the same function.
"""
from __future__ import annotations

BACKEND = "python"


def fold_edges(n, edges, pending=()):
    """Fold a graph given as directed labeled edges.

    n        -- number of vertices (ids 0..n-1)
    edges    -- iterable of (src, label, dst); callers include both
                directions of each involutive edge pair
    pending  -- extra vertex identifications to apply first

    Returns (mapping, out_edges): mapping is a list sending each old id to
    its new dense id; out_edges is the sorted, deduplicated edge list in
    new ids.
    """
    parent = list(range(n))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    adj = [{} for _ in range(n)]
    queue = [(a, b) for a, b in pending]

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra == rb:
            return
        if len(adj[ra]) < len(adj[rb]):
            ra, rb = rb, ra
        parent[rb] = ra
        big, small = adj[ra], adj[rb]
        for lab, t in small.items():
            cur = big.get(lab)
            if cur is None:
                big[lab] = t
            else:
                rc, rt = find(cur), find(t)
                if rc != rt:
                    queue.append((rc, rt))
        adj[rb] = {}

    for s, lab, t in edges:
        d = adj[find(s)]
        cur = d.get(lab)
        if cur is None:
            d[lab] = t
        elif cur != t:
            queue.append((cur, t))

    while queue:
        a, b = queue.pop()
        union(a, b)

    # densify: classes ordered by their minimum original vertex id
    min_of = {}
    for v in range(n):
        r = find(v)
        if r not in min_of or v < min_of[r]:
            min_of[r] = v
    roots = sorted(min_of, key=min_of.get)
    dense = {r: i for i, r in enumerate(roots)}
    mapping = [dense[find(v)] for v in range(n)]

    out = set()
    for r in roots:
        s = dense[r]
        for lab, t in adj[r].items():
            out.add((s, lab, dense[find(t)]))
    return mapping, sorted(out)
