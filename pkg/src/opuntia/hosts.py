"""Feed-off structure of a two-colored decomposition.

A lobe that can be rebuilt from a neighbor by the single-bud attachment
is said to feed off it; leaves that feed off their unique neighbor are
parasites.  Peeling parasites exposes the stable residue.  When the
residue is a single lobe that is a full one-factor graph of an
idempotent of the common subsemigroup, the analyzed word lives in the
multi-host situation: the hosts are exactly the lobes of that shape,
they attach to each other at vertices whose minimum loop idempotents on
both sides come from U, and the host union may be infinite.  This
module decides which, by growing the host region far enough for a
pigeonhole argument on lobe types."""

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .errors import (
    NotAdjacent,
    NotIsomorphicLobes,
    BudgetExceeded,
    DEFAULT_MAX_EDGES,
    DEFAULT_MAX_LOBES,
)
from .graphs import InverseWordGraph, schutz_graph, rooted_iso
from .semigroups import green
from .amalgams import (
    OpuntoidDecomposition,
    _as_lobe,
    loop_set,
    min_loop_idempotent,
    min_u_idempotent,
    core,
    construction5,
)


# -- lobes as standalone graphs ---------------------------------------------------


def lobe_graph(d: OpuntoidDecomposition, lobe):
    """The lobe as its own graph; returns (graph, local->global vertices)."""
    lobe = _as_lobe(d, lobe)
    index = {v: i for i, v in enumerate(lobe.vertices)}
    edges = [(index[s], c, index[t]) for s, c, t in lobe.edges]
    g = InverseWordGraph(d.graph.alphabet, len(lobe.vertices), edges,
                         closed=True)
    return g, lobe.vertices


def reduced_lobe_path(d: OpuntoidDecomposition, l1: int, l2: int):
    """The unique path l1 .. l2 in the lobe tree, as a tuple of lobe ids."""
    if l1 == l2:
        return (l1,)
    prev = {l1: None}
    queue = deque([l1])
    while queue:
        x = queue.popleft()
        for y in d.lobe_tree[x]:
            if y not in prev:
                prev[y] = x
                if y == l2:
                    queue.clear()
                    break
                queue.append(y)
    if l2 not in prev:
        raise ValueError(f"lobes {l1}, {l2} are not connected")
    path = [l2]
    while path[-1] != l1:
        path.append(prev[path[-1]])
    return tuple(reversed(path))


# -- feed-off and parasites -------------------------------------------------------


def direct_feed_off(d: OpuntoidDecomposition, lobe_from, lobe_to, v: int,
                    a=None) -> bool:
    """Whether lobe_to can be rebuilt from lobe_from alone at the shared
    vertex v: attach the right-multiplication graph of the minimum
    looping U-idempotent of lobe_from at v, collapse its net, and
    compare with (v, lobe_to, v) up to rooted isomorphism."""
    a = a or d.amalgam
    src = _as_lobe(d, lobe_from)
    dst = _as_lobe(d, lobe_to)
    i, j = src.color, dst.color
    if (j != 3 - i
            or d.lobe_of.get((i, v)) != src.index
            or d.lobe_of.get((j, v)) != dst.index):
        raise NotAdjacent(
            f"lobes {src.index}, {dst.index} do not share vertex {v}")

    Lset = loop_set(d, v, src, a)
    if not Lset:
        return False
    f = min_u_idempotent(d, v, src, a)
    if f is None:
        return False
    Sj = a.S(j)
    lam = schutz_graph(Sj, Sj.canonical_word(a.phi(j)(f)),
                       a.alphabet, a.offset(j))
    x = lam.final
    net = set()
    for u in Lset:
        y = lam.graph.trace(x, a.u_word(j, u))
        if y is not None:
            net.add(y)
    from .graphs import fold
    lam_g, rho = fold(lam.graph, [(x, y) for y in net if y != x])

    dst_g, dst_verts = lobe_graph(d, dst)
    local = dst_verts.index(v)
    return rooted_iso(lam_g, rho[x], dst_g, local) is not None


def parasites(d: OpuntoidDecomposition, a=None, live=None) -> frozenset:
    """Lobes with exactly one neighbor (within live), off which they feed."""
    a = a or d.amalgam
    live = frozenset(range(len(d.lobes))) if live is None else frozenset(live)
    out = set()
    for lid in live:
        nbrs = [m for m in d.lobe_tree[lid] if m in live]
        if len(nbrs) != 1:
            continue
        pair = tuple(sorted((lid, nbrs[0])))
        v = min(d.shared_vertices[pair])
        if direct_feed_off(d, nbrs[0], lid, v, a):
            out.add(lid)
    return frozenset(out)


# -- host detection ---------------------------------------------------------------


@dataclass
class HostAnalysis:
    host_lobes: frozenset
    multi_host: bool
    host_types: tuple          # ((color, u-idempotent up to D^{S_color}), ...)
    finiteness: Optional[str]  # "Finite" | "Infinite" | "Unknown" | None
    witness: Optional[int]     # idempotent of U at a host attachment
    residue: frozenset         # what peeling left over

    def __repr__(self):
        return (f"HostAnalysis(hosts={sorted(self.host_lobes)}, "
                f"multiHost={self.multi_host}, types={self.host_types})")


def full_schutz_witness(d: OpuntoidDecomposition, lobe, a=None):
    """(f, v) such that the lobe, rooted at v, is the full one-factor
    graph of phi_i(f) for an idempotent f of U with e_i(v) = phi_i(f);
    None when the lobe has no such shape."""
    a = a or d.amalgam
    lobe = _as_lobe(d, lobe)
    i = lobe.color
    S, phi = a.S(i), a.phi(i)
    lg, verts = lobe_graph(d, lobe)
    targets = {}
    for f in a.u.idempotents:
        fi = phi(f)
        for local, v in enumerate(verts):
            if min_loop_idempotent(d, v, lobe, a) != fi:
                continue
            if fi not in targets:
                targets[fi] = schutz_graph(S, S.canonical_word(fi),
                                           a.alphabet, a.offset(i))
            t = targets[fi]
            if rooted_iso(lg, local, t.graph, t.final) is not None:
                return f, v
    return None


def _mutual_attachment(d, a, l1, l2, v):
    """The idempotent f of U with phi on both colors matching the minimum
    loop idempotents at the shared vertex v, or None."""
    r1, r2 = _as_lobe(d, l1), _as_lobe(d, l2)
    f = min_u_idempotent(d, v, r1, a)
    if f is None:
        return None
    if (a.phi(r1.color)(f) == min_loop_idempotent(d, v, r1, a)
            and a.phi(r2.color)(f) == min_loop_idempotent(d, v, r2, a)):
        return f
    return None


def _host_closure(d, a, seeds):
    """Grow the host set across attachments whose shared vertex carries
    the same U-idempotent on both sides and whose far lobe is a full
    one-factor graph rooted there."""
    host = set(seeds)
    frontier = list(seeds)
    while frontier:
        lid = frontier.pop()
        for mid in d.lobe_tree[lid]:
            if mid in host:
                continue
            pair = tuple(sorted((lid, mid)))
            for v in d.shared_vertices[pair]:
                f = _mutual_attachment(d, a, lid, mid, v)
                if f is None:
                    continue
                rec = d.lobes[mid]
                S = a.S(rec.color)
                t = schutz_graph(S, S.canonical_word(a.phi(rec.color)(f)),
                                 a.alphabet, a.offset(rec.color))
                lg, verts = lobe_graph(d, mid)
                if rooted_iso(lg, verts.index(v), t.graph, t.final):
                    host.add(mid)
                    frontier.append(mid)
                    break
    return frozenset(host)


def hosts(d: OpuntoidDecomposition, a=None, choose=None) -> HostAnalysis:
    """Peel parasites one at a time down to the stable residue, then
    decide the multi-host situation.

    choose, when given, picks the next parasite from the sorted
    candidates (used to check peel-order independence)."""
    a = a or d.amalgam
    live = set(range(len(d.lobes)))
    while len(live) > 1:
        ps = parasites(d, a, live)
        if not ps:
            break
        ranked = sorted(ps)
        live.discard(ranked[0] if choose is None else choose(ranked))
    residue = frozenset(live)

    witness = None
    if len(residue) == 1:
        found = full_schutz_witness(d, next(iter(residue)), a)
        if found is not None:
            witness = found[0]
    if witness is None:
        return HostAnalysis(residue, False, (), None, None, residue)

    host_lobes = _host_closure(d, a, residue)
    types = set()
    for lid in host_lobes:
        f, _ = full_schutz_witness(d, lid, a)
        color = d.lobes[lid].color
        gk = green(a.S(color))
        rep = min(u for u in a.u.idempotents
                  if gk.d_related(a.phi(color)(u), a.phi(color)(f)))
        types.add((color, rep))
    return HostAnalysis(host_lobes, True, tuple(sorted(types)), None,
                        witness, residue)


def is_D_related_to_U(a, w, max_edges: int = DEFAULT_MAX_EDGES):
    """The idempotent f of U witnessing ww^-1 D f in the amalgam, read
    off the host analysis of the core (which already contains a host);
    None when there is no such f."""
    _, d = core(a, a.parse_word(w) if isinstance(w, str) else w, max_edges)
    return hosts(d, a).witness


# -- lobe types -------------------------------------------------------------------


def _rooted_signature(g, root, annotations):
    """Canonical traversal encoding of a connected deterministic graph
    from a root, with per-vertex annotations."""
    order = {root: 0}
    seq = [root]
    i = 0
    while i < len(seq):
        v = seq[i]
        i += 1
        for c in range(g.alphabet.n_letters()):
            w = g.succ[v].get(c)
            if w is not None and w not in order:
                order[w] = len(seq)
                seq.append(w)
    edges = tuple(sorted((order[s], c, order[t]) for s, c, t in g.edges))
    ann = tuple(annotations[v] for v in seq)
    return edges, ann


def lobe_type_key(d: OpuntoidDecomposition, lobe, a=None):
    """(color, minimal rooted signature): equal keys iff the lobes are
    isomorphic with the same looping-U data at corresponding vertices."""
    a = a or d.amalgam
    lobe = _as_lobe(d, lobe)
    lg, verts = lobe_graph(d, lobe)
    ann = [tuple(sorted(loop_set(d, v, lobe, a))) for v in verts]
    sig = min(_rooted_signature(lg, r, ann) for r in range(lg.n))
    return (lobe.color, sig)


# -- shift isomorphisms -----------------------------------------------------------


def shift_iso(d: OpuntoidDecomposition, lobe1, lobe2, a=None):
    """An isomorphism lobe1 -> lobe2 moving the first attachment vertex
    of the reduced lobe path outside the last shared vertex set, as a
    global-vertex dict; None when every isomorphism re-enters it."""
    a = a or d.amalgam
    r1, r2 = _as_lobe(d, lobe1), _as_lobe(d, lobe2)
    if r1.index == r2.index:
        raise ValueError("shift_iso needs two distinct lobes")
    if r1.color != r2.color:
        raise NotIsomorphicLobes(
            f"lobes {r1.index}, {r2.index} have different colors")
    path = reduced_lobe_path(d, r1.index, r2.index)
    nu1 = min(d.shared_vertices[tuple(sorted(path[:2]))])
    last = set(d.shared_vertices[tuple(sorted(path[-2:]))])

    g1, verts1 = lobe_graph(d, r1)
    g2, verts2 = lobe_graph(d, r2)
    source = verts1.index(nu1)
    found_any = False
    for target, w in enumerate(verts2):
        mapping = rooted_iso(g1, source, g2, target)
        if mapping is None:
            continue
        found_any = True
        if w not in last:
            return {verts1[k]: verts2[mapping[k]] for k in range(g1.n)}
    if not found_any:
        raise NotIsomorphicLobes(
            f"lobes {r1.index}, {r2.index} are not isomorphic")
    return None


# -- host region growth -----------------------------------------------------------


@dataclass
class HostRegion:
    decomposition: OpuntoidDecomposition
    analysis: HostAnalysis
    host_lobes: frozenset
    dist: dict        # lobe id -> tree distance from the initial host set
    types: dict       # lobe id -> LobeTypeKey
    stabilized: bool  # no qualifying bud left anywhere on host lobes
    radius: int
    n_types: int


def _qualifying_bud(d, a, v):
    """The U-idempotent f with phi_i(f) equal to the bud's minimum loop
    idempotent (the only attachments that extend the host set)."""
    lobe = d.lobes[d.vertex_lobes[v][0]]
    f = min_u_idempotent(d, v, lobe, a)
    if f is None:
        return None
    if a.phi(lobe.color)(f) == min_loop_idempotent(d, v, lobe, a):
        return f
    return None


def host_region(a, w, max_edges: int = DEFAULT_MAX_EDGES,
                max_lobes: int = DEFAULT_MAX_LOBES) -> HostRegion:
    """Grow the core's host set out to reduced-path radius 2T+2, where T
    is the number of distinct lobe types seen so far (recomputed as new
    types appear).  Only buds whose minimum loop idempotent comes from U
    are expanded: anything else attaches a parasite."""
    w = a.parse_word(w) if isinstance(w, str) else tuple(w)
    _, d = core(a, w, max_edges)
    analysis = hosts(d, a)
    if not analysis.multi_host:
        types = {lid: lobe_type_key(d, lid, a) for lid in analysis.host_lobes}
        dist = {lid: 0 for lid in analysis.host_lobes}
        return HostRegion(d, analysis, analysis.host_lobes, dist, types,
                          True, 0, len(set(types.values())))

    host = set(analysis.host_lobes)
    dist = {lid: 0 for lid in host}
    types = {lid: lobe_type_key(d, lid, a) for lid in host}

    def radius():
        return 2 * len(set(types.values())) + 2

    queue = deque()
    for b in d.buds:
        lid = d.vertex_lobes[b][0]
        if lid in host and _qualifying_bud(d, a, b) is not None:
            queue.append((b, dist[lid]))

    while queue:
        b, dl = queue.popleft()
        if dl >= radius():
            continue
        if b not in d.buds or _qualifying_bud(d, a, b) is None:
            continue
        d2 = construction5(d, a, b)
        m = d2.old_vertex_map
        remap = {}
        for lid, rec in enumerate(d.lobes):
            remap[lid] = d2.lobe_of[(rec.color, m[rec.vertices[0]])]
        added = (set(range(len(d2.lobes))) - set(remap.values())).pop()
        host = {remap[lid] for lid in host} | {added}
        dist = {remap[lid]: dx for lid, dx in dist.items()}
        dist[added] = dl + 1
        types = {remap[lid]: tk for lid, tk in types.items()}
        types[added] = lobe_type_key(d2, added, a)
        old_image = set(m)
        queue = deque((m[q], dq) for q, dq in queue)
        for b2 in d2.buds:
            if b2 not in old_image:
                queue.append((b2, dl + 1))
        d = d2
        if len(d.lobes) > max_lobes:
            raise BudgetExceeded("lobe", max_lobes, "during host_region()")

    leftovers = [b for b in d.buds
                 if d.vertex_lobes[b][0] in host
                 and _qualifying_bud(d, a, b) is not None]
    return HostRegion(d, analysis, frozenset(host), dist, types,
                      not leftovers, radius(), len(set(types.values())))


def _same_type_triple(d, host, types):
    """Three host lobes of one type on a single reduced lobe path."""
    by_type = {}
    for lid in host:
        by_type.setdefault(types[lid], []).append(lid)
    for members in by_type.values():
        if len(members) < 3:
            continue
        members = sorted(members)
        for ai in range(len(members)):
            for bi in range(ai + 1, len(members)):
                path = reduced_lobe_path(d, members[ai], members[bi])
                inner = set(path[1:-1])
                for y in members:
                    if y in inner:
                        return members[ai], y, members[bi]
    return None


def classify_finiteness(a, w, max_edges: int = DEFAULT_MAX_EDGES,
                        max_lobes: int = DEFAULT_MAX_LOBES) -> str:
    """Geometric verdict on the host union of the word's automaton.

    Three lobes of one type on a reduced path give an isomorphic
    non-successive pair, hence an infinite host union; a region whose
    qualifying buds are exhausted is the complete (finite) host union;
    a region still growing past the pigeonhole radius without either is
    reported Unknown rather than guessed."""
    try:
        region = host_region(a, w, max_edges, max_lobes)
    except BudgetExceeded:
        return "Unknown"
    if not region.analysis.multi_host:
        return "Finite"
    if _same_type_triple(region.decomposition, region.host_lobes,
                         region.types):
        return "Infinite"
    if region.stabilized:
        return "Finite"
    return "Unknown"


# -- algebraic finiteness (advisory) ------------------------------------------------


def _u_reachable(a, f):
    """Idempotents of U reachable from f by steps that stay D-related in
    either factor (the attachment idempotents of successive hosts)."""
    g1, g2 = green(a.s1), green(a.s2)
    reach = {f}
    frontier = [f]
    while frontier:
        x = frontier.pop()
        for y in a.u.idempotents:
            if y in reach:
                continue
            if (g1.d_related(a.phi1(x), a.phi1(y))
                    or g2.d_related(a.phi2(x), a.phi2(y))):
                reach.add(y)
                frontier.append(y)
    return reach


def algebraic_finiteness_check(a, f) -> bool:
    """Advisory counterpart of classify_finiteness: search for a sequence
    f1..f_{2t-2} of idempotents of U that is reachable from f, has no
    D^U-related consecutive pair, alternates factor-D-relatedness, and
    closes up D^{S_k} on f1, f_t, f_{2t-2}.  True means the algebraic
    condition predicts an infinite maximal subgroup."""
    U = a.u
    EU = list(U.idempotents)
    if not EU:
        return False
    gU = green(U)
    gk = {1: green(a.s1), 2: green(a.s2)}

    def drel(k, x, y):
        return gk[k].d_related(a.phi(k)(x), a.phi(k)(y))

    start = _u_reachable(a, f)
    tmax = 2 * len(EU) * len(EU) + 2
    for k in (1, 2):
        for t in range(2, tmax + 1):
            L = 2 * t - 2

            def allowed(p, x, y):
                # step from position p to p+1
                if gU.d_related(x, y):
                    return False
                return drel(3 - k if p % 2 == 1 else k, x, y)

            def layers(first, p0):
                reach = {first}
                out = [None] * (L + 1)
                out[p0] = set(reach)
                for p in range(p0, L):
                    reach = {y for y in EU
                             for x in reach if allowed(p, x, y)}
                    out[p + 1] = set(reach)
                return out

            for f1 in start:
                fwd = layers(f1, 1)
                for ft in fwd[t]:
                    if not drel(k, f1, ft):
                        continue
                    tail = layers(ft, t)
                    if any(drel(k, ft, fl) for fl in tail[L]):
                        return True
    return False


def finiteness_report(a, w, max_edges: int = DEFAULT_MAX_EDGES,
                      max_lobes: int = DEFAULT_MAX_LOBES) -> dict:
    """Geometric verdict, advisory algebraic verdict, and the
    discrepancy flag between them."""
    geometric = classify_finiteness(a, w, max_edges, max_lobes)
    f = is_D_related_to_U(a, w, max_edges)
    algebraic = None
    discrepancy = False
    if f is not None:
        algebraic = algebraic_finiteness_check(a, f)
        if geometric != "Unknown":
            discrepancy = algebraic != (geometric == "Infinite")
    return {
        "finiteness": geometric,
        "multiHost": f is not None,
        "witness": a.u.name_of(f) if f is not None else None,
        "algebraicInfinite": algebraic,
        "discrepancy": discrepancy,
    }


def host_analysis_json(h: HostAnalysis, a) -> dict:
    return {
        "hostLobes": sorted(h.host_lobes),
        "multiHost": h.multi_host,
        "hostTypes": [[color, a.u.name_of(u)] for color, u in h.host_types],
        "finiteness": h.finiteness,
        "witness": a.u.name_of(h.witness) if h.witness is not None else None,
        "residue": sorted(h.residue),
    }
