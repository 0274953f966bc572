"""Maximal subgroups of an amalgam via the tree of hosts.

In the multi-host situation the maximal subgroup of a word's idempotent
acts on the tree whose vertices are the host lobes; the quotient is a
finite bipartite graph whose vertices carry factor subgroups, whose
edges carry subgroups of the common subsemigroup, and whose fundamental
group is the maximal subgroup.  Outside that situation the group is
either a factor subgroup read off a single full lobe, or the (finite)
automorphism group of the residue, which this module also presents.
"""

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .errors import NotMultiHost, NotOpuntoid, NoLiftFound, \
    DEFAULT_MAX_EDGES, DEFAULT_MAX_LOBES
from .graphs import InverseWordGraph, schutz_graph, rooted_iso, \
    automorphisms
from .semigroups import maximal_subgroup
from .amalgams import OpuntoidDecomposition, loop_set, min_loop_idempotent
from .hosts import (HostRegion, host_region, lobe_graph,
                    full_schutz_witness, _mutual_attachment,
                    _rooted_signature, _same_type_triple,
                    algebraic_finiteness_check)
from .presentations import (GroupPresentation, group_table_presentation,
                            subgroup_presentation, tietze_lite,
                            todd_coxeter_order, presentation_json,
                            _canonical_rotation, cyclic_reduce)


# -- standalone pieces of a decomposition -------------------------------------------


def _union_graph(d: OpuntoidDecomposition, lobe_ids):
    """The union of the given lobes as its own graph; returns
    (graph, local->global vertices)."""
    verts = sorted({v for lid in lobe_ids for v in d.lobes[lid].vertices})
    index = {v: i for i, v in enumerate(verts)}
    edges = set()
    for lid in lobe_ids:
        for s, c, t in d.lobes[lid].edges:
            edges.add((index[s], c, index[t]))
    g = InverseWordGraph(d.graph.alphabet, len(verts), sorted(edges),
                         closed=True)
    return g, tuple(verts)


def _pair_signature(d: OpuntoidDecomposition, a, l1: int, l2: int):
    """Canonical key of a two-lobe union with its looping-U data; equal
    keys iff some label isomorphism matches the pair to the other pair
    (colorwise, with the same attachment structure)."""
    g, verts = _union_graph(d, (l1, l2))
    ann = []
    for v in verts:
        marks = []
        for lid in (l1, l2):
            if d.lobe_of.get((d.lobes[lid].color, v)) == lid:
                marks.append((d.lobes[lid].color,
                              tuple(sorted(loop_set(d, v, d.lobes[lid], a)))))
        ann.append(tuple(marks))
    return min(_rooted_signature(g, r, ann) for r in range(g.n))


def automorphism_presentation(g: InverseWordGraph,
                              base: int = 0) -> GroupPresentation:
    """Table presentation of the label-preserving automorphism group of
    a connected deterministic graph."""
    perms = sorted(automorphisms(g, base))
    names = {p: f"g{k}" for k, p in enumerate(perms)}

    def mul(x, y):
        px = perms[int(x[1:])]
        py = perms[int(y[1:])]
        return names[tuple(py[px[v]] for v in range(g.n))]

    ident = names[tuple(range(g.n))]
    return group_table_presentation([names[p] for p in perms], mul, ident)


# -- the quotient graph of groups ---------------------------------------------------


@dataclass
class GoGVertex:
    vid: int
    color: int
    f: int                 # idempotent of U; the lobe class is shaped on phi(f)
    rep_lobe: int
    lobes: tuple
    presentation: GroupPresentation


@dataclass
class GoGEdge:
    eid: int
    source: int            # vid of the color-1 endpoint
    target: int            # vid of the color-2 endpoint
    f: int                 # idempotent of U at the attachment
    rep: tuple             # (color-1 lobe, color-2 lobe, shared vertex)
    pairs: tuple           # all adjacencies in this class
    in_tree: bool
    presentation: GroupPresentation
    conjugators: tuple     # (s1 in S1, s2 in S2)
    sigma: dict            # u elem -> S1 elem, u |-> s1 phi1(u) s1^-1
    tau: dict              # u elem -> S2 elem


@dataclass
class GraphOfGroups:
    amalgam: object
    vertices: tuple
    edges: tuple

    def n_vertices(self):
        return len(self.vertices)

    def n_edges(self):
        return len(self.edges)


def _conjugator(S, g_from, g_to):
    """First element s with s s^-1 = g_to and s^-1 s = g_from, so that
    x |-> s x s^-1 maps the subgroup at g_from onto the one at g_to."""
    if g_from == g_to:
        return g_from
    for s in range(S.n):
        if S.mul(s, S.inv(s)) == g_to and S.mul(S.inv(s), s) == g_from:
            return s
    return None


def quotient_graph(a, region: HostRegion) -> GraphOfGroups:
    """Quotient of the host adjacency tree by its symmetries: vertices
    are lobe classes, edges are adjacency classes oriented color 1 to
    color 2, each carrying the factor subgroup of its shape idempotent,
    the U subgroup of its attachment idempotent, and the two conjugated
    embeddings.  Edges of a breadth-first spanning tree are flagged."""
    if not region.analysis.multi_host:
        raise NotMultiHost("quotient_graph needs the multi-host situation")
    d = region.decomposition
    host = sorted(region.host_lobes)

    by_type = {}
    for lid in host:
        by_type.setdefault(region.types[lid], []).append(lid)
    vid_of = {}
    vertices = []
    for vid, key in enumerate(sorted(by_type)):
        members = tuple(sorted(by_type[key]))
        rep = members[0]
        found = full_schutz_witness(d, rep, a)
        if found is None:
            raise NotOpuntoid(f"host lobe {rep} is not a full one-factor "
                              "graph of a U idempotent")
        f, _ = found
        color = d.lobes[rep].color
        S = a.S(color)
        pres = subgroup_presentation(S, a.phi(color)(f))
        vertices.append(GoGVertex(vid, color, f, rep, members, pres))
        for lid in members:
            vid_of[lid] = vid

    by_pair_type = {}
    hostset = set(host)
    for lid in host:
        for mid in d.lobe_tree[lid]:
            if mid <= lid or mid not in hostset:
                continue
            pair = (lid, mid)
            shared = d.shared_vertices[pair]
            vf = [(v, _mutual_attachment(d, a, lid, mid, v)) for v in shared]
            vf = [(v, f) for v, f in vf if f is not None]
            if not vf:
                raise NotOpuntoid(
                    f"adjacent host lobes {lid}, {mid} share no vertex "
                    "whose minimum loop idempotents both come from U")
            key = _pair_signature(d, a, lid, mid)
            by_pair_type.setdefault(key, []).append((pair, vf[0]))

    edges = []
    for eid, key in enumerate(sorted(by_pair_type)):
        entries = sorted(by_pair_type[key])
        (l1, l2), (v, f) = entries[0]
        if d.lobes[l1].color != 1:
            l1, l2 = l2, l1
        ends = (vid_of[l1], vid_of[l2])
        conj = []
        for color, lobe_end, vtx in ((1, l1, ends[0]), (2, l2, ends[1])):
            S = a.S(color)
            s = _conjugator(S, a.phi(color)(f),
                            a.phi(color)(vertices[vtx].f))
            if s is None:
                raise NotOpuntoid(
                    f"no conjugator in factor {color} between the "
                    "attachment and the lobe-class idempotent")
            conj.append(s)
        HU = maximal_subgroup(a.u, f)
        sigma, tau = {}, {}
        for color, s, out in ((1, conj[0], sigma), (2, conj[1], tau)):
            S = a.S(color)
            for u in HU:
                x = S.mul(S.mul(s, a.phi(color)(u)), S.inv(s))
                out[u] = x
            if len(set(out.values())) != len(HU):
                raise NotOpuntoid("edge-group embedding is not injective")
        pres = subgroup_presentation(a.u, f)
        edges.append(GoGEdge(eid, ends[0], ends[1], f, (l1, l2, v),
                             tuple(p for p, _ in entries), False, pres,
                             tuple(conj), sigma, tau))

    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for e in edges:
            y = None
            if e.source == x and e.target not in seen:
                y = e.target
            elif e.target == x and e.source not in seen:
                y = e.source
            if y is not None:
                e.in_tree = True
                seen.add(y)
                queue.append(y)
    if len(seen) != len(vertices):
        raise NotOpuntoid("quotient graph is not connected")

    return GraphOfGroups(a, tuple(vertices), tuple(edges))


def vertex_group(a, color: int, f) -> GroupPresentation:
    """Presentation of the factor-side subgroup at phi_color(f)."""
    return subgroup_presentation(a.S(color), a.phi(color)(f))


def edge_group(a, f) -> GroupPresentation:
    """Presentation of the U subgroup at the idempotent f."""
    return subgroup_presentation(a.u, f)


# -- fundamental group ---------------------------------------------------------------


def fundamental_presentation(gog: GraphOfGroups,
                             simplify: bool = True) -> GroupPresentation:
    """Presentation of the fundamental group: one generator per
    non-identity vertex-group element plus a stable letter per non-tree
    edge; relators are the vertex group tables, the edge
    identifications s(u) = t(u) along tree edges, and the conjugations
    y^-1 s(u) y = t(u) elsewhere."""
    a = gog.amalgam
    names = []
    gidx = {}
    for vx in gog.vertices:
        S = a.S(vx.color)
        ident = a.phi(vx.color)(vx.f)
        H = maximal_subgroup(S, ident)
        for x in H:
            if x == ident:
                continue
            gidx[(vx.vid, x)] = len(names) + 1
            names.append(f"v{vx.vid}_{S.name_of(x)}")
    stable = {}
    for e in gog.edges:
        if not e.in_tree:
            stable[e.eid] = len(names) + 1
            names.append(f"y{e.eid}")

    relators = set()

    def add(word):
        w = cyclic_reduce(word)
        if w:
            relators.add(_canonical_rotation(w))

    for vx in gog.vertices:
        S = a.S(vx.color)
        ident = a.phi(vx.color)(vx.f)
        H = [x for x in maximal_subgroup(S, ident) if x != ident]
        for x in H:
            for y in H:
                z = S.mul(x, y)
                gx, gy = gidx[(vx.vid, x)], gidx[(vx.vid, y)]
                if z == ident:
                    add((gx, gy))
                else:
                    add((gx, gy, -gidx[(vx.vid, z)]))

    for e in gog.edges:
        for u, x1 in e.sigma.items():
            if u == e.f:
                continue
            w1 = (gidx[(e.source, x1)],)
            x2 = e.tau[u]
            w2 = (gidx[(e.target, x2)],)
            if e.in_tree:
                add(w1 + tuple(-g for g in reversed(w2)))
            else:
                t = stable[e.eid]
                add((-t,) + w1 + (t,) + tuple(-g for g in reversed(w2)))

    pres = GroupPresentation(tuple(names),
                             tuple(sorted(relators, key=lambda r: (len(r), r))))
    return tietze_lite(pres) if simplify else pres


# -- lifting automorphisms through a folding ------------------------------------------


def lift_automorphism(sigma, delta, pi, phi) -> dict:
    """Lift an automorphism phi of the folded graph delta through the
    projection pi (vertex map sigma -> delta) to an automorphism of
    sigma, and measure how much of Aut(sigma) is compatible with the
    folding: H = automorphisms inducing some automorphism downstairs,
    N = those inducing the identity.

    Raises NoLiftFound when phi has no lift."""
    g = sigma.graph if hasattr(sigma, "graph") else sigma
    dg = delta.graph if hasattr(delta, "graph") else delta
    pi = tuple(pi)
    phi = tuple(phi)

    lift = None
    for w in range(g.n):
        if pi[w] != phi[pi[0]]:
            continue
        m = rooted_iso(g, 0, g, w)
        if m is None:
            continue
        if all(pi[m[v]] == phi[pi[v]] for v in range(g.n)):
            lift = tuple(m)
            break

    auts = automorphisms(g, 0)
    H = []
    N = []
    induced = set()
    for psi in auts:
        down = {}
        ok = True
        for v in range(g.n):
            prev = down.setdefault(pi[v], pi[psi[v]])
            if prev != pi[psi[v]]:
                ok = False
                break
        if not ok:
            continue
        H.append(psi)
        induced.add(tuple(down[x] for x in sorted(down)))
        if all(pi[psi[v]] == pi[v] for v in range(g.n)):
            N.append(psi)

    aut_delta = len(automorphisms(dg, 0))
    record = {
        "lift": lift,
        "autSigma": len(auts),
        "autDelta": aut_delta,
        "H_order": len(H),
        "N_order": len(N),
        "induced": len(induced),
        "indexCheck": len(H) == aut_delta * len(N),
        "H": tuple(H),
        "N": tuple(N),
    }
    if lift is None:
        raise NoLiftFound(
            f"no automorphism upstairs projects onto {phi}", record)
    return record


# -- the per-word report ---------------------------------------------------------------


def _quotient_projection(g, final, lg, anchor_local):
    """Vertex map from a full one-factor graph onto a closed lobe that
    is its deterministic quotient (None when the lobe is not one)."""
    pi = [None] * g.n
    pi[final] = anchor_local
    queue = deque([final])
    while queue:
        v = queue.popleft()
        for c, w in g.succ[v].items():
            img = lg.succ[pi[v]].get(c)
            if img is None:
                return None
            if pi[w] is None:
                pi[w] = img
                queue.append(w)
            elif pi[w] != img:
                return None
    return pi


def _finiteness_from_region(region: HostRegion) -> str:
    if not region.analysis.multi_host:
        return "Finite"
    if _same_type_triple(region.decomposition, region.host_lobes,
                         region.types):
        return "Infinite"
    return "Finite" if region.stabilized else "Unknown"


def maximal_subgroup_presentation(a, w,
                                  max_edges: int = DEFAULT_MAX_EDGES,
                                  max_lobes: int = DEFAULT_MAX_LOBES) -> dict:
    """Presentation of the maximal subgroup at the idempotent of a word
    of the amalgam, with the route taken to get it.

    multi-host: fundamental group of the quotient graph of groups,
    cross-checked against the automorphism count of the host union when
    that union is finite.  Single full lobe: the factor subgroup of its
    idempotent.  Anything else has a finite host; its automorphism
    group is presented from the table, with per-lobe lifting data."""
    w = a.parse_word(w) if isinstance(w, str) else tuple(w)
    region = host_region(a, w, max_edges, max_lobes)
    d = region.decomposition
    analysis = region.analysis
    finiteness = _finiteness_from_region(region)

    algebraic = None
    discrepancy = False
    if analysis.witness is not None:
        algebraic = algebraic_finiteness_check(a, analysis.witness)
        if finiteness != "Unknown":
            discrepancy = algebraic != (finiteness == "Infinite")

    result = {
        "word": a.alphabet.format_word(w),
        "multiHost": analysis.multi_host,
        "witness": (a.u.name_of(analysis.witness)
                    if analysis.witness is not None else None),
        "finiteness": finiteness,
        "algebraicInfinite": algebraic,
        "discrepancy": discrepancy,
        "residue": sorted(analysis.residue),
        "hostLobes": sorted(region.host_lobes),
        "stabilized": region.stabilized,
    }

    if analysis.multi_host:
        gog = quotient_graph(a, region)
        pres = fundamental_presentation(gog)
        result["case"] = "1b"
        result["tag"] = ("multi-host: the word's idempotent is D-related "
                         "to an idempotent of the common subsemigroup")
        result["gog"] = gog
        result["graphY"] = {"vertices": gog.n_vertices(),
                            "edges": gog.n_edges()}
        if finiteness == "Finite":
            union_g, _ = _union_graph(d, region.host_lobes)
            aut_order = len(automorphisms(union_g, 0))
            tc = todd_coxeter_order(pres)
            result["orderCrossCheck"] = {
                "presentationOrder": tc,
                "autHostUnion": aut_order,
                "match": tc == aut_order,
            }
            pres = GroupPresentation(pres.generators, pres.relators, tc)
        result["presentation"] = pres
        result["order"] = pres.order
        return result

    residue = sorted(analysis.residue)
    if len(residue) == 1:
        lid = residue[0]
        rec = d.lobes[lid]
        S = a.S(rec.color)
        anchor = rec.vertices[0]
        g_e = min_loop_idempotent(d, anchor, rec, a)
        lg, verts = lobe_graph(d, lid)
        t = schutz_graph(S, S.canonical_word(g_e), a.alphabet,
                         a.offset(rec.color))
        if rooted_iso(lg, 0, t.graph, t.final) is not None:
            pres = tietze_lite(subgroup_presentation(S, g_e))
            result["case"] = "1a"
            result["tag"] = ("single full lobe: an idempotent of one "
                             "factor, not D-related to the common "
                             "subsemigroup")
            result["factor"] = rec.color
            result["factorIdempotent"] = S.name_of(g_e)
            result["presentation"] = pres
            result["order"] = pres.order
            return result

    union_g, _ = _union_graph(d, residue)
    pres = tietze_lite(automorphism_presentation(union_g))
    result["case"] = "2"
    result["tag"] = ("new idempotent of the amalgam: finite host, "
                     "automorphism group of the residue")
    result["presentation"] = pres
    result["order"] = pres.order
    lifting = []
    for lid in residue:
        rec = d.lobes[lid]
        S = a.S(rec.color)
        anchor = rec.vertices[0]
        g_e = min_loop_idempotent(d, anchor, rec, a)
        lg, verts = lobe_graph(d, lid)
        t = schutz_graph(S, S.canonical_word(g_e), a.alphabet,
                         a.offset(rec.color))
        pi = _quotient_projection(t.graph, t.final, lg, 0)
        if pi is None:
            lifting.append({"lobe": lid, "projection": False})
            continue
        lifted = 0
        auts = automorphisms(lg, 0)
        info = None
        for phi in auts:
            try:
                info = lift_automorphism(t.graph, lg, pi, phi)
                lifted += 1
            except NoLiftFound as exc:
                info = exc.record
        lifting.append({
            "lobe": lid,
            "factor": rec.color,
            "factorIdempotent": S.name_of(g_e),
            "projection": True,
            "autLobe": len(auts),
            "lifted": lifted,
            "autSigma": info["autSigma"],
            "H_order": info["H_order"],
            "N_order": info["N_order"],
            "indexCheck": info["indexCheck"],
        })
    result["lifting"] = lifting
    return result


# -- exports ---------------------------------------------------------------------------


def gog_json(gog: GraphOfGroups) -> dict:
    a = gog.amalgam
    return {
        "vertices": [{
            "id": vx.vid,
            "factor": vx.color,
            "idempotent": a.u.name_of(vx.f),
            "repLobe": vx.rep_lobe,
            "lobes": list(vx.lobes),
            "group": presentation_json(vx.presentation),
        } for vx in gog.vertices],
        "edges": [{
            "id": e.eid,
            "source": e.source,
            "target": e.target,
            "idempotent": a.u.name_of(e.f),
            "repAdjacency": {"lobes": list(e.rep[:2]), "vertex": e.rep[2]},
            "inTree": e.in_tree,
            "group": presentation_json(e.presentation),
            "conjugators": [a.s1.name_of(e.conjugators[0]),
                            a.s2.name_of(e.conjugators[1])],
            "sigma": {a.u.name_of(u): a.s1.name_of(x)
                      for u, x in sorted(e.sigma.items())},
            "tau": {a.u.name_of(u): a.s2.name_of(x)
                    for u, x in sorted(e.tau.items())},
        } for e in gog.edges],
    }


def gog_dot(gog: GraphOfGroups, name: str = "Y") -> str:
    a = gog.amalgam
    lines = [f"graph {name} {{", "  rankdir=LR;"]
    for vx in gog.vertices:
        order = vx.presentation.order
        lines.append(
            f'  v{vx.vid} [label="v{vx.vid}: S{vx.color} @ '
            f'{a.u.name_of(vx.f)} (order {order})" '
            f'shape={"box" if vx.color == 1 else "ellipse"}];')
    for e in gog.edges:
        style = "solid" if e.in_tree else "dashed"
        lines.append(
            f'  v{e.source} -- v{e.target} [label="{a.u.name_of(e.f)} '
            f'(order {e.presentation.order})" style={style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def maximal_subgroup_json(result: dict) -> dict:
    out = {k: v for k, v in result.items() if k not in ("gog", "presentation")}
    out["presentation"] = presentation_json(result["presentation"])
    if "gog" in result:
        out["graphOfGroups"] = gog_json(result["gog"])
    return out
