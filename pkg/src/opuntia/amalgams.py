"""Amalgams of finite inverse semigroups over a common subsemigroup.

Provides the two-color standard presentation, lobe decompositions of
word graphs with the opuntoid validator, the core automaton of a word,
single-bud lobe attachment, bounded closure, and the word problem.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import (BudgetExceeded, LobeGraphNotTree, LobeNotClosed,
                     NotABud, NotOpuntoid, DEFAULT_MAX_EDGES,
                     DEFAULT_MAX_LOBES)
from .graphs import (Alphabet, InverseWordGraph, PointedAutomaton,
                     Presentation, accepts, expand_once, fold,
                     linear_graph, schutz_graph, table_presentation)
from .folding import fold_edges
from .semigroups import validate_embedding


class Amalgam:
    """Two finite inverse semigroups with embeddings of a common
    inverse subsemigroup; colors 1 and 2 tag the two factors."""

    def __init__(self, s1, s2, u, phi1, phi2, name=None):
        self.s1 = s1
        self.s2 = s2
        self.u = u
        self.phi1 = phi1 if callable(phi1) else validate_embedding(u, s1, phi1)
        self.phi2 = phi2 if callable(phi2) else validate_embedding(u, s2, phi2)
        self.name = name
        n1 = [s1.names[g] for g in s1.generators]
        n2 = [s2.names[g] for g in s2.generators]
        clash = set(n1) & set(n2)
        if clash:
            raise ValueError(f"factor generator names must differ: {sorted(clash)}")
        self.alphabet = Alphabet([(1, n) for n in n1] + [(2, n) for n in n2])
        self._offsets = {1: 0, 2: len(n1)}
        self._u_words = {}

    def S(self, color):
        return self.s1 if color == 1 else self.s2

    def phi(self, color):
        return self.phi1 if color == 1 else self.phi2

    def offset(self, color):
        return self._offsets[color]

    def encode(self, color, local_word):
        """Shift a factor-local word into combined alphabet codes."""
        shift = 2 * self._offsets[color]
        return tuple(c + shift for c in local_word)

    def u_word(self, color, u_elem):
        """Canonical word (combined codes) of the color-side image of a
        U element."""
        key = (color, u_elem)
        w = self._u_words.get(key)
        if w is None:
            S = self.S(color)
            w = self.encode(color, S.canonical_word(self.phi(color)(u_elem)))
            self._u_words[key] = w
        return w

    def letter_color(self, code):
        return self.alphabet.color(code)

    def parse_word(self, text):
        return self.alphabet.parse_word(text)

    def __repr__(self):
        nm = f" {self.name!r}" if self.name else ""
        return (f"Amalgam{nm}(|S1|={self.s1.n}, |S2|={self.s2.n}, "
                f"|U|={self.u.n})")


class StandardPresentation(Presentation):
    """Table relations of both factors plus the identification pairs
    (canonical word of the color-1 image of u, same for color 2)."""

    def __init__(self, amalgam, r_relations, w_relations):
        super().__init__(amalgam.alphabet, r_relations + w_relations)
        self.amalgam = amalgam
        self.r_relations = r_relations
        self.w_relations = w_relations
        self.r_part = Presentation(amalgam.alphabet, r_relations)
        self.w_part = Presentation(amalgam.alphabet, w_relations)


def standard_presentation(a: Amalgam) -> StandardPresentation:
    r_rel = []
    for color in (1, 2):
        p = table_presentation(a.S(color), a.alphabet, a.offset(color))
        r_rel.extend(p.relations)
    w_rel = [(a.u_word(1, u), a.u_word(2, u)) for u in range(a.u.n)]
    return StandardPresentation(a, r_rel, w_rel)


# -- lobe decomposition ---------------------------------------------------------


@dataclass(frozen=True)
class LobeRecord:
    index: int
    color: int
    vertices: tuple
    edges: tuple  # both orientations

    def __repr__(self):
        return (f"Lobe({self.index}, color={self.color}, "
                f"|V|={len(self.vertices)})")


class OpuntoidDecomposition:
    """Partition of a two-colored deterministic graph into maximal
    monochromatic connected subgraphs, with the adjacency structure,
    intersection vertices and buds."""

    def __init__(self, graph: InverseWordGraph, amalgam: Amalgam = None,
                 automaton: PointedAutomaton = None, strict: bool = True):
        self.graph = graph
        self.amalgam = amalgam
        self.automaton = automaton
        alpha = graph.alphabet

        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s, c, t in graph.edges:
            col = alpha.color(c)
            for key in ((col, s), (col, t)):
                if key not in parent:
                    parent[key] = key
            rs, rt = find((col, s)), find((col, t))
            if rs != rt:
                parent[rs] = rt

        groups = {}
        for key in parent:
            groups.setdefault(find(key), []).append(key)
        raw = []
        for members in groups.values():
            color = members[0][0]
            verts = sorted(v for _, v in members)
            raw.append((color, verts))
        raw.sort(key=lambda cv: (cv[0], cv[1][0]))

        lobe_of = {}  # (color, vertex) -> lobe id
        lobes = []
        buckets = [[] for _ in raw]
        for idx, (color, verts) in enumerate(raw):
            for v in verts:
                lobe_of[(color, v)] = idx
        for e in graph.edges:
            s, c, t = e
            buckets[lobe_of[(alpha.color(c), s)]].append(e)
        for idx, (color, verts) in enumerate(raw):
            lobes.append(LobeRecord(idx, color, tuple(verts),
                                    tuple(sorted(buckets[idx]))))
        self.lobes = lobes
        self.lobe_of = lobe_of

        vertex_lobes = [[] for _ in range(graph.n)]
        for (color, v), idx in lobe_of.items():
            vertex_lobes[v].append(idx)
        self.vertex_lobes = [tuple(sorted(ls)) for ls in vertex_lobes]
        self.intersection_vertices = tuple(
            v for v in range(graph.n) if len(self.vertex_lobes[v]) == 2)

        shared = {}  # (lobe, lobe) sorted pair -> [vertices]
        for v in self.intersection_vertices:
            l1, l2 = self.vertex_lobes[v]
            shared.setdefault((l1, l2), []).append(v)
        self.shared_vertices = {p: tuple(vs) for p, vs in shared.items()}

        # adjacency + tree check over lobe pairs
        adj = [set() for _ in lobes]
        for l1, l2 in shared:
            adj[l1].add(l2)
            adj[l2].add(l1)
        self.lobe_tree = [tuple(sorted(s)) for s in adj]
        up = list(range(len(lobes)))

        def lfind(x):
            while up[x] != x:
                up[x] = up[up[x]]
                x = up[x]
            return x

        self.is_tree = True
        self.cycle_witness = None
        for l1, l2 in sorted(shared):
            r1, r2 = lfind(l1), lfind(l2)
            if r1 == r2:
                self.is_tree = False
                self.cycle_witness = (l1, l2)
                break
            up[r1] = r2
        if self.is_tree and lobes:
            roots = {lfind(i) for i in range(len(lobes))}
            if len(roots) > 1:
                self.is_tree = False
                self.cycle_witness = None  # disconnected, no cycle
        if strict and not self.is_tree and self.cycle_witness is not None:
            raise LobeGraphNotTree(
                f"lobes {self.cycle_witness} close a cycle in the lobe graph")

        self.buds = None
        if amalgam is not None:
            self.buds = self._compute_buds()

    def _compute_buds(self):
        a = self.amalgam
        out = []
        for v in range(self.graph.n):
            ls = self.vertex_lobes[v]
            if len(ls) != 1:
                continue
            color = self.lobes[ls[0]].color
            for u in range(a.u.n):
                if self.graph.trace(v, a.u_word(color, u)) == v:
                    out.append(v)
                    break
        return tuple(out)

    def lobe_at(self, v, color):
        """Lobe id of the color-colored lobe through v, or None."""
        return self.lobe_of.get((color, v))

    def __repr__(self):
        return (f"OpuntoidDecomposition(n={self.graph.n}, "
                f"lobes={len(self.lobes)}, buds={self.buds})")


def lobes(g: InverseWordGraph, amalgam: Amalgam = None,
          automaton: PointedAutomaton = None,
          strict: bool = True) -> OpuntoidDecomposition:
    return OpuntoidDecomposition(g, amalgam, automaton, strict)


def _as_lobe(d, lobe):
    return d.lobes[lobe] if isinstance(lobe, int) else lobe


def loop_set(d: OpuntoidDecomposition, v: int, lobe, a: Amalgam = None):
    """All u in U whose image word (in the lobe's color) loops at v."""
    a = a or d.amalgam
    lobe = _as_lobe(d, lobe)
    return frozenset(u for u in range(a.u.n)
                     if d.graph.trace(v, a.u_word(lobe.color, u)) == v)


def min_loop_idempotent(d: OpuntoidDecomposition, v: int, lobe,
                        a: Amalgam = None) -> int:
    """The minimum idempotent of the lobe's factor looping at v."""
    a = a or d.amalgam
    lobe = _as_lobe(d, lobe)
    S = a.S(lobe.color)
    g = d.graph
    meet = None
    for e in S.idempotents:
        if g.trace(v, a.encode(lobe.color, S.canonical_word(e))) == v:
            meet = e if meet is None else S.mul(meet, e)
    if meet is None:
        raise LobeNotClosed(f"no idempotent loop at vertex {v}")
    if g.trace(v, a.encode(lobe.color, S.canonical_word(meet))) != v:
        raise LobeNotClosed(
            f"meet of looping idempotents does not loop at vertex {v}")
    return meet


def min_u_idempotent(d: OpuntoidDecomposition, v: int, lobe,
                     a: Amalgam = None):
    """Minimum idempotent of U in the loop set at v, or None."""
    a = a or d.amalgam
    lobe = _as_lobe(d, lobe)
    U = a.u
    meet = None
    for u in U.idempotents:
        if d.graph.trace(v, a.u_word(lobe.color, u)) == v:
            meet = u if meet is None else U.mul(meet, u)
    return meet


# -- validator ------------------------------------------------------------------


@dataclass
class ValidationReport:
    ok: bool = True
    failures: list = field(default_factory=list)

    def fail(self, axiom, witness):
        self.ok = False
        self.failures.append({"axiom": axiom, "witness": witness})

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "ValidationReport(ok)"
        return f"ValidationReport(failures={self.failures!r})"


def _quotient_witness(d, lobe, a):
    """Map the full right-multiplication graph of the lobe's minimum
    idempotent onto the lobe (base -> anchor vertex).  Returns None on
    success, else a description of the defect."""
    anchor = lobe.vertices[0]
    try:
        e = min_loop_idempotent(d, anchor, lobe, a)
    except LobeNotClosed as exc:
        return str(exc)
    S = a.S(lobe.color)
    sigma = schutz_graph(S, S.canonical_word(e), a.alphabet,
                         a.offset(lobe.color))
    g = d.graph
    image = [-1] * sigma.graph.n
    image[sigma.initial] = anchor
    queue = deque([sigma.initial])
    covered = set()
    while queue:
        p = queue.popleft()
        for c, q in sigma.graph.succ[p].items():
            tgt = g.succ[image[p]].get(c)
            if tgt is None:
                return (f"missing edge {a.alphabet.letter_name(c)} at vertex "
                        f"{image[p]} (lobe not closed)")
            covered.add((image[p], c, tgt))
            if image[q] == -1:
                image[q] = tgt
                queue.append(q)
            elif image[q] != tgt:
                return f"fold conflict at vertex pair ({image[q]}, {tgt})"
    if covered != set(lobe.edges):
        return "lobe has edges outside the folded image"
    if set(image) != set(lobe.vertices):
        return "lobe has vertices outside the folded image"
    return None


def validate_opuntoid(d: OpuntoidDecomposition, a: Amalgam = None) -> ValidationReport:
    """Check every opuntoid axiom; failures carry witnesses."""
    a = a or d.amalgam
    rep = ValidationReport()
    if not d.graph.deterministic:
        rep.fail("deterministic", "graph has a nondeterministic vertex")
        return rep
    if not d.is_tree:
        rep.fail("lobe-tree", d.cycle_witness or "lobe graph disconnected")
    for lobe in d.lobes:
        defect = _quotient_witness(d, lobe, a)
        if defect is not None:
            rep.fail("lobe-quotient", {"lobe": lobe.index, "defect": defect})
    for v in d.intersection_vertices:
        l1, l2 = d.vertex_lobes[v]
        s1 = loop_set(d, v, l1, a)
        s2 = loop_set(d, v, l2, a)
        if s1 != s2:
            rep.fail("loop-equality",
                     {"vertex": v,
                      "side1": sorted(a.u.names[u] for u in s1),
                      "side2": sorted(a.u.names[u] for u in s2)})
    for (l1, l2), verts in d.shared_vertices.items():
        for v in verts:
            for v2 in verts:
                if v2 == v:
                    continue
                c1 = {u for u in range(a.u.n)
                      if d.graph.trace(v, a.u_word(d.lobes[l1].color, u)) == v2}
                c2 = {u for u in range(a.u.n)
                      if d.graph.trace(v, a.u_word(d.lobes[l2].color, u)) == v2}
                if c1 != c2 or not c1:
                    rep.fail("assimilation",
                             {"vertices": (v, v2), "lobes": (l1, l2),
                              "side1": sorted(a.u.names[u] for u in c1),
                              "side2": sorted(a.u.names[u] for u in c2)})
    return rep


# -- core -----------------------------------------------------------------------


def core(a: Amalgam, w, max_edges: int = DEFAULT_MAX_EDGES):
    """Core automaton of a word: fold, close each lobe under its own
    table relations, and apply identification pairs only where both
    colors already meet.  Bud expansions are deferred.

    Returns (PointedAutomaton, OpuntoidDecomposition)."""
    w = tuple(w)
    if not w:
        raise ValueError("empty word")
    pres = standard_presentation(a)
    aut = linear_graph(a.alphabet, w)
    g, mapping = fold(aut.graph)
    aut = aut.remapped(g, mapping)

    alpha = a.alphabet

    while True:
        aut, ch1 = expand_once(aut, pres.r_part)
        graph = aut.graph

        def both_colors_gate(start, end, letters, _g=graph):
            color = alpha.color(letters[0])
            return (color in _g.colors_at(start)
                    and color in _g.colors_at(end))

        aut, ch2 = expand_once(aut, pres.w_part, gate=both_colors_gate)
        if not (ch1 or ch2):
            break
        if len(aut.graph.edges) > 2 * max_edges:
            raise BudgetExceeded("edge", max_edges, "during core()")

    d = OpuntoidDecomposition(aut.graph, a, aut)
    return aut, d


# -- single-bud expansion -------------------------------------------------------


def net(a: Amalgam, x: int, lam: PointedAutomaton, Lset, color: int):
    """Vertices of lam reachable from x by the color-side word of some
    u in Lset."""
    out = set()
    for u in Lset:
        y = lam.graph.trace(x, a.u_word(color, u))
        if y is not None:
            out.add(y)
    return out


def construction5(d: OpuntoidDecomposition, a: Amalgam,
                  bud: int) -> OpuntoidDecomposition:
    """Attach the missing-color lobe at a bud: build the right-
    multiplication graph of the minimum looping U-idempotent, collapse
    its net, glue at the bud, identify matching U-paths, and fold.

    The result has exactly one more lobe; pre-existing vertices are
    never identified with each other (both are checked)."""
    g = d.graph
    ls = d.vertex_lobes[bud] if 0 <= bud < g.n else ()
    if len(ls) != 1:
        raise NotABud(f"vertex {bud} lies in {len(ls)} lobes")
    lobe = d.lobes[ls[0]]
    i = lobe.color
    j = 3 - i
    Lset = loop_set(d, bud, lobe, a)
    if not Lset:
        raise NotABud(f"vertex {bud} has an empty loop set")
    f = min_u_idempotent(d, bud, lobe, a)

    Sj = a.S(j)
    fj = a.phi(j)(f)
    lam = schutz_graph(Sj, Sj.canonical_word(fj), a.alphabet, a.offset(j))
    x = lam.final
    N = net(a, x, lam, Lset, j)
    lam_g, rho = fold(lam.graph, [(x, y) for y in N if y != x])
    xr = rho[x]

    off = g.n
    edges = list(g.edges)
    edges.extend((s + off, c, t + off) for s, c, t in lam_g.edges)
    pend = [(bud, xr + off)]
    for u in range(a.u.n):
        y = g.trace(bud, a.u_word(i, u))
        if y is None:
            continue
        y2 = lam_g.trace(xr, a.u_word(j, u))
        if y2 is not None:
            pend.append((y, y2 + off))

    mapping, out_edges = fold_edges(g.n + lam_g.n, edges, pend)
    n2 = max(mapping) + 1
    g2 = InverseWordGraph(a.alphabet, n2, out_edges, closed=True)
    aut2 = d.automaton.remapped(g2, mapping) if d.automaton else None
    d2 = OpuntoidDecomposition(g2, a, aut2)
    d2.old_vertex_map = mapping[:g.n]

    if len(set(d2.old_vertex_map)) != g.n:
        raise NotOpuntoid(
            f"bud expansion at {bud} identified pre-existing vertices")
    if len(d2.lobes) != len(d.lobes) + 1:
        raise NotOpuntoid(
            f"bud expansion at {bud} changed lobe count "
            f"{len(d.lobes)} -> {len(d2.lobes)}")
    return d2


def expand_to_depth(d: OpuntoidDecomposition, a: Amalgam, k: int,
                    max_lobes: int = DEFAULT_MAX_LOBES) -> OpuntoidDecomposition:
    """Grow the automaton until it contains every lobe within lobe-tree
    distance k of the starting lobes: buds on lobes at distance < k are
    expanded, each new lobe sitting one step further out."""
    if d.buds is None:
        d = OpuntoidDecomposition(d.graph, a, d.automaton)
    queue = deque((v, 0) for v in d.buds)
    while queue:
        v, dist = queue.popleft()
        if dist >= k:
            continue
        if v not in d.buds:
            continue
        d = construction5(d, a, v)
        mapping = d.old_vertex_map
        old_image = set(mapping)
        queue = deque((mapping[q], dq) for q, dq in queue)
        for b in d.buds:
            if b not in old_image:
                queue.append((b, dist + 1))
        if len(d.lobes) > max_lobes:
            raise BudgetExceeded("lobe", max_lobes, "during expand_to_depth()")
    return d


def word_equal(a: Amalgam, w1, w2, max_edges: int = DEFAULT_MAX_EDGES,
               max_lobes: int = DEFAULT_MAX_LOBES) -> bool:
    """Decide equality of two words in the amalgamated product.

    Each word's automaton is expanded to lobe-tree depth = the other
    word's length, which is far enough for any accepting path."""
    w1, w2 = tuple(w1), tuple(w2)
    _, d1 = core(a, w1, max_edges)
    d1 = expand_to_depth(d1, a, len(w2), max_lobes)
    if not accepts(d1.automaton, w2):
        return False
    _, d2 = core(a, w2, max_edges)
    d2 = expand_to_depth(d2, a, len(w1), max_lobes)
    return accepts(d2.automaton, w1)


# -- exports --------------------------------------------------------------------


def decomposition_json(d: OpuntoidDecomposition) -> dict:
    g = d.graph
    alpha = g.alphabet
    out = {
        "vertices": g.n,
        "edges": [[s, alpha.letter_name(c), t] for s, c, t in g.positive_edges()],
        "lobes": [{"color": lb.color, "vertices": list(lb.vertices)}
                  for lb in d.lobes],
        "lobeTree": [list(nb) for nb in d.lobe_tree],
        "intersectionVertices": list(d.intersection_vertices),
        "buds": list(d.buds) if d.buds is not None else None,
    }
    if d.automaton is not None:
        out["initial"] = d.automaton.initial
        out["final"] = d.automaton.final
    return out


def decomposition_dot(d: OpuntoidDecomposition, name="Core") -> str:
    g = d.graph
    alpha = g.alphabet
    colors = {1: "blue", 2: "red"}
    aut = d.automaton
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    inter = set(d.intersection_vertices)
    for lb in d.lobes:
        lines.append(f"  subgraph cluster_lobe{lb.index} {{")
        lines.append(f'    label="lobe {lb.index}";')
        lines.append(f"    color={colors.get(lb.color, 'black')};")
        for v in lb.vertices:
            if v not in inter:
                lines.append(f"    v{v};")
        lines.append("  }")
    for v in range(g.n):
        attrs = []
        if aut is not None and v == aut.final:
            attrs.append("shape=doublecircle")
        if aut is not None and v == aut.initial:
            attrs.append("penwidth=2")
        if d.buds is not None and v in d.buds:
            attrs.append("style=dashed")
        if attrs:
            lines.append(f"  v{v} [{', '.join(attrs)}];")
    for s, c, t in g.positive_edges():
        col = colors.get(alpha.color(c), "black")
        lines.append(
            f'  v{s} -> v{t} [label="{alpha.letter_name(c)}", color={col}];')
    lines.append("}")
    return "\n".join(lines)
