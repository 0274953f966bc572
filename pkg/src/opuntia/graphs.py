"""Inverse word graphs, folding, closures and Schützenberger graphs.

A graph is edge-labeled over a signed alphabet: symbol i contributes the
positive letter 2*i and its formal inverse 2*i+1 (involution = xor 1).
Every edge (u, c, v) is stored together with (v, c^1, u).  Deterministic
graphs additionally carry per-vertex letter->target dicts.
"""
from __future__ import annotations

from collections import deque
from typing import NamedTuple, Optional

from .errors import BudgetExceeded, NonDeterministic, DEFAULT_MAX_EDGES
from .folding import fold_edges


class Letter(NamedTuple):
    name: str
    color: int
    sign: int


def letter_inv(code: int) -> int:
    return code ^ 1


class Alphabet:
    """Symbols (color, name); letter codes are 2*i / 2*i+1 (inverse)."""

    def __init__(self, symbols):
        self.symbols = [(int(c), str(n)) for c, n in symbols]
        names = [n for _, n in self.symbols]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate symbol names in alphabet: {names}")

    def __len__(self):
        return len(self.symbols)

    def n_letters(self) -> int:
        return 2 * len(self.symbols)

    def color(self, code: int) -> int:
        return self.symbols[code >> 1][0]

    def letter(self, code: int) -> Letter:
        color, name = self.symbols[code >> 1]
        return Letter(name, color, -1 if code % 2 else 1)

    def letter_name(self, code: int) -> str:
        name = self.symbols[code >> 1][1]
        return name + "'" if code % 2 else name

    def format_word(self, word) -> str:
        return " ".join(self.letter_name(c) for c in word)

    def parse_word(self, text: str) -> tuple:
        from .semigroups import parse_word
        return parse_word(text, [n for _, n in self.symbols])


def word_inverse(word) -> tuple:
    return tuple(c ^ 1 for c in reversed(word))


def involutive_closure(edges):
    out = set()
    for s, c, t in edges:
        out.add((s, c, t))
        out.add((t, c ^ 1, s))
    return sorted(out)


class InverseWordGraph:
    def __init__(self, alphabet: Alphabet, n: int, edges, closed=False):
        self.alphabet = alphabet
        self.n = n
        self.edges = tuple(edges) if closed else tuple(involutive_closure(edges))
        succ = [dict() for _ in range(n)]
        deterministic = True
        for s, c, t in self.edges:
            if c in succ[s] and succ[s][c] != t:
                deterministic = False
            succ[s][c] = t
        self.deterministic = deterministic
        self.succ = succ if deterministic else None

    def edge_count(self) -> int:
        """Number of involutive edge pairs."""
        return len(self.edges) // 2

    def positive_edges(self):
        return [(s, c, t) for s, c, t in self.edges if c % 2 == 0]

    def _require_det(self):
        if not self.deterministic:
            raise NonDeterministic("graph is not folded")

    def trace(self, v: int, word) -> Optional[int]:
        self._require_det()
        succ = self.succ
        for c in word:
            v = succ[v].get(c)
            if v is None:
                return None
        return v

    def trace_partial(self, v: int, word):
        """Follow word as far as defined; returns (steps, last vertex)."""
        self._require_det()
        succ = self.succ
        steps = 0
        for c in word:
            nxt = succ[v].get(c)
            if nxt is None:
                return steps, v
            v = nxt
            steps += 1
        return steps, v

    def colors_at(self, v: int):
        self._require_det()
        alpha = self.alphabet
        return {alpha.color(c) for c in self.succ[v]}

    def degree_labels(self, v: int):
        self._require_det()
        return self.succ[v].keys()

    def __repr__(self):
        return f"InverseWordGraph(n={self.n}, edges={self.edge_count()})"


class PointedAutomaton:
    """An inverse word graph with initial and final vertices."""

    def __init__(self, graph: InverseWordGraph, initial: int, final: int):
        self.graph = graph
        self.initial = initial
        self.final = final
        self.vertex_elements = None  # set by schutz_graph

    def remapped(self, graph, mapping):
        a = PointedAutomaton(graph, mapping[self.initial], mapping[self.final])
        return a

    def __repr__(self):
        return (f"PointedAutomaton(n={self.graph.n}, "
                f"initial={self.initial}, final={self.final})")


class Presentation:
    """Relations (u, v) of words over a signed alphabet."""

    def __init__(self, alphabet: Alphabet, relations):
        self.alphabet = alphabet
        self.relations = [(tuple(u), tuple(v)) for u, v in relations]
        # both orientations, trivial pairs dropped
        oriented = []
        for u, v in self.relations:
            if u != v:
                oriented.append((u, v))
                oriented.append((v, u))
        self.oriented = oriented


def table_presentation(S, alphabet=None, offset=0) -> Presentation:
    """Presentation of S over its generator alphabet: canonical-word
    relations (w_a w_b, w_ab) plus inverse-letter aliases.  With the
    full-element generator set this is the multiplication-table
    presentation."""
    if alphabet is None:
        alphabet = Alphabet([(1, S.names[g]) for g in S.generators])
    shift = 2 * offset

    def enc(word):
        return tuple(c + shift for c in word)

    rels = []
    for a in range(S.n):
        wa = S.canonical_word(a)
        for b in range(S.n):
            lhs = wa + S.canonical_word(b)
            rhs = S.canonical_word(S.mul(a, b))
            if lhs != rhs:
                rels.append((enc(lhs), enc(rhs)))
    for i in range(len(S.generators)):
        c = 2 * i + 1
        w = S.canonical_word(S.inv(S.generators[i]))
        if w != (c,):
            rels.append((enc((c,)), enc(w)))
    return Presentation(alphabet, rels)


# -- construction and folding ---------------------------------------------------

def linear_graph(alphabet: Alphabet, word) -> PointedAutomaton:
    """The linear automaton of a word; no folding is performed."""
    word = tuple(word)
    if not word:
        raise ValueError("empty word")
    edges = [(i, c, i + 1) for i, c in enumerate(word)]
    g = InverseWordGraph(alphabet, len(word) + 1, edges)
    return PointedAutomaton(g, 0, len(word))


def fold(g: InverseWordGraph, pending=()):
    """Fold to a deterministic graph; returns (graph, vertex mapping)."""
    mapping, edges = fold_edges(g.n, g.edges, pending)
    n2 = (max(mapping) + 1) if mapping else 0
    g2 = InverseWordGraph(g.alphabet, n2, edges, closed=True)
    return g2, mapping


# -- Stephen expansions ---------------------------------------------------------

def _scan(g: InverseWordGraph, oriented, gate=None):
    """One full pass: find every missing relation path.

    Returns (fills, merges): fills are (vertex, letters, endpoint) path
    defects to bridge with fresh interior vertices; merges are vertex
    coincidences.  gate(start, end, letters) may veto a fill (never a
    merge).
    """
    fills = set()
    merges = set()
    succ = g.succ
    for r, t in oriented:
        rlen = len(r)
        for v in range(g.n):
            y = v
            ok = True
            for c in t:
                y = succ[y].get(c)
                if y is None:
                    ok = False
                    break
            if not ok:
                continue
            a, va = g.trace_partial(v, r)
            if a == rlen:
                if va != y:
                    merges.add((min(va, y), max(va, y)))
                continue
            j = rlen
            u = y
            while j > a:
                prev = succ[u].get(r[j - 1] ^ 1)
                if prev is None:
                    break
                u = prev
                j -= 1
            if j == a:
                if u != va:
                    merges.add((min(u, va), max(u, va)))
                continue
            seg = r[a:j]
            if gate is not None and not gate(va, u, seg):
                continue
            fills.add((va, seg, u))
    return fills, merges


def _apply(g: InverseWordGraph, fills, merges):
    """Add fill paths (fresh interior vertices), then fold with merges."""
    edges = list(g.edges)
    n = g.n
    for start, letters, end in sorted(fills):
        prev = start
        for c in letters[:-1]:
            edges.append((prev, c, n))
            edges.append((n, c ^ 1, prev))
            prev = n
            n += 1
        c = letters[-1]
        edges.append((prev, c, end))
        edges.append((end, c ^ 1, prev))
    mapping, out = fold_edges(n, edges, sorted(merges))
    n2 = (max(mapping) + 1) if mapping else 0
    return InverseWordGraph(g.alphabet, n2, out, closed=True), mapping


def expand_once(a: PointedAutomaton, pres: Presentation, gate=None):
    """One full expansion pass followed by a fold.

    Returns (automaton, changed)."""
    fills, merges = _scan(a.graph, pres.oriented, gate)
    if not fills and not merges:
        return a, False
    g2, mapping = _apply(a.graph, fills, merges)
    return a.remapped(g2, mapping), True


def is_closed(a: PointedAutomaton, pres: Presentation) -> bool:
    fills, merges = _scan(a.graph, pres.oriented)
    return not fills and not merges


def close(a: PointedAutomaton, pres: Presentation,
          max_edges: int = DEFAULT_MAX_EDGES) -> PointedAutomaton:
    """Iterate expansion + folding to the closed (Schützenberger) form."""
    if not a.graph.deterministic:
        g2, mapping = fold(a.graph)
        a = a.remapped(g2, mapping)
    while True:
        a, changed = expand_once(a, pres)
        if not changed:
            return a
        if len(a.graph.edges) > 2 * max_edges:
            raise BudgetExceeded("edge", max_edges, "during close()")


# -- Schützenberger graphs of a finite inverse semigroup ------------------------

def schutz_graph(S, word, alphabet=None, offset=0) -> PointedAutomaton:
    """Schützenberger automaton of a word over S's generators, built
    directly from the multiplication table: vertices are the R-class of
    the word's value, edges are right multiplications by generators.

    word uses S-local letter codes; offset shifts symbol indices when the
    graph lives inside a larger (amalgam) alphabet."""
    if alphabet is None:
        alphabet = Alphabet([(1, S.names[g]) for g in S.generators])
    m = S.eval_word(word)
    e = S.mul(m, S.inv(m))
    elems = sorted(x for x in range(S.n)
                   if S.mul(x, S.inv(x)) == e)
    vid = {x: i for i, x in enumerate(elems)}
    shift = 2 * offset
    edges = []
    for x in elems:
        for i, g in enumerate(S.generators):
            y = S.mul(x, g)
            if y in vid:
                edges.append((vid[x], 2 * i + shift, vid[y]))
    g2 = InverseWordGraph(alphabet, len(elems), edges)
    assert g2.deterministic
    aut = PointedAutomaton(g2, vid[e], vid[m])
    aut.vertex_elements = elems
    return aut


def accepts(a: PointedAutomaton, word) -> bool:
    return a.graph.trace(a.initial, word) == a.final


# -- isomorphism and automorphisms ----------------------------------------------

def rooted_iso(g1: InverseWordGraph, v1: int, g2: InverseWordGraph, v2: int):
    """Label-preserving isomorphism g1 -> g2 sending v1 to v2, as a vertex
    list, or None.  Graphs must be deterministic and connected from the
    roots."""
    g1._require_det()
    g2._require_det()
    if g1.n != g2.n or len(g1.edges) != len(g2.edges):
        return None
    mapping = [-1] * g1.n
    mapping[v1] = v2
    queue = deque([v1])
    seen = 1
    while queue:
        u1 = queue.popleft()
        u2 = mapping[u1]
        d1, d2 = g1.succ[u1], g2.succ[u2]
        if d1.keys() != d2.keys():
            return None
        for c, w1 in d1.items():
            w2 = d2[c]
            if mapping[w1] == -1:
                mapping[w1] = w2
                queue.append(w1)
                seen += 1
            elif mapping[w1] != w2:
                return None
    if seen != g1.n or len(set(mapping)) != g1.n:
        return None
    return mapping


def automorphisms(g: InverseWordGraph, base: int = 0):
    """All label-preserving automorphisms of a connected deterministic
    graph; each is determined by the image of `base`."""
    out = []
    for v in range(g.n):
        m = rooted_iso(g, base, g, v)
        if m is not None:
            out.append(tuple(m))
    return out


# -- exports --------------------------------------------------------------------

_DOT_COLORS = {1: "blue", 2: "red", 0: "black"}


def to_dot(g: InverseWordGraph, initial=None, final=None, name="G") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for v in range(g.n):
        attrs = []
        if v == final:
            attrs.append("shape=doublecircle")
        if v == initial:
            attrs.append("penwidth=2")
        lines.append(f"  v{v}" + (f" [{', '.join(attrs)}]" if attrs else "") + ";")
    for s, c, t in g.positive_edges():
        color = _DOT_COLORS.get(g.alphabet.color(c), "black")
        lines.append(
            f'  v{s} -> v{t} [label="{g.alphabet.letter_name(c)}", color={color}];')
    lines.append("}")
    return "\n".join(lines)


def graph_json(g: InverseWordGraph) -> dict:
    return {
        "vertices": g.n,
        "edges": [[s, g.alphabet.letter_name(c), t] for s, c, t in g.positive_edges()],
    }
