"""Finite inverse semigroups presented by multiplication table.

Elements are dense ids 0..n-1.  A semigroup carries a chosen generator
subset which doubles as the edge-label alphabet of its word graphs; the
default is all elements.  Words over the generators are tuples of signed
letter codes: letter ``2*i`` is generators[i], letter ``2*i+1`` is its
formal inverse.
"""
from __future__ import annotations

import heapq
from collections import deque

from .errors import NotAnEmbedding, NotAnIdempotent, NotGenerated, NotInverse


def letter_inv(code: int) -> int:
    return code ^ 1


class FiniteInverseSemigroup:
    def __init__(self, names, table, generators=None, check=True):
        self.names = [str(x) for x in names]
        self.n = len(self.names)
        self.table = [list(row) for row in table]
        if generators is None:
            generators = list(range(self.n))
        else:
            generators = [self._elem_id(g) for g in generators]
        self.generators = generators
        if check:
            self._check_table()
        self.inverse = self._compute_inverses()
        self.idempotents = [e for e in range((self.n)) if self.table[e][e] == e]
        if check:
            self._check_inverse_axioms()
            self._check_generated()
        self._canonical = self._canonical_words()

    # -- basics -------------------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def is_idempotent(self, a: int) -> bool:
        return self.table[a][a] == a

    def name_of(self, a: int) -> str:
        return self.names[a]

    def _elem_id(self, x) -> int:
        if isinstance(x, int):
            if not 0 <= x < self.n:
                raise ValueError(f"element id {x} out of range")
            return x
        try:
            return self.names.index(str(x))
        except ValueError:
            raise ValueError(f"unknown element name {x!r}") from None

    # -- validation ---------------------------------------------------------

    def _check_table(self):
        n = self.n
        if any(len(row) != n for row in self.table) or len(self.table) != n:
            raise NotInverse("table is not n x n")
        for row in self.table:
            for v in row:
                if not isinstance(v, int) or not 0 <= v < n:
                    raise NotInverse(f"table entry {v!r} is not an element id")
        for a in range(n):
            for b in range(n):
                ab = self.table[a][b]
                for c in range(n):
                    if self.table[ab][c] != self.table[a][self.table[b][c]]:
                        raise NotInverse(
                            f"associativity fails at ({self.names[a]},"
                            f"{self.names[b]},{self.names[c]})")

    def _compute_inverses(self):
        inv = [None] * self.n
        for a in range(self.n):
            cands = [b for b in range(self.n)
                     if self.table[self.table[a][b]][a] == a
                     and self.table[self.table[b][a]][b] == b]
            if len(cands) != 1:
                raise NotInverse(
                    f"element {self.names[a]} has {len(cands)} inverses")
            inv[a] = cands[0]
        return inv

    def _check_inverse_axioms(self):
        idems = self.idempotents
        for e in idems:
            for f in idems:
                if self.table[e][f] != self.table[f][e]:
                    raise NotInverse(
                        f"idempotents {self.names[e]},{self.names[f]} do not commute")

    def _check_generated(self):
        seen = set()
        frontier = []
        for g in self.generators:
            for x in (g, self.inverse[g]):
                if x not in seen:
                    seen.add(x)
                    frontier.append(x)
        while frontier:
            x = frontier.pop()
            for g in self.generators:
                for y in (self.table[x][g], self.table[x][self.inverse[g]]):
                    if y not in seen:
                        seen.add(y)
                        frontier.append(y)
        if len(seen) != self.n:
            missing = [self.names[x] for x in range(self.n) if x not in seen]
            raise NotGenerated(f"generators do not reach {missing}")

    # -- letters and words ----------------------------------------------------

    def n_letters(self) -> int:
        return 2 * len(self.generators)

    def letter_element(self, code: int) -> int:
        g = self.generators[code >> 1]
        return g if code % 2 == 0 else self.inverse[g]

    def letter_rank(self, code: int) -> int:
        # canonical letter order: all positive letters first, then inverses
        return (code >> 1) + (len(self.generators) if code % 2 else 0)

    def letters_in_order(self):
        k = len(self.generators)
        return [2 * i for i in range(k)] + [2 * i + 1 for i in range(k)]

    def eval_word(self, word) -> int:
        it = iter(word)
        try:
            x = self.letter_element(next(it))
        except StopIteration:
            raise ValueError("empty word has no value") from None
        for c in it:
            x = self.table[x][self.letter_element(c)]
        return x

    def _canonical_words(self):
        """Shortest-lex word for every element.

        Elements reachable by positive letters alone get shortest-lex
        positive words; anything else gets the shortest extension of an
        already-named element by arbitrary letters."""
        words = {}
        positive = [2 * i for i in range(len(self.generators))]
        queue = deque()
        for c in positive:
            x = self.letter_element(c)
            if x not in words:
                words[x] = (c,)
                queue.append(x)
        while queue:
            x = queue.popleft()
            wx = words[x]
            for c in positive:
                y = self.table[x][self.letter_element(c)]
                if y not in words:
                    words[y] = wx + (c,)
                    queue.append(y)
        if len(words) < self.n:
            order = self.letters_in_order()
            heap = [(len(w), tuple(self.letter_rank(c) for c in w), w, x)
                    for x, w in words.items()]
            heapq.heapify(heap)
            while heap and len(words) < self.n:
                _, ranks, wx, x = heapq.heappop(heap)
                for c in order:
                    y = self.table[x][self.letter_element(c)]
                    if y not in words:
                        wy = wx + (c,)
                        words[y] = wy
                        heapq.heappush(
                            heap, (len(wy), ranks + (self.letter_rank(c),), wy, y))
        if len(words) != self.n:
            raise NotGenerated("generators do not reach every element")
        return words

    def canonical_word(self, x) -> tuple:
        return self._canonical[self._elem_id(x)]

    def letter_name(self, code: int) -> str:
        base = self.names[self.generators[code >> 1]]
        return base + "'" if code % 2 else base

    def format_word(self, word) -> str:
        return " ".join(self.letter_name(c) for c in word)

    def parse_word(self, text: str) -> tuple:
        return parse_word(text, [self.names[g] for g in self.generators])

    def __repr__(self):
        return (f"FiniteInverseSemigroup(n={self.n}, "
                f"generators={[self.names[g] for g in self.generators]})")


def parse_word(text, gen_names):
    """Parse a word over gen_names; inverse marked by ', ^-1 or ⁻¹ suffix.

    Tokens may be separated by spaces/commas/·; otherwise a greedy
    longest-name match is used ("rs" over names r,s reads as r s).
    """
    by_length = sorted(range(len(gen_names)), key=lambda i: -len(gen_names[i]))
    word = []
    i = 0
    text = text.strip()
    while i < len(text):
        ch = text[i]
        if ch in " ,\t·*":
            i += 1
            continue
        for gi in by_length:
            nm = gen_names[gi]
            if text.startswith(nm, i):
                i += len(nm)
                sign = 0
                for suf in ("'", "^-1", "⁻¹", "-1"):
                    if text.startswith(suf, i):
                        sign = 1
                        i += len(suf)
                        break
                word.append(2 * gi + sign)
                break
        else:
            raise ValueError(f"cannot read a generator at ...{text[i:i+8]!r}")
    if not word:
        raise ValueError("empty word")
    return tuple(word)


# -- spec operations ----------------------------------------------------------

def validate_table(table, names=None, generators=None) -> FiniteInverseSemigroup:
    """Check associativity, unique inverses and commuting idempotents;
    return the semigroup or raise NotInverse with a witness."""
    if names is None:
        names = [str(i) for i in range(len(table))]
    return FiniteInverseSemigroup(names, table, generators=generators, check=True)


class GreenData:
    """Partitions of the element set into R, L, H and D classes."""

    def __init__(self, S: FiniteInverseSemigroup):
        self.S = S
        n = S.n
        # a R b iff aa' = bb';  a L b iff a'a = b'b  (inverse semigroup facts)
        rkey = [S.mul(a, S.inv(a)) for a in range(n)]
        lkey = [S.mul(S.inv(a), a) for a in range(n)]
        self.r_class_of = self._index(rkey)
        self.l_class_of = self._index(lkey)
        hkey = list(zip(rkey, lkey))
        self.h_class_of = self._index(hkey)
        # D is the join of R and L
        parent = list(range(n))

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for key in (rkey, lkey):
            first = {}
            for a in range(n):
                k = key[a]
                if k in first:
                    ra, rb = find(first[k]), find(a)
                    if ra != rb:
                        parent[max(ra, rb)] = min(ra, rb)
                else:
                    first[k] = a
        self.d_class_of = self._index([find(a) for a in range(n)])
        self.r_classes = self._classes(self.r_class_of)
        self.l_classes = self._classes(self.l_class_of)
        self.h_classes = self._classes(self.h_class_of)
        self.d_classes = self._classes(self.d_class_of)

    @staticmethod
    def _index(keys):
        ids = {}
        out = []
        for k in keys:
            if k not in ids:
                ids[k] = len(ids)
            out.append(ids[k])
        return out

    @staticmethod
    def _classes(class_of):
        m = max(class_of) + 1 if class_of else 0
        cls = [[] for _ in range(m)]
        for a, c in enumerate(class_of):
            cls[c].append(a)
        return [tuple(c) for c in cls]

    def r_related(self, a, b):
        return self.r_class_of[a] == self.r_class_of[b]

    def l_related(self, a, b):
        return self.l_class_of[a] == self.l_class_of[b]

    def d_related(self, a, b):
        return self.d_class_of[a] == self.d_class_of[b]

    def h_related(self, a, b):
        return self.h_class_of[a] == self.h_class_of[b]


def green(S: FiniteInverseSemigroup) -> GreenData:
    return GreenData(S)


def r_class(S: FiniteInverseSemigroup, a: int):
    """Sorted R-class of a."""
    e = S.mul(a, S.inv(a))
    return [b for b in range(S.n) if S.mul(b, S.inv(b)) == e]


def maximal_subgroup(S: FiniteInverseSemigroup, e) -> list:
    """H-class of the idempotent e, as a sorted element list (a group
    under the restricted table, with identity e)."""
    e = S._elem_id(e)
    if not S.is_idempotent(e):
        raise NotAnIdempotent(f"{S.names[e]} is not idempotent")
    return [a for a in range(S.n)
            if S.mul(a, S.inv(a)) == e and S.mul(S.inv(a), a) == e]


def natural_order(S: FiniteInverseSemigroup, a, b) -> bool:
    """a <= b in the natural partial order (a = e*b for some idempotent e)."""
    a, b = S._elem_id(a), S._elem_id(b)
    return any(S.mul(e, b) == a for e in S.idempotents)


def is_combinatorial(S: FiniteInverseSemigroup) -> bool:
    """True iff every maximal subgroup is trivial (all H-classes singletons)."""
    g = green(S)
    return all(len(c) == 1 for c in g.h_classes)


class SubsemigroupEmbedding:
    """An injective homomorphism U -> S, stored as an element-id list."""

    def __init__(self, U, S, image):
        self.U = U
        self.S = S
        self.image = list(image)

    def __call__(self, u: int) -> int:
        return self.image[u]


def validate_embedding(U, S, mapping) -> SubsemigroupEmbedding:
    """mapping: dict (names or ids -> names or ids), or a list by U-element id."""
    if isinstance(mapping, dict):
        image = [None] * U.n
        for k, v in mapping.items():
            image[U._elem_id(k)] = S._elem_id(v)
        if any(x is None for x in image):
            raise NotAnEmbedding("map does not cover U")
    else:
        image = [S._elem_id(v) for v in mapping]
        if len(image) != U.n:
            raise NotAnEmbedding("map does not cover U")
    if len(set(image)) != U.n:
        raise NotAnEmbedding("map is not injective")
    for a in range(U.n):
        for b in range(U.n):
            if S.mul(image[a], image[b]) != image[U.mul(a, b)]:
                raise NotAnEmbedding(
                    f"map is not a homomorphism at ({U.names[a]},{U.names[b]})")
    return SubsemigroupEmbedding(U, S, image)
