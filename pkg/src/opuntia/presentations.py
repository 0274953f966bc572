"""Finitely presented groups.

Vertex and edge groups arrive as multiplication tables; they leave as
presentations whose generators are the non-identity elements.  The only
simplification applied is a light Tietze pass (free/cyclic reduction,
duplicate removal, elimination of generators defined by a short
relator), so the output stays auditable.  Orders are recovered by coset
enumeration and abelianizations by integer Smith normal form."""

from collections import deque
from dataclasses import dataclass, field
from typing import Optional


@dataclass
class GroupPresentation:
    generators: tuple                 # names
    relators: tuple                   # words of signed 1-based indices
    order: Optional[int] = None       # when finite and known

    def format(self) -> str:
        gens = ", ".join(self.generators)
        rels = "; ".join(self.format_word(r) for r in self.relators)
        return f"< {gens} | {rels} >"

    def format_word(self, word) -> str:
        if not word:
            return "1"
        return " ".join(self.generators[x - 1] if x > 0
                        else self.generators[-x - 1] + "'" for x in word)

    def json(self) -> dict:
        out = {"generators": list(self.generators),
               "relators": [self.format_word(r) for r in self.relators]}
        if self.order is not None:
            out["order"] = self.order
        return out

    def __repr__(self):
        return f"GroupPresentation({self.format()}, order={self.order})"


def free_reduce(word):
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word):
    word = list(free_reduce(word))
    while len(word) > 1 and word[0] == -word[-1]:
        word = word[1:-1]
    return tuple(word)


def _canonical_rotation(word):
    """Preferred rotation of the relator or its inverse (positive
    letters first), used for deduplication."""
    if not word:
        return word

    def key(w):
        return tuple((abs(x), 0 if x > 0 else 1) for x in w)

    best = None
    for w in (word, free_reduce(tuple(-x for x in reversed(word)))):
        for i in range(len(w)):
            rot = w[i:] + w[:i]
            if best is None or key(rot) < key(best):
                best = rot
    return best


def group_table_presentation(names, mul, identity,
                             order_known=True) -> GroupPresentation:
    """Presentation of a finite group given by its elements: generators
    are the non-identity elements, relators the table equations
    x y (xy)^-1."""
    elems = list(names)
    gens = [x for x in elems if x != identity]
    gid = {x: k + 1 for k, x in enumerate(gens)}
    relators = set()
    for x in gens:
        for y in gens:
            z = mul(x, y)
            word = (gid[x], gid[y]) if z == identity \
                else (gid[x], gid[y], -gid[z])
            word = cyclic_reduce(word)
            if word:
                relators.add(_canonical_rotation(word))
    p = GroupPresentation(tuple(str(g) for g in gens),
                          tuple(sorted(relators, key=lambda w: (len(w), w))),
                          len(elems) if order_known else None)
    return p


def subgroup_presentation(S, e, rename=None) -> GroupPresentation:
    """Table presentation of the maximal subgroup at an idempotent of a
    finite inverse semigroup."""
    from .semigroups import maximal_subgroup
    H = maximal_subgroup(S, e)
    label = rename or S.name_of
    names = {x: label(x) for x in H}
    back = {v: k for k, v in names.items()}
    return group_table_presentation(
        [names[x] for x in H],
        lambda x, y: names[S.mul(back[x], back[y])],
        names[e])


# -- Tietze simplification ----------------------------------------------------------


def _substitute(word, gen, repl):
    """Replace +-gen in the word by repl / its inverse."""
    out = []
    inv_repl = tuple(-x for x in reversed(repl))
    for x in word:
        if x == gen:
            out.extend(repl)
        elif x == -gen:
            out.extend(inv_repl)
        else:
            out.append(x)
    return free_reduce(tuple(out))


def tietze_lite(p: GroupPresentation,
                max_defining: int = 3) -> GroupPresentation:
    """Reduce relators freely and cyclically, drop duplicates, and
    eliminate generators defined by a relator of length <= max_defining
    in which they occur exactly once.  The group is unchanged."""
    gens = list(p.generators)
    relators = [cyclic_reduce(r) for r in p.relators]

    while True:
        relators = sorted({_canonical_rotation(r)
                           for r in map(cyclic_reduce, relators) if r},
                          key=lambda w: (len(w), w))
        victim = None
        for r in relators:
            if len(r) > max_defining:
                break
            for pos, x in enumerate(r):
                g = abs(x)
                if sum(1 for y in r if abs(y) == g) == 1:
                    victim = (r, pos, g)
                    break
            if victim:
                break
        if victim is None:
            break
        r, pos, g = victim
        # r = u (+-g) v  =>  g = (u^-1 v^-1) or its inverse
        u, v = r[:pos], r[pos + 1:]
        rest = tuple(-x for x in reversed(v)) + tuple(-x for x in reversed(u))
        repl = rest if r[pos] > 0 else tuple(-x for x in reversed(rest))
        relators = [_substitute(w, g, repl) for w in relators if w != r]
        # renumber: drop generator g
        keep = [k + 1 for k in range(len(gens)) if k + 1 != g]
        newid = {old: new + 1 for new, old in enumerate(keep)}
        gens = [gens[k - 1] for k in keep]
        relators = [tuple(newid[x] if x > 0 else -newid[-x] for x in w)
                    for w in relators]
    return GroupPresentation(tuple(gens), tuple(relators), p.order)


# -- abelianization -----------------------------------------------------------------


def _smith_diagonal(rows, cols, mat):
    """Diagonal of the Smith normal form of an integer matrix, by
    row/column reduction with a divisibility fix-up."""
    m = [list(r) for r in mat]

    def pivot(t):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if m[i][j] and (best is None
                                or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        return best

    diag = []
    t = 0
    while t < min(rows, cols):
        pv = pivot(t)
        if pv is None:
            break
        i, j = pv
        m[t], m[i] = m[i], m[t]
        for r in m:
            r[t], r[j] = r[j], r[t]
        done = False
        while not done:
            done = True
            for i in range(t + 1, rows):
                if m[i][t]:
                    q = m[i][t] // m[t][t]
                    for j in range(t, cols):
                        m[i][j] -= q * m[t][j]
                    if m[i][t]:
                        m[t], m[i] = m[i], m[t]
                        done = False
            for j in range(t + 1, cols):
                if m[t][j]:
                    q = m[t][j] // m[t][t]
                    for i in range(t, rows):
                        m[i][j] -= q * m[i][t]
                    if m[t][j]:
                        for r in m:
                            r[t], r[j] = r[j], r[t]
                        done = False
        # divisibility: fold any non-multiple below-right into the pivot
        d = abs(m[t][t])
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if m[i][j] % d:
                    for jj in range(t, cols):
                        m[t][jj] += m[i][jj]
                    break
            else:
                continue
            break
        else:
            diag.append(d)
            t += 1
    return diag


def _prime_powers(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            q = 1
            while n % d == 0:
                n //= d
                q *= d
            out.append(q)
        d += 1
    if n > 1:
        out.append(n)
    return out


def abelianization_invariants(p: GroupPresentation):
    """(free rank, sorted prime-power elementary divisors) of the
    abelianized group."""
    n = len(p.generators)
    rows = []
    for r in p.relators:
        row = [0] * n
        for x in r:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(row)
    if not rows:
        return n, []
    diag = _smith_diagonal(len(rows), n, rows)
    rank = len([d for d in diag if d])
    divisors = []
    for d in diag:
        if d > 1:
            divisors.extend(_prime_powers(d))
    return n - rank, sorted(divisors)


# -- coset enumeration --------------------------------------------------------------


def todd_coxeter_order(p: GroupPresentation, max_cosets: int = 50000):
    """Order of the presented group by coset enumeration over the
    trivial subgroup; None when enumeration exceeds max_cosets (the
    group may be infinite)."""
    ngen = len(p.generators)
    if ngen == 0:
        return 1
    nlet = 2 * ngen
    rels = [tuple((2 * (x - 1)) if x > 0 else (2 * (-x - 1) + 1) for x in r)
            for r in p.relators if r]

    table = [[None] * nlet]
    parent = [0]

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pending = deque()

    def join(c, l, d):
        """Record c.l = d (and d.l^-1 = c), queueing coincidences."""
        c, d = find(c), find(d)
        e = table[c][l]
        if e is None:
            table[c][l] = d
        elif find(e) != d:
            pending.append((e, d))
        e = table[d][l ^ 1]
        if e is None:
            table[d][l ^ 1] = c
        elif find(e) != c:
            pending.append((e, c))

    def coincidences():
        while pending:
            x, y = pending.popleft()
            x, y = find(x), find(y)
            if x == y:
                continue
            if y < x:
                x, y = y, x
            parent[y] = x
            for l in range(nlet):
                d = table[y][l]
                if d is not None:
                    join(x, l, d)

    def scan(c, word):
        """Scan a relator at coset c, filling the gap with new cosets."""
        f, fi = c, 0
        while fi < len(word):
            x = table[find(f)][word[fi]]
            if x is None:
                break
            f, fi = x, fi + 1
        if fi == len(word):
            if find(f) != find(c):
                pending.append((f, c))
            return
        b, bi = c, len(word)
        while bi > fi:
            x = table[find(b)][word[bi - 1] ^ 1]
            if x is None:
                break
            b, bi = x, bi - 1
        if bi == fi:
            if find(f) != find(b):
                pending.append((f, b))
            return
        while fi < bi - 1:
            table.append([None] * nlet)
            parent.append(len(table) - 1)
            join(f, word[fi], len(table) - 1)
            f, fi = len(table) - 1, fi + 1
        join(f, word[fi], b)

    changed = True
    while changed:
        changed = False
        c = 0
        while c < len(table):
            if find(c) != c:
                c += 1
                continue
            for w in rels:
                scan(find(c), w)
                coincidences()
            base = find(c)
            for l in range(nlet):
                if table[base][l] is None:
                    table.append([None] * nlet)
                    parent.append(len(table) - 1)
                    join(base, l, len(table) - 1)
                    coincidences()
            if len(table) > max_cosets:
                return None
            c += 1
        # a final sweep: merged rows may have invalidated earlier scans
        for c in range(len(table)):
            if find(c) != c:
                continue
            for w in rels:
                f = c
                for l in w:
                    f = table[find(f)][l]
                    if f is None:
                        changed = True
                        break
                else:
                    if find(f) != find(c):
                        pending.append((f, c))
                        changed = True
                if changed:
                    break
            if changed:
                break
        coincidences()
    return sum(1 for c in range(len(table)) if find(c) == c)


def is_trivial(p: GroupPresentation, max_cosets: int = 50000) -> bool:
    return todd_coxeter_order(p, max_cosets) == 1


def presentation_json(p: GroupPresentation) -> dict:
    return p.json()
