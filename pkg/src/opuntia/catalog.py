"""Ready-made semigroups and amalgams used by the tests and CLI examples."""
from __future__ import annotations

from itertools import product

from .amalgams import Amalgam
from .semigroups import FiniteInverseSemigroup


def cyclic_group(n: int, gen: str = "a") -> FiniteInverseSemigroup:
    """Z_n with elements 1, g, g2, ... and generator set {g}."""
    names = ["1"] + [gen if k == 1 else f"{gen}{k}" for k in range(1, n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteInverseSemigroup(names, table, generators=[1] if n > 1 else [0])


def _perm_mul(p, q):
    # apply p first, then q
    return tuple(q[i] for i in p)


def _close_under_mul(gens):
    elems = list(gens)
    seen = set(elems)
    i = 0
    while i < len(elems):
        for g in gens:
            h = _perm_mul(elems[i], g)
            if h not in seen:
                seen.add(h)
                elems.append(h)
        i += 1
    return elems


def dihedral_d4() -> FiniteInverseSemigroup:
    """The 8-element dihedral group generated by two reflections r, s
    with (rs) of order 4; elements named by shortest words in r, s."""
    r = (3, 2, 1, 0)
    s = (0, 3, 2, 1)
    elems = _close_under_mul([r, s])
    ident = tuple(range(4))
    if ident not in elems:
        elems.append(ident)
    elems = sorted(set(elems))
    idx = {p: i for i, p in enumerate(elems)}
    table = [[idx[_perm_mul(p, q)] for q in elems] for p in elems]
    # name every element by its shortest r/s word (lex: r before s)
    words = {idx[r]: "r", idx[s]: "s"}
    frontier = [idx[r], idx[s]]
    while frontier:
        nxt = []
        for x in frontier:
            for g, nm in ((idx[r], "r"), (idx[s], "s")):
                y = table[x][g]
                if y not in words:
                    words[y] = words[x] + nm
                    nxt.append(y)
        frontier = nxt
    words[idx[ident]] = "1"
    names = [words[i] for i in range(len(elems))]
    return FiniteInverseSemigroup(names, table, generators=[idx[r], idx[s]])


def symmetric_inverse_monoid_2() -> FiniteInverseSemigroup:
    """I_2, the 7 partial injections of a 2-element set; generators t
    (the transposition) and e1 (identity restricted to point 1)."""
    pts = (0, 1)
    elems = []
    for img in product((None, 0, 1), repeat=2):
        vals = [v for v in img if v is not None]
        if len(vals) == len(set(vals)):
            elems.append(img)

    def compose(p, q):
        return tuple(q[p[i]] if p[i] is not None else None for i in pts)

    idx = {p: i for i, p in enumerate(elems)}
    table = [[idx[compose(p, q)] for q in elems] for p in elems]

    def name(p):
        if p == (0, 1):
            return "1"
        if p == (1, 0):
            return "t"
        if p == (0, None):
            return "e1"
        if p == (None, 1):
            return "e2"
        if p == (1, None):
            return "m12"
        if p == (None, 0):
            return "m21"
        return "0"

    names = [name(p) for p in elems]
    return FiniteInverseSemigroup(
        names, table, generators=[idx[(1, 0)], idx[(0, None)]])


def chain_semilattice(names) -> FiniteInverseSemigroup:
    """Meet-chain e0 > e1 > ... with the given top-down names; product is meet.
    Generator set defaults to all elements."""
    n = len(names)
    table = [[max(i, j) for j in range(n)] for i in range(n)]
    return FiniteInverseSemigroup(names, table)


def meet_semilattice(family, names=None) -> FiniteInverseSemigroup:
    """Semilattice of an intersection-closed family of frozensets."""
    fam = sorted(set(map(frozenset, family)), key=lambda s: (-len(s), sorted(s)))
    idx = {s: i for i, s in enumerate(fam)}
    for a in fam:
        for b in fam:
            if a & b not in idx:
                raise ValueError("family is not intersection-closed")
    if names is None:
        names = ["{" + ",".join(map(str, sorted(s))) + "}" for s in fam]
    table = [[idx[a & b] for b in fam] for a in fam]
    return FiniteInverseSemigroup(names, table)


# -- amalgams -----------------------------------------------------------------

def trivial_group(name="1") -> FiniteInverseSemigroup:
    return FiniteInverseSemigroup([name], [[0]])


def amalgam_z2_z3() -> Amalgam:
    """[Z2, Z3; {1}] — the two cyclic groups glued along their identity."""
    z2 = cyclic_group(2, "a")
    z3 = cyclic_group(3, "b")
    u = trivial_group()
    return Amalgam(z2, z3, u, {"1": "1"}, {"1": "1"}, name="z2*z3/1")


def amalgam_z2_z2_full() -> Amalgam:
    """[Z2, Z2; Z2] — both factors equal the amalgamated subgroup."""
    s1 = cyclic_group(2, "a")
    s2 = cyclic_group(2, "b")
    u = cyclic_group(2, "g")
    return Amalgam(s1, s2, u, {"1": "1", "g": "a"}, {"1": "1", "g": "b"},
                   name="z2*z2/z2")


def amalgam_two_chains() -> Amalgam:
    """Two 2-chains glued along their bottom element."""
    s1 = chain_semilattice(["e1", "f1"])
    s2 = chain_semilattice(["e2", "f2"])
    u = chain_semilattice(["f"])
    return Amalgam(s1, s2, u, {"f": "f1"}, {"f": "f2"}, name="2chain*2chain/f")


def amalgam_three_chains_over_two_chain() -> Amalgam:
    """Two 3-chains glued along their bottom 2-chain."""
    s1 = chain_semilattice(["t1", "m1", "b1"])
    s2 = chain_semilattice(["t2", "m2", "b2"])
    u = chain_semilattice(["e", "f"])
    return Amalgam(s1, s2, u, {"e": "m1", "f": "b1"}, {"e": "m2", "f": "b2"},
                   name="3chain*3chain/2chain")


def amalgam_d4_z2() -> Amalgam:
    """[D4, Z2; Z2] with Z2 sitting in D4 as {1, s}."""
    s1 = dihedral_d4()
    s2 = cyclic_group(2, "c")
    u = cyclic_group(2, "g")
    return Amalgam(s1, s2, u, {"1": "1", "g": "s"}, {"1": "1", "g": "c"},
                   name="d4*z2/z2")


CORPUS_SEMIGROUPS = {
    "z2": cyclic_group,
    "z3": lambda: cyclic_group(3, "b"),
    "d4": dihedral_d4,
    "i2": symmetric_inverse_monoid_2,
    "chain2": lambda: chain_semilattice(["e", "f"]),
    "chain3": lambda: chain_semilattice(["e", "f", "g"]),
}


def corpus_semigroups():
    return {
        "z2": cyclic_group(2, "a"),
        "z3": cyclic_group(3, "b"),
        "d4": dihedral_d4(),
        "i2": symmetric_inverse_monoid_2(),
        "chain2": chain_semilattice(["e", "f"]),
        "chain3": chain_semilattice(["e", "f", "g"]),
    }


def corpus_amalgams():
    return {
        "z2*z3/1": amalgam_z2_z3(),
        "z2*z2/z2": amalgam_z2_z2_full(),
        "2chain*2chain/f": amalgam_two_chains(),
        "3chain*3chain/2chain": amalgam_three_chains_over_two_chain(),
    }
