"""Randomized invariants that hold for every input, not just the
fixtures: folding is a closure operator, canonical words are faithful,
word equality is an equivalence, and combinatorial amalgams never grow
a group."""

import random

from conftest import random_semilattice_amalgam, random_word
from opuntia.graphs import (InverseWordGraph, Alphabet, fold, schutz_graph,
                            accepts)
from opuntia.semigroups import natural_order, is_combinatorial
from opuntia.amalgams import core, expand_to_depth, word_equal, \
    validate_opuntoid
from opuntia.bass_serre import maximal_subgroup_presentation
from opuntia.presentations import is_trivial
from conftest import _closed_family, _named


def _random_graph(rng, n_max=9, m_max=16, letters=2):
    n = rng.randint(1, n_max)
    alpha = Alphabet([(1, f"g{i}") for i in range(letters)])
    edges = []
    for _ in range(rng.randint(0, m_max)):
        c = 2 * rng.randrange(letters)
        edges.append((rng.randrange(n), c, rng.randrange(n)))
    return InverseWordGraph(alpha, n, edges)


def test_folding_is_a_closure_operator():
    for seed in range(40):
        rng = random.Random(seed)
        g = _random_graph(rng)
        folded, _ = fold(g)
        again, mapping = fold(folded)
        # a folded graph is a fixed point, vertex for vertex
        assert list(mapping) == list(range(folded.n))
        assert again.edges == folded.edges


def test_canonical_words_on_random_semilattices():
    for seed in range(30):
        rng = random.Random(100 + seed)
        fam = _closed_family(rng, range(rng.randint(1, 4)), max_extra=4)
        S, _ = _named(fam, "s")
        for x in range(S.n):
            assert S.eval_word(S.canonical_word(x)) == x


def test_acceptance_recovers_natural_order_on_random_semilattices():
    for seed in range(15):
        rng = random.Random(200 + seed)
        fam = _closed_family(rng, range(rng.randint(1, 3)), max_extra=4)
        S, _ = _named(fam, "s")
        for x in range(S.n):
            t = schutz_graph(S, S.canonical_word(x))
            for y in range(S.n):
                # the automaton of x accepts exactly the words above x
                assert accepts(t, S.canonical_word(y)) == \
                    natural_order(S, x, y)


def test_word_equality_is_an_equivalence():
    rng = random.Random(7)
    for _ in range(12):
        a = random_semilattice_amalgam(rng)
        words = [random_word(rng, a) for _ in range(5)]
        verdict = {}
        for w1 in words:
            assert word_equal(a, w1, w1)
            for w2 in words:
                verdict[(w1, w2)] = word_equal(a, w1, w2)
                assert verdict[(w1, w2)] == word_equal(a, w2, w1)
        for w1 in words:
            for w2 in words:
                for w3 in words:
                    if verdict[(w1, w2)] and verdict[(w2, w3)]:
                        assert verdict[(w1, w3)]


def test_random_cores_satisfy_the_axioms():
    rng = random.Random(21)
    for _ in range(20):
        a = random_semilattice_amalgam(rng)
        w = random_word(rng, a)
        _, d = core(a, w)
        assert validate_opuntoid(d, a).ok
        d2 = expand_to_depth(d, a, 1)
        assert validate_opuntoid(d2, a).ok


def test_combinatorial_amalgams_have_trivial_subgroups():
    rng = random.Random(42)
    for _ in range(20):
        a = random_semilattice_amalgam(rng)
        assert is_combinatorial(a.s1) and is_combinatorial(a.s2)
        w = random_word(rng, a)
        res = maximal_subgroup_presentation(a, a.alphabet.format_word(w))
        assert is_trivial(res["presentation"])
        assert res["finiteness"] == "Finite"
