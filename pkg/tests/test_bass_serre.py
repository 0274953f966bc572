import pytest

from opuntia.catalog import (amalgam_z2_z3, amalgam_z2_z2_full,
                             amalgam_two_chains,
                             amalgam_three_chains_over_two_chain,
                             dihedral_d4, symmetric_inverse_monoid_2,
                             meet_semilattice)
from opuntia.semigroups import FiniteInverseSemigroup
from opuntia.amalgams import Amalgam
from opuntia.graphs import (Alphabet, linear_graph, schutz_graph, fold,
                            automorphisms)
from opuntia.hosts import host_region
from opuntia.presentations import abelianization_invariants
from opuntia.bass_serre import (quotient_graph, fundamental_presentation,
                                vertex_group, edge_group, lift_automorphism,
                                maximal_subgroup_presentation,
                                maximal_subgroup_json, gog_json, gog_dot)
from opuntia.errors import NotMultiHost, NoLiftFound


@pytest.fixture(scope="module")
def z2z3():
    return amalgam_z2_z3()


@pytest.fixture(scope="module")
def z2z3_result(z2z3):
    return maximal_subgroup_presentation(z2z3, "a")


def diamond_amalgam():
    """Two copies of the 2x2 partial-bijection monoid glued along the
    idempotent diamond; the middle idempotents are exchanged by partial
    bijections on both sides, so the bottom group is infinite cyclic."""
    i2 = symmetric_inverse_monoid_2()
    ren = {"1": "j", "t": "u", "e1": "p1", "e2": "p2",
           "m12": "n12", "m21": "n21", "0": "z"}
    i2b = FiniteInverseSemigroup([ren[n] for n in i2.names], i2.table,
                                 generators=list(i2.generators))
    dia = meet_semilattice([{1, 2}, {1}, {2}, set()],
                           names=["top", "e", "f", "bot"])
    return Amalgam(i2, i2b, dia,
                   {"top": "1", "e": "e1", "f": "e2", "bot": "0"},
                   {"top": "j", "e": "p1", "f": "p2", "bot": "z"},
                   name="i2*i2/diamond")


# -- lifting automorphisms through a folding -----------------------------------


def test_lifting_through_a_vertex_pinch():
    d4 = dihedral_d4()
    sigma = schutz_graph(d4, d4.parse_word("r r"))
    g = sigma.graph
    assert g.n == 8 and len(automorphisms(g, 0)) == 8
    s_vertex = g.trace(0, d4.parse_word("s"))
    delta, pi = fold(g, pending=((0, s_vertex),))
    assert delta.n == 4
    phis = automorphisms(delta, 0)
    assert len(phis) == 2
    for phi in phis:
        rec = lift_automorphism(g, delta, pi, phi)
        assert rec["lift"] is not None
        assert rec["autSigma"] == 8 and rec["autDelta"] == 2
        assert rec["H_order"] == 4 and rec["N_order"] == 2
        assert rec["induced"] == 2
        assert rec["indexCheck"]


def test_lift_compatible_translations_named():
    d4 = dihedral_d4()
    sigma = schutz_graph(d4, d4.parse_word("r r"))
    g = sigma.graph
    delta, pi = fold(g, pending=((0, g.trace(0, d4.parse_word("s"))),))
    rec = lift_automorphism(g, delta, pi, automorphisms(delta, 0)[0])
    e = d4.eval_word(d4.parse_word("r r"))
    elems = sorted(x for x in range(d4.n) if d4.mul(x, d4.inv(x)) == e)
    h_roots = {d4.name_of(elems[psi[0]]) for psi in rec["H"]}
    n_roots = {d4.name_of(elems[psi[0]]) for psi in rec["N"]}
    # moving the root within the pinched pair changes nothing downstairs
    assert n_roots == {"1", "s"}
    # the half-turn and one further reflection still normalize the pinch
    assert h_roots == {"1", "s", "rsr", "rsrs"}


def test_no_lift_when_quotient_gains_symmetry():
    alpha = Alphabet([(1, "a")])
    path, _ = fold(linear_graph(alpha, (0, 0)).graph)
    assert len(automorphisms(path, 0)) == 1
    cycle, pi = fold(path, pending=((0, 2),))
    swap = next(phi for phi in automorphisms(cycle, 0) if phi != (0, 1))
    with pytest.raises(NoLiftFound) as exc:
        lift_automorphism(path, cycle, pi, swap)
    rec = exc.value.record
    assert rec["lift"] is None
    assert rec["autSigma"] == 1 and rec["autDelta"] == 2
    assert not rec["indexCheck"]


# -- the quotient graph --------------------------------------------------------


def test_quotient_graph_of_group_amalgam(z2z3):
    region = host_region(z2z3, "a")
    gog = quotient_graph(z2z3, region)
    assert gog.n_vertices() == 2 and gog.n_edges() == 1
    v0, v1 = gog.vertices
    assert (v0.color, v1.color) == (1, 2)
    assert z2z3.u.name_of(v0.f) == "1"
    assert (len(v0.lobes), len(v1.lobes)) == (29, 14)
    assert (v0.presentation.order, v1.presentation.order) == (2, 3)
    e = gog.edges[0]
    assert (e.source, e.target) == (0, 1)
    assert len(e.pairs) == 42
    assert e.in_tree
    assert e.presentation.order == 1
    # gluing over the identity: both conjugators are the identity itself
    assert e.conjugators == (0, 0)
    assert e.sigma == {0: 0} and e.tau == {0: 0}


def test_quotient_graph_needs_multiple_hosts():
    c = amalgam_two_chains()
    with pytest.raises(NotMultiHost):
        quotient_graph(c, host_region(c, "e1"))


def test_vertex_and_edge_group_helpers(z2z3):
    assert vertex_group(z2z3, 1, 0).order == 2
    assert vertex_group(z2z3, 2, 0).order == 3
    assert edge_group(z2z3, 0).order == 1


# -- fundamental group of the graph of groups ----------------------------------


def test_fundamental_presentation_of_free_product(z2z3, z2z3_result):
    p = z2z3_result["presentation"]
    assert p.format() == "< v0_a, v1_b2 | v0_a v0_a; v1_b2 v1_b2 v1_b2 >"
    assert abelianization_invariants(p) == (0, [2, 3])


def test_group_amalgam_dispatch(z2z3_result):
    res = z2z3_result
    assert res["case"] == "1b"
    assert res["finiteness"] == "Infinite"
    assert res["multiHost"]
    assert res["algebraicInfinite"] is False
    assert res["discrepancy"] is True
    assert res["graphY"] == {"vertices": 2, "edges": 1}
    assert res["order"] is None


def test_finite_case_cross_checks_order():
    res = maximal_subgroup_presentation(amalgam_z2_z2_full(), "a")
    assert res["case"] == "1b"
    assert res["finiteness"] == "Finite"
    assert res["presentation"].order == 2
    assert res["orderCrossCheck"] == {
        "presentationOrder": 2, "autHostUnion": 2, "match": True}


def test_single_full_lobe_dispatch():
    c = amalgam_two_chains()
    res = maximal_subgroup_presentation(c, "e1")
    assert res["case"] == "1a"
    assert res["finiteness"] == "Finite"
    assert res["factor"] == 1 and res["factorIdempotent"] == "e1"
    assert res["presentation"].format() == "<  |  >"


def test_new_idempotent_dispatch_with_lift_diagnostics():
    c = amalgam_two_chains()
    res = maximal_subgroup_presentation(c, "e1 e2")
    assert res["case"] == "2"
    assert res["finiteness"] == "Finite"
    assert res["presentation"].format() == "<  |  >"
    assert [rec["lobe"] for rec in res["lifting"]] == [0, 1]
    for rec in res["lifting"]:
        assert rec["projection"]
        assert rec["autLobe"] == rec["lifted"] == 1
        assert rec["indexCheck"]


def test_chain_amalgam_cases():
    t = amalgam_three_chains_over_two_chain()
    cases = {w: maximal_subgroup_presentation(t, w) for w
             in ("t1", "m1", "b1", "t1 t2")}
    assert cases["t1"]["case"] == "1a"
    assert cases["m1"]["case"] == "1b"
    assert cases["b1"]["case"] == "1b"
    assert cases["t1 t2"]["case"] == "2"
    for res in cases.values():
        assert res["finiteness"] == "Finite"
        assert res["presentation"].order == 1


def test_two_glued_idempotent_classes_give_infinite_cyclic():
    a = diamond_amalgam()
    res = maximal_subgroup_presentation(a, "e1")
    assert res["case"] == "1b"
    assert res["finiteness"] == "Infinite"
    assert res["algebraicInfinite"] is True
    assert res["discrepancy"] is False
    # Y is a doubled edge: one tree edge, one stable letter, trivial groups
    assert res["graphY"] == {"vertices": 2, "edges": 2}
    assert res["presentation"].format() == "< y1 |  >"
    assert abelianization_invariants(res["presentation"]) == (1, [])
    gog = res["gog"]
    assert sorted(e.in_tree for e in gog.edges) == [False, True]
    assert {a.u.name_of(e.f) for e in gog.edges} == {"e", "f"}


def test_fundamental_group_ignores_spanning_tree_choice():
    a = diamond_amalgam()
    gog = maximal_subgroup_presentation(a, "e1")["gog"]
    base = abelianization_invariants(fundamental_presentation(gog))
    e0, e1 = gog.edges
    e0.in_tree, e1.in_tree = e1.in_tree, e0.in_tree
    flipped = abelianization_invariants(fundamental_presentation(gog))
    assert base == flipped == (1, [])


# -- serialization ---------------------------------------------------------------


def test_gog_json_payload(z2z3, z2z3_result):
    doc = gog_json(z2z3_result["gog"])
    assert [v["group"]["order"] for v in doc["vertices"]] == [2, 3]
    v0 = doc["vertices"][0]
    assert v0["factor"] == 1 and v0["idempotent"] == "1"
    assert len(v0["lobes"]) == 29
    e = doc["edges"][0]
    assert e["inTree"] and e["conjugators"] == ["1", "1"]
    assert e["sigma"] == {"1": "1"} and e["tau"] == {"1": "1"}
    assert e["group"]["order"] == 1


def test_gog_dot_output(z2z3_result):
    dot = gog_dot(z2z3_result["gog"])
    assert dot.startswith("graph Y {")
    assert 'v0 [label="v0: S1 @ 1 (order 2)" shape=box];' in dot
    assert 'v1 [label="v1: S2 @ 1 (order 3)" shape=ellipse];' in dot
    assert 'v0 -- v1 [label="1 (order 1)" style=solid];' in dot


def test_result_json_strips_objects(z2z3_result):
    doc = maximal_subgroup_json(z2z3_result)
    assert "gog" not in doc and "presentation_json" not in doc.get("gog", {})
    # unknown order is omitted rather than serialized as null
    assert doc["presentation"] == {
        "generators": ["v0_a", "v1_b2"],
        "relators": ["v0_a v0_a", "v1_b2 v1_b2 v1_b2"],
    }
    assert doc["graphOfGroups"]["edges"][0]["inTree"]
    assert doc["case"] == "1b" and doc["word"] == "a"
