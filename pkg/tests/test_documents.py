import json

import pytest

from opuntia.catalog import corpus_amalgams, cyclic_group
from opuntia.documents import (parse_semigroup, parse_amalgam, loads_amalgam,
                               load_amalgam, semigroup_document,
                               amalgam_document, dump_amalgam)
from opuntia.amalgams import core, word_equal
from opuntia.errors import InvalidDocument, OpuntiaError


def z2z3_doc():
    return {
        "name": "z2*z3/1",
        "s1": {"elements": ["1", "a"], "mul": [["1", "a"], ["a", "1"]],
               "generators": ["a"]},
        "s2": {"elements": ["1", "b", "b2"],
               "mul": [["1", "b", "b2"], ["b", "b2", "1"], ["b2", "1", "b"]],
               "generators": ["b"]},
        "u": {"elements": ["1"], "mul": [["1"]]},
        "phi1": {"1": "1"},
        "phi2": {"1": "1"},
    }


def test_roundtrip_whole_corpus():
    for key, a in corpus_amalgams().items():
        text = json.dumps(amalgam_document(a))
        b = loads_amalgam(text)
        assert b.name == a.name
        assert b.s1.names == a.s1.names
        assert b.u.table == a.u.table
        # same behavior, not just same tables
        w = b.alphabet.letter_name(0)
        _, d1 = core(a, a.parse_word(w))
        _, d2 = core(b, b.parse_word(w))
        assert len(d1.lobes) == len(d2.lobes)
        assert d1.buds == d2.buds


def test_parse_accepts_indices_and_names():
    doc = z2z3_doc()
    doc["s1"]["mul"] = [[0, 1], [1, 0]]
    a = loads_amalgam(json.dumps(doc))
    assert word_equal(a, a.parse_word("a a"), a.parse_word("b b b"))


def test_file_roundtrip(tmp_path):
    a = corpus_amalgams()["2chain*2chain/f"]
    path = tmp_path / "amalgam.json"
    dump_amalgam(a, path)
    b = load_amalgam(path)
    assert b.name == a.name
    assert word_equal(b, b.parse_word("f1"), b.parse_word("f2"))
    # serialized form is stable
    dump_amalgam(b, tmp_path / "again.json")
    assert (tmp_path / "amalgam.json").read_text() == \
        (tmp_path / "again.json").read_text()


def test_missing_file():
    with pytest.raises(InvalidDocument, match="cannot read"):
        load_amalgam("/nonexistent/amalgam.json")


def test_semigroup_document_roundtrip():
    z3 = cyclic_group(3, "b")
    doc = semigroup_document(z3, name="z3")
    S = parse_semigroup(doc)
    assert S.names == z3.names
    assert S.table == z3.table
    assert list(S.generators) == list(z3.generators)


BROKEN = [
    ("not json at all", "{", "not valid JSON"),
    ("top level list", "[]", "expected an object"),
    ("missing s2", json.dumps({"s1": z2z3_doc()["s1"]}), "missing key 's2'"),
    ("phi not a dict",
     json.dumps({**z2z3_doc(), "phi1": ["1"]}), "phi1"),
]


@pytest.mark.parametrize("label,text,needle",
                         BROKEN, ids=[b[0] for b in BROKEN])
def test_malformed_top_level(label, text, needle):
    with pytest.raises(InvalidDocument, match=needle):
        loads_amalgam(text)


def _broken_semigroup_docs():
    yield "empty elements", {"elements": [], "mul": []}, "non-empty"
    yield "non-string element", {"elements": ["1", 2], "mul": []}, "names"
    yield "duplicate names", {"elements": ["x", "x"],
                              "mul": [["x", "x"], ["x", "x"]]}, "duplicate"
    yield "missing mul", {"elements": ["x"]}, "missing key 'mul'"
    yield "ragged rows", {"elements": ["x", "y"],
                          "mul": [["x", "y"]]}, "expected 2 rows"
    yield "short row", {"elements": ["x", "y"],
                        "mul": [["x"], ["y", "x"]]}, r"mul\[0\]"
    yield "bool entry", {"elements": ["x"], "mul": [[True]]}, "name or index"
    yield "unknown name", {"elements": ["x"], "mul": [["y"]]}, "unknown"
    yield "index out of range", {"elements": ["x"], "mul": [[3]]}, "range"
    yield "float entry", {"elements": ["x"], "mul": [[0.5]]}, "name or index"
    yield "empty generators", {"elements": ["x"], "mul": [["x"]],
                               "generators": []}, "generators"
    yield "unknown generator", {"elements": ["x"], "mul": [["x"]],
                                "generators": ["q"]}, "unknown"


@pytest.mark.parametrize("label,doc,needle",
                         list(_broken_semigroup_docs()),
                         ids=[b[0] for b in _broken_semigroup_docs()])
def test_malformed_semigroup(label, doc, needle):
    with pytest.raises(InvalidDocument, match=needle):
        parse_semigroup(doc)


def _broken_amalgam_variants():
    base = z2z3_doc()
    nonassoc = dict(base)
    nonassoc["s1"] = {"elements": ["e", "x"],
                      "mul": [["x", "x"], ["e", "x"]], "generators": ["x"]}
    yield "not associative", nonassoc
    noninv = dict(base)
    noninv["s1"] = {"elements": ["p", "q"],
                    "mul": [["p", "p"], ["q", "q"]]}
    yield "no unique inverses", noninv
    badphi = dict(base)
    badphi["phi1"] = {"1": "a"}
    yield "phi misses idempotent", badphi
    partial = dict(base)
    partial["phi2"] = {}
    yield "phi partial", partial
    clash = dict(base)
    clash["s2"] = dict(base["s1"])
    yield "generator name clash", clash


@pytest.mark.parametrize("label,doc", list(_broken_amalgam_variants()),
                         ids=[b[0] for b in _broken_amalgam_variants()])
def test_invalid_amalgam_semantics(label, doc):
    # every semantic failure surfaces as a document error, never a crash
    with pytest.raises(OpuntiaError):
        parse_amalgam(doc)


def test_semantic_error_messages_say_what_failed():
    doc = z2z3_doc()
    doc["phi1"] = {"1": "a"}
    with pytest.raises(InvalidDocument, match="homomorphism|idempotent"):
        parse_amalgam(doc)
