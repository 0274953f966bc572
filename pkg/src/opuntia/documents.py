"""JSON descriptions of amalgams.

A document names everything: semigroup elements are strings, tables are
row-major lists of names (indices also accepted), embeddings map U
names to factor names.  Parsing funnels straight into the table and
embedding validators, so a document that loads is a valid amalgam.
"""

import json

from .errors import InvalidDocument, OpuntiaError
from .semigroups import FiniteInverseSemigroup
from .amalgams import Amalgam


def _need(doc, key, where):
    if not isinstance(doc, dict):
        raise InvalidDocument(f"{where}: expected an object, got "
                              f"{type(doc).__name__}")
    if key not in doc:
        raise InvalidDocument(f"{where}: missing key {key!r}")
    return doc[key]


def parse_semigroup(doc, where: str = "semigroup") -> FiniteInverseSemigroup:
    """Build a validated semigroup from {name?, elements, mul,
    generators?}; table entries may be element names or indices."""
    elements = _need(doc, "elements", where)
    if (not isinstance(elements, list) or not elements
            or not all(isinstance(x, str) for x in elements)):
        raise InvalidDocument(f"{where}.elements: expected a non-empty "
                              "list of names")
    index = {name: k for k, name in enumerate(elements)}
    if len(index) != len(elements):
        raise InvalidDocument(f"{where}.elements: duplicate names")

    def entry(v, pos):
        if isinstance(v, bool) or not isinstance(v, (int, str)):
            raise InvalidDocument(f"{where}.mul{pos}: expected a name or "
                                  f"index, got {v!r}")
        if isinstance(v, str):
            if v not in index:
                raise InvalidDocument(f"{where}.mul{pos}: unknown element "
                                      f"{v!r}")
            return index[v]
        if not 0 <= v < len(elements):
            raise InvalidDocument(f"{where}.mul{pos}: index {v} out of range")
        return v

    mul = _need(doc, "mul", where)
    if not isinstance(mul, list) or len(mul) != len(elements):
        raise InvalidDocument(f"{where}.mul: expected {len(elements)} rows")
    table = []
    for i, row in enumerate(mul):
        if not isinstance(row, list) or len(row) != len(elements):
            raise InvalidDocument(f"{where}.mul[{i}]: expected "
                                  f"{len(elements)} entries")
        table.append([entry(v, f"[{i}][{j}]") for j, v in enumerate(row)])

    generators = doc.get("generators")
    if generators is not None:
        if not isinstance(generators, list) or not generators:
            raise InvalidDocument(f"{where}.generators: expected a "
                                  "non-empty list of names")
        for g in generators:
            if g not in index:
                raise InvalidDocument(f"{where}.generators: unknown element "
                                      f"{g!r}")
    return FiniteInverseSemigroup(elements, table, generators)


def parse_amalgam(doc) -> Amalgam:
    """Build a validated amalgam from {name?, s1, s2, u, phi1, phi2}."""
    s1 = parse_semigroup(_need(doc, "s1", "document"), "s1")
    s2 = parse_semigroup(_need(doc, "s2", "document"), "s2")
    u = parse_semigroup(_need(doc, "u", "document"), "u")
    phi1 = _need(doc, "phi1", "document")
    phi2 = _need(doc, "phi2", "document")
    for key, phi in (("phi1", phi1), ("phi2", phi2)):
        if not isinstance(phi, dict):
            raise InvalidDocument(f"document.{key}: expected an object "
                                  "mapping U names to factor names")
    name = doc.get("name")
    try:
        return Amalgam(s1, s2, u, phi1, phi2, name=name)
    except InvalidDocument:
        raise
    except (ValueError, OpuntiaError) as exc:
        raise InvalidDocument(str(exc)) from exc


def loads_amalgam(text: str) -> Amalgam:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidDocument(f"not valid JSON: {exc}") from exc
    return parse_amalgam(doc)


def load_amalgam(path) -> Amalgam:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InvalidDocument(f"cannot read {path}: {exc}") from exc
    return loads_amalgam(text)


# -- writing ------------------------------------------------------------------


def semigroup_document(S: FiniteInverseSemigroup, name=None) -> dict:
    doc = {
        "elements": list(S.names),
        "mul": [[S.names[v] for v in row] for row in S.table],
        "generators": [S.names[g] for g in S.generators],
    }
    if name is not None:
        doc["name"] = name
    return doc


def amalgam_document(a: Amalgam) -> dict:
    doc = {
        "s1": semigroup_document(a.s1),
        "s2": semigroup_document(a.s2),
        "u": semigroup_document(a.u),
        "phi1": {a.u.names[x]: a.s1.names[a.phi1(x)] for x in range(a.u.n)},
        "phi2": {a.u.names[x]: a.s2.names[a.phi2(x)] for x in range(a.u.n)},
    }
    if a.name is not None:
        doc["name"] = a.name
    return doc


def dump_amalgam(a: Amalgam, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(amalgam_document(a), fh, indent=2, sort_keys=True)
        fh.write("\n")
