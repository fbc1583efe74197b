"""Flat JSON files for families and morphisms.

Family::

    {"universe": ["x", "y"], "n": 3, "kind": "covering",
     "membership": [[1.0, 0.5, 0.25], [0.0, 1.0, 1.0]]}

Morphism::

    {"f": {"x": "y0", "y": "y0"}, "rho": [0, 0, 1]}

Floats are written with ``repr`` precision (17 significant digits), so a
write followed by a read reproduces every entry exactly.
"""
from __future__ import annotations

import json

from jsonschema import Draft202012Validator

from .category import KINDS, FuzzyFamily, Morphism
from .exceptions import ParseError

FAMILY_SCHEMA = {
    "type": "object",
    "required": ["universe", "n", "kind", "membership"],
    "properties": {
        "universe": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "n": {"type": "integer", "minimum": 2},
        "kind": {"enum": list(KINDS)},
        "membership": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "number"}},
        },
    },
}

MORPHISM_SCHEMA = {
    "type": "object",
    "required": ["f", "rho"],
    "properties": {
        "f": {"type": "object", "additionalProperties": {"type": "string"}},
        "rho": {"type": "array", "items": {"type": "integer", "minimum": 0}},
    },
}


def _check(doc, schema, what):
    errors = sorted(Draft202012Validator(schema).iter_errors(doc), key=lambda e: list(e.path))
    if errors:
        e = errors[0]
        path = ".".join(str(p) for p in e.path) or "<root>"
        raise ParseError(f"invalid {what} document at {path}: {e.message}")


def family_from_dict(doc) -> FuzzyFamily:
    _check(doc, FAMILY_SCHEMA, "family")
    rows = doc["membership"]
    n = doc["n"]
    if any(len(r) != n for r in rows):
        raise ParseError(f"every membership row must have n={n} entries")
    if len(rows) != len(doc["universe"]):
        raise ParseError("membership needs one row per universe element")
    try:
        return FuzzyFamily(doc["universe"], rows, doc["kind"])
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def family_to_dict(fam: FuzzyFamily) -> dict:
    return {
        "universe": list(fam.universe),
        "n": fam.n,
        "kind": fam.kind,
        "membership": [[float(v) for v in row] for row in fam.membership],
    }


def morphism_from_dict(doc) -> Morphism:
    _check(doc, MORPHISM_SCHEMA, "morphism")
    return Morphism(doc["f"], doc["rho"])


def morphism_to_dict(m: Morphism, src: FuzzyFamily | None = None) -> dict:
    table = m.table
    order = src.universe if src is not None else sorted(table)
    return {"f": {x: table[x] for x in order}, "rho": list(m.rho)}


def _read(path):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def load_family(path) -> FuzzyFamily:
    return family_from_dict(_read(path))


def dump_family(fam: FuzzyFamily, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(family_to_dict(fam), fh, indent=1)
        fh.write("\n")


def load_morphism(path) -> Morphism:
    return morphism_from_dict(_read(path))
