"""JSON instance files, basis files and report helpers."""

from __future__ import annotations

import hashlib
import json
import re
from fractions import Fraction

from .algebra import AlgebraElement, render_element
from .category import AcyclicCategory, build_category
from .groebner import is_quadratic, normal_monomials
from .errors import LexShellError, ParseError, ValidationError
from .labellings import EdgeLabelling
from .poset import Poset, build_poset


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _labels(found: dict, total: int, where: str):
    if not found:
        return None
    if len(found) != total:
        raise ParseError(f"{where}: labels must be given for all entries or none")
    return EdgeLabelling(found)


def parse_instance(text: str):
    """Parse a JSON instance; returns ``(instance, labelling or None)``."""
    doc = _load_json(text)
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    kind = doc.get("kind")
    try:
        if kind == "poset":
            return _parse_poset(doc)
        if kind == "category":
            return _parse_category(doc)
    except (KeyError, TypeError, IndexError) as exc:
        raise ParseError(f"malformed {kind} instance: {exc!r}") from None
    raise ParseError(f"field 'kind': expected 'poset' or 'category', got {kind!r}")


def _parse_poset(doc):
    elements = doc["elements"]
    if not isinstance(elements, list):
        raise ParseError("field 'elements' must be a list")
    covers, found = [], {}
    for i, row in enumerate(doc.get("covers", [])):
        if not isinstance(row, list) or len(row) not in (2, 3):
            raise ParseError(f"covers[{i}]: expected [src, dst] or [src, dst, label]")
        covers.append((row[0], row[1]))
        if len(row) == 3 and row[2] is not None:
            if isinstance(row[2], bool) or not isinstance(row[2], int):
                raise ParseError(f"covers[{i}]: label must be an integer")
            found[(row[0], row[1])] = row[2]
    p = build_poset(elements, covers)
    lab = _labels(found, len(covers), "covers")
    if lab is not None:
        dropped = set(lab) - set(p.covers)
        if dropped:
            raise ValidationError(f"labelled pairs {sorted(dropped)!r} are not cover relations")
    return p, lab


def _parse_category(doc):
    objects = doc["objects"]
    gens, found = [], {}
    for i, g in enumerate(doc.get("generators", [])):
        if not isinstance(g, dict) or not {"id", "dom", "cod"} <= set(g):
            raise ParseError(f"generators[{i}]: expected an object with id, dom, cod")
        gens.append((str(g["id"]), g["dom"], g["cod"]))
        if g.get("label") is not None:
            if isinstance(g["label"], bool) or not isinstance(g["label"], int):
                raise ParseError(f"generators[{i}]: label must be an integer")
            found[str(g["id"])] = g["label"]
    relations = []
    for i, rel in enumerate(doc.get("relations", [])):
        if not isinstance(rel, list) or len(rel) != 2:
            raise ParseError(f"relations[{i}]: expected a pair of generator-id lists")
        relations.append((list(rel[0]), list(rel[1])))
    c = build_category(objects, gens, relations)
    return c, _labels(found, len(gens), "generators")


def serialize_instance(inst, labels=None) -> dict:
    if isinstance(inst, Poset):
        covers = []
        for x, y in inst.covers:
            row = [x, y]
            if labels is not None:
                row.append(labels[(x, y)])
            covers.append(row)
        return {"kind": "poset", "elements": list(inst.elements), "covers": covers}
    if isinstance(inst, AcyclicCategory):
        gens = []
        for g in inst.generators:
            rec = {"id": g.id, "dom": g.dom, "cod": g.cod}
            if labels is not None:
                rec["label"] = labels[g.id]
            gens.append(rec)
        rels = [[list(p.edges), list(q.edges)] for p, q in inst.relations]
        return {"kind": "category", "objects": list(inst.objects), "generators": gens, "relations": rels}
    raise TypeError(f"cannot serialize {type(inst).__name__}")


def dumps_instance(inst, labels=None) -> str:
    return json.dumps(serialize_instance(inst, labels), indent=2)


def digest(inst, labels=None) -> str:
    canon = json.dumps(serialize_instance(inst, labels), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


_SPLIT = re.compile(r"\s+([+-])\s+")


def parse_element(text: str, inst) -> AlgebraElement:
    """Parse ``"+a-d-g - a-b-e-g"``; a term may carry a coefficient, ``"3/2 a-b"``."""
    text = text.strip()
    sign = 1
    if text[:1] in "+-":
        sign = -1 if text[0] == "-" else 1
        text = text[1:].strip()
    pieces = _SPLIT.split(text)
    terms: dict = {}
    signs = [sign] + [(-1 if s == "-" else 1) for s in pieces[1::2]]
    for s, term in zip(signs, pieces[0::2]):
        bits = term.split()
        if len(bits) == 2:
            coeff, body = Fraction(bits[0]), bits[1]
        elif len(bits) == 1:
            coeff, body = Fraction(1), bits[0]
        else:
            raise ParseError(f"cannot read term {term!r}")
        try:
            path = inst.parse_path(body)
        except (LexShellError, ValueError) as exc:
            raise ParseError(f"term {term!r}: {exc}") from None
        terms[path] = terms.get(path, 0) + s * coeff
    return AlgebraElement(terms, inst)


def parse_basis(text: str, inst) -> list:
    """Basis file: ``{"basis": [...]}`` or a bare list of element strings."""
    doc = _load_json(text)
    items = doc.get("basis") if isinstance(doc, dict) else doc
    if not isinstance(items, list):
        raise ParseError("expected a list of elements or an object with a 'basis' list")
    out = []
    for i, item in enumerate(items):
        if isinstance(item, str):
            out.append(parse_element(item, inst))
        elif isinstance(item, list):
            terms = {}
            for coeff, body in item:
                terms[inst.parse_path(body)] = Fraction(coeff)
            out.append(AlgebraElement(terms, inst))
        else:
            raise ParseError(f"basis[{i}]: expected a string or a list of [coeff, path]")
    return out


def basis_document(inst, G) -> dict:
    """Serializable summary of a Groebner basis."""
    doc = {
        "elements": [render_element(g, G.order) for g in G.elements],
        "initial_terms": [inst.render(m) for m in G.initial_terms],
        "reduced": G.reduced,
        "quadratic": is_quadratic(G),
        "normal_monomials": len(normal_monomials(inst, G)),
    }
    if isinstance(inst, AcyclicCategory):
        doc["note"] = "category monomials are generator ids in diagrammatic (traversal) order"
    return doc
