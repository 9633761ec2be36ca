"""JSON schemas: parsing of groups, classes, forms, descriptors, requests.

Serialization lives on the domain objects (``to_payload``); this module owns
the inverse direction plus request-document validation for the CLI.  All
errors are ValueError with a message naming the offending field.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .brauer import (
    CSA,
    RATIONALS,
    AbstractGroup,
    BrauerClass,
    BrauerGroup,
    RationalClass,
)
from .quadforms import FormShadow, QuadraticForm
from .varieties import (
    Grassmannian,
    Involution,
    Product,
    Quadric,
    SeveriBrauer,
    VarietyDescriptor,
)


def _need(payload: Any, key: str, context: str):
    if not isinstance(payload, dict) or key not in payload:
        raise ValueError(f"{context}: missing field {key!r}")
    return payload[key]


def parse_group(payload: Any) -> BrauerGroup:
    kind = _need(payload, "kind", "group")
    if kind == "rational":
        return RATIONALS
    if kind != "abstract":
        raise ValueError(f"group: unknown kind {kind!r}")
    orders = _need(payload, "orders", "group")
    if not isinstance(orders, list) or not all(isinstance(n, int) for n in orders):
        raise ValueError("group: orders must be a list of integers")
    oracle = []
    for entry in payload.get("index_oracle", []):
        coords = _need(entry, "coords", "group.index_oracle")
        idx = _need(entry, "index", "group.index_oracle")
        oracle.append((tuple(coords), idx))
    return AbstractGroup(tuple(orders), tuple(oracle))


def parse_class(payload: Any, group: BrauerGroup) -> BrauerClass:
    if group.kind == "abstract":
        coords = _need(payload, "coords", "class")
        if not isinstance(coords, list) or not all(isinstance(c, int) for c in coords):
            raise ValueError("class: coords must be a list of integers")
        return group.element(coords)
    invs = _need(payload, "invariants", "class")
    parsed = []
    for item in invs:
        place = _need(item, "place", "class.invariants")
        inv = _need(item, "inv", "class.invariants")
        parsed.append((place, Fraction(inv)))
    return RationalClass(tuple(parsed))


def parse_csa(payload: Any, group: BrauerGroup) -> CSA:
    degree = _need(payload, "degree", "algebra")
    if not isinstance(degree, int):
        raise ValueError("algebra: degree must be an integer")
    cls = parse_class(_need(payload, "class", "algebra"), group)
    return CSA(cls, degree)


def parse_form(payload: Any) -> QuadraticForm:
    if not isinstance(payload, list) or not payload:
        raise ValueError("form: expected a nonempty array of rational strings")
    return QuadraticForm(tuple(Fraction(str(a)) for a in payload))


def parse_shadow(payload: Any, group: BrauerGroup) -> FormShadow:
    dim = _need(payload, "dim", "shadow")
    cls = parse_class(_need(payload, "clifford_class", "shadow"), group)
    return FormShadow(dim, cls, bool(payload.get("i3_zero", False)))


def parse_descriptor(payload: Any, group: BrauerGroup) -> VarietyDescriptor:
    family = _need(payload, "family", "variety")
    if family == "severi-brauer":
        return SeveriBrauer(parse_csa(_need(payload, "alg", "variety"), group))
    if family == "grassmannian":
        d = _need(payload, "d", "variety")
        return Grassmannian(d, parse_csa(_need(payload, "alg", "variety"), group))
    if family == "quadric":
        if "form" in payload:
            if group.kind != "rational":
                raise ValueError(
                    "variety: concrete quadratic forms require the rational group model"
                )
            return Quadric(parse_form(payload["form"]))
        if "shadow" in payload:
            return Quadric(parse_shadow(payload["shadow"], group))
        raise ValueError("variety: quadric needs a 'form' or a 'shadow'")
    if family == "involution":
        return Involution(
            _need(payload, "deg", "variety"),
            parse_class(_need(payload, "alg_class", "variety"), group),
            parse_class(_need(payload, "cplus", "variety"), group),
            parse_class(_need(payload, "cminus", "variety"), group),
        )
    if family == "product":
        children = _need(payload, "children", "variety")
        if not isinstance(children, list):
            raise ValueError("variety: product children must be an array")
        return Product(tuple(parse_descriptor(c, group) for c in children))
    raise ValueError(f"variety: unknown family {family!r}")


def descriptor_payload(v: VarietyDescriptor) -> dict:
    if isinstance(v, SeveriBrauer):
        return {"family": v.family, "alg": v.alg.to_payload()}
    if isinstance(v, Grassmannian):
        return {"family": v.family, "d": v.d, "alg": v.alg.to_payload()}
    if isinstance(v, Quadric):
        if isinstance(v.form, QuadraticForm):
            return {"family": v.family, "form": v.form.to_payload()}
        return {
            "family": v.family,
            "shadow": {
                "dim": v.form.dim,
                "clifford_class": v.form.clifford_class.to_payload(),
                "i3_zero": v.form.i3_zero,
            },
        }
    if isinstance(v, Involution):
        return {
            "family": v.family,
            "deg": v.deg,
            "alg_class": v.alg_class.to_payload(),
            "cplus": v.cplus.to_payload(),
            "cminus": v.cminus.to_payload(),
        }
    if isinstance(v, Product):
        return {
            "family": v.family,
            "children": [descriptor_payload(c) for c in v.children],
        }
    raise ValueError(f"unknown descriptor {v!r}")


def parse_measure_request(doc: Any) -> tuple[BrauerGroup, VarietyDescriptor]:
    group = parse_group(_need(doc, "group", "request"))
    return group, parse_descriptor(_need(doc, "variety", "request"), group)


def parse_pair_request(
    doc: Any,
) -> tuple[BrauerGroup, VarietyDescriptor, VarietyDescriptor]:
    group = parse_group(_need(doc, "group", "request"))
    x = parse_descriptor(_need(doc, "x", "request"), group)
    y = parse_descriptor(_need(doc, "y", "request"), group)
    return group, x, y
