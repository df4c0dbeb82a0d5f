"""JSON documents describing a category, a rig and optional data on it.

Example::

    {
      "rig": "rational",
      "category": {"builder": "indiscrete", "n": 2},
      "dagger": {"kind": "reverse"},
      "elements": {"a": ["1", "0", "1/2", "0"]},
      "functional": {"c11": "1/2", "c22": "1/2"}
    }

An explicit category lists ``objects``, ``arrows`` (``label``, ``dom``,
``cod``) and ``compose`` entries ``{"left": g, "right": f, "result": h}``
meaning ``g o f = h``, one for every composable pair.  The identity of an
object is the arrow carrying the object's label, or the entry in an optional
``identities`` map, or else the unique arrow satisfying the unit laws.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional

from . import fincat
from .algebra import AlgebraElement
from .errors import CatAlgebraError, ParseError, SchemaError
from .fincat import NONE, Dagger, FinCategory
from .rigs import RigDescriptor, builtin_rig, RIG_NAMES
from .states import LinearFunctional

BUILDERS = ("discrete", "indiscrete", "chain", "cyclic_group", "symmetric_group", "monoid",
            "poset", "divisor_poset", "boolean_lattice", "quiver")


@dataclass
class CatSpecDocument:
    rig: RigDescriptor
    category: FinCategory
    dagger: Optional[Dagger] = None
    elements: dict = field(default_factory=dict)
    functional: Optional[LinearFunctional] = None
    raw: Any = None


def parse_document(text: str) -> CatSpecDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise SchemaError("document must be a JSON object", "$")
    if "rig" not in raw:
        raise SchemaError("missing field 'rig'", "$")
    if raw["rig"] not in RIG_NAMES:
        from .errors import UnknownRig
        raise UnknownRig(f"unknown rig {raw['rig']!r}; expected one of {', '.join(RIG_NAMES)}", "rig")
    rig = builtin_rig(raw["rig"])
    if "category" not in raw:
        raise SchemaError("missing field 'category'", "$")
    cat = _parse_category(raw["category"], "category")
    doc = CatSpecDocument(rig, cat, raw=raw)
    if raw.get("dagger") is not None:
        doc.dagger = _parse_dagger(raw["dagger"], cat, "dagger")
    for name, coeffs in _obj(raw.get("elements", {}), "elements").items():
        doc.elements[name] = _parse_element(coeffs, cat, rig, f"elements.{name}")
    if raw.get("functional") is not None:
        values = _parse_element(raw["functional"], cat, rig, "functional")
        try:
            doc.functional = LinearFunctional(cat, rig, values.coeffs)
        except CatAlgebraError as exc:
            raise SchemaError(str(exc), "functional") from None
    return doc


def load_document(path: str) -> CatSpecDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())


def _obj(x, path) -> dict:
    if not isinstance(x, dict):
        raise SchemaError("expected an object", path)
    return x


def _list(x, path) -> list:
    if not isinstance(x, list):
        raise SchemaError("expected a list", path)
    return x


def _nat(x, path) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise SchemaError(f"expected a natural number, got {x!r}", path)
    return x


def _parse_category(node, path) -> FinCategory:
    node = _obj(node, path)
    if "builder" in node:
        return _build(node, path)
    for key in ("objects", "arrows", "compose"):
        if key not in node:
            raise SchemaError(f"missing field {key!r} (or give a 'builder')", path)
    objects = [str(o) for o in _list(node["objects"], f"{path}.objects")]
    if len(set(objects)) != len(objects):
        raise SchemaError("object labels must be unique", f"{path}.objects")
    obj_index = {o: i for i, o in enumerate(objects)}
    arrows = []
    for k, a in enumerate(_list(node["arrows"], f"{path}.arrows")):
        p = f"{path}.arrows[{k}]"
        a = _obj(a, p)
        for key in ("label", "dom", "cod"):
            if key not in a:
                raise SchemaError(f"missing field {key!r}", p)
        for key in ("dom", "cod"):
            if str(a[key]) not in obj_index:
                raise SchemaError(f"unknown object {a[key]!r}", f"{p}.{key}")
        arrows.append((str(a["label"]), obj_index[str(a["dom"])], obj_index[str(a["cod"])]))
    labels = [a[0] for a in arrows]
    if len(set(labels)) != len(labels):
        raise SchemaError("arrow labels must be unique", f"{path}.arrows")
    index = {lab: i for i, lab in enumerate(labels)}

    compose = {}
    for k, e in enumerate(_list(node["compose"], f"{path}.compose")):
        p = f"{path}.compose[{k}]"
        e = _obj(e, p)
        ids = []
        for key in ("left", "right", "result"):
            if key not in e:
                raise SchemaError(f"missing field {key!r}", p)
            if str(e[key]) not in index:
                raise SchemaError(f"unknown arrow {e[key]!r}", f"{p}.{key}")
            ids.append(index[str(e[key])])
        g, f, h = ids
        if arrows[g][1] != arrows[f][2]:
            raise SchemaError(f"{labels[g]} o {labels[f]} is not composable", p)
        if (g, f) in compose:
            raise SchemaError(f"duplicate entry for {labels[g]} o {labels[f]}", p)
        compose[g, f] = h
    for g in range(len(arrows)):
        for f in range(len(arrows)):
            if arrows[g][1] == arrows[f][2] and (g, f) not in compose:
                raise SchemaError(f"missing composite {labels[g]} o {labels[f]}", f"{path}.compose")

    identities = []
    given = _obj(node.get("identities", {}), f"{path}.identities")
    for x, o in enumerate(objects):
        if o in given:
            if str(given[o]) not in index:
                raise SchemaError(f"unknown arrow {given[o]!r}", f"{path}.identities.{o}")
            identities.append(index[str(given[o])])
        elif o in index and arrows[index[o]][1] == x == arrows[index[o]][2]:
            identities.append(index[o])
        else:
            identities.append(_infer_identity(x, arrows, compose, objects, path))
    name = str(node.get("name", ""))
    return fincat.from_composition(objects, arrows, compose, identities, name=name)


def _infer_identity(x, arrows, compose, objects, path):
    m = len(arrows)
    for e in range(m):
        if arrows[e][1] != x or arrows[e][2] != x:
            continue
        if all(compose.get((e, c)) == c for c in range(m) if arrows[c][2] == x) and \
                all(compose.get((c, e)) == c for c in range(m) if arrows[c][1] == x):
            return e
    raise SchemaError(f"cannot determine the identity of object {objects[x]!r}", f"{path}.identities")


def _build(node, path) -> FinCategory:
    kind = node["builder"]
    try:
        if kind in ("discrete", "indiscrete", "chain", "cyclic_group", "symmetric_group"):
            n = _nat(node.get("n"), f"{path}.n")
            return {"discrete": fincat.discrete, "indiscrete": fincat.indiscrete,
                    "chain": fincat.chain, "cyclic_group": fincat.cyclic_group,
                    "symmetric_group": fincat.symmetric_group}[kind](n)
        if kind == "divisor_poset":
            return fincat.divisor_poset(_nat(node.get("n"), f"{path}.n"))
        if kind == "boolean_lattice":
            return fincat.boolean_lattice(_nat(node.get("k"), f"{path}.k"))
        if kind == "monoid":
            table = _list(node.get("table"), f"{path}.table")
            return fincat.monoid_from_table(table, _nat(node.get("unit", 0), f"{path}.unit"),
                                            node.get("labels"))
        if kind == "poset":
            n = _nat(node.get("n"), f"{path}.n")
            leq = [tuple(p) for p in _list(node.get("leq"), f"{path}.leq")]
            return fincat.poset_from_relation(n, leq, node.get("labels"))
        if kind == "quiver":
            v = _nat(node.get("vertices"), f"{path}.vertices")
            edges = [tuple(e) for e in _list(node.get("edges"), f"{path}.edges")]
            return fincat.free_on_acyclic_quiver(v, edges, node.get("labels"), name="quiver")
    except SchemaError:
        raise
    except CatAlgebraError as exc:
        raise SchemaError(f"{type(exc).__name__}: {exc}", path) from None
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"bad builder parameters: {exc}", path) from None
    raise SchemaError(f"unknown builder {kind!r}; expected one of {', '.join(BUILDERS)}", f"{path}.builder")


def _parse_dagger(node, cat, path) -> Dagger:
    node = _obj(node, path)
    if "kind" in node:
        try:
            return fincat.canonical_dagger(cat, node["kind"])
        except (CatAlgebraError, ValueError) as exc:
            raise SchemaError(f"{type(exc).__name__}: {exc}", f"{path}.kind") from None
    if "map" in node:
        mapping = _obj(node["map"], f"{path}.map")
        out = []
        for c, lab in enumerate(cat.arrow_labels):
            if lab not in mapping:
                raise SchemaError(f"no image for arrow {lab!r}", f"{path}.map")
            target = str(mapping[lab])
            if target not in cat.arrow_labels:
                raise SchemaError(f"unknown arrow {target!r}", f"{path}.map.{lab}")
            out.append(cat.arrow_labels.index(target))
        return Dagger(cat, tuple(out))
    raise SchemaError("expected 'kind' or 'map'", path)


def _parse_element(node, cat, rig, path) -> AlgebraElement:
    if isinstance(node, list):
        if len(node) != cat.arrow_count:
            raise SchemaError(f"expected {cat.arrow_count} coefficients, got {len(node)}", path)
        return AlgebraElement(cat, rig, (rig.parse(x, f"{path}[{k}]") for k, x in enumerate(node)))
    if isinstance(node, dict):
        coeffs = [rig.zero] * cat.arrow_count
        for lab, lit in node.items():
            if lab not in cat.arrow_labels:
                raise SchemaError(f"unknown arrow {lab!r}", path)
            coeffs[cat.arrow_labels.index(lab)] = rig.parse(lit, f"{path}.{lab}")
        return AlgebraElement(cat, rig, coeffs)
    raise SchemaError("expected a coefficient list or an arrow-label map", path)


def category_to_json(cat: FinCategory) -> dict:
    """Explicit (builder-free) JSON form of a category."""
    lab = cat.arrow_labels
    return {
        "objects": list(cat.object_labels),
        "arrows": [{"label": lab[c], "dom": cat.object_labels[cat.dom[c]],
                    "cod": cat.object_labels[cat.cod[c]]} for c in cat.arrows],
        "identities": {cat.object_labels[x]: lab[cat.identity[x]] for x in cat.objects},
        "compose": [{"left": lab[g], "right": lab[f], "result": lab[cat.table[g][f]]}
                    for g in cat.arrows for f in cat.arrows if cat.table[g][f] != NONE],
    }
