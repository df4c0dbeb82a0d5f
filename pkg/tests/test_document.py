import json
from fractions import Fraction as F
from pathlib import Path

import pytest

from catalgebra import fincat
from catalgebra.document import category_to_json, load_document, parse_document
from catalgebra.errors import BadLiteral, ParseError, SchemaError, UnknownRig
from catalgebra.fincat import validate_category, validate_dagger

DATA = Path(__file__).parent / "data"


def doc(**kw):
    base = {"rig": "rational", "category": {"builder": "indiscrete", "n": 2}}
    base.update(kw)
    return json.dumps(base)


def test_builder_document():
    d = parse_document(doc())
    assert d.category.arrow_count == 4 and d.rig.name == "rational"
    assert d.dagger is None and d.functional is None and d.elements == {}


@pytest.mark.parametrize("node,arrows", [
    ({"builder": "discrete", "n": 3}, 3),
    ({"builder": "chain", "n": 3}, 6),
    ({"builder": "cyclic_group", "n": 4}, 4),
    ({"builder": "symmetric_group", "n": 3}, 6),
    ({"builder": "divisor_poset", "n": 12}, 18),
    ({"builder": "boolean_lattice", "k": 2}, 9),
    ({"builder": "monoid", "table": [[0, 1], [1, 1]], "labels": ["e", "z"]}, 2),
    ({"builder": "poset", "n": 2, "leq": [[0, 0], [1, 1], [0, 1]]}, 3),
    ({"builder": "quiver", "vertices": 3, "edges": [[0, 1, "a"], [1, 2, "b"]]}, 6),
])
def test_all_builders(node, arrows):
    assert parse_document(json.dumps({"rig": "integer", "category": node})).category.arrow_count == arrows


def test_explicit_s3_document():
    d = load_document(DATA / "s3_explicit.json")
    assert len(d.raw["category"]["compose"]) == 36
    assert validate_category(d.category).ok
    assert validate_dagger(d.category, d.dagger).ok
    ref = fincat.symmetric_group(3)
    assert d.category.table == ref.table and d.category.arrow_labels == ref.arrow_labels
    assert d.functional.phi_hat == (1, 0, 0, 0, 0, 0)


def test_category_json_round_trip(categories):
    for cat in categories.values():
        back = parse_document(json.dumps({"rig": "rational", "category": category_to_json(cat)})).category
        assert back.same_as(cat) and back.arrow_labels == cat.arrow_labels


def test_identity_inference_without_labels():
    cat = {"objects": ["x"], "arrows": [{"label": "one", "dom": "x", "cod": "x"},
                                        {"label": "p", "dom": "x", "cod": "x"}],
           "compose": [{"left": "one", "right": "one", "result": "one"},
                       {"left": "one", "right": "p", "result": "p"},
                       {"left": "p", "right": "one", "result": "p"},
                       {"left": "p", "right": "p", "result": "p"}]}
    d = parse_document(json.dumps({"rig": "boolean", "category": cat}))
    assert d.category.identity == (0,)


def test_elements_and_functional_literals():
    d = parse_document(doc(elements={"a": ["1", "2/3", "-1", "0"], "b": {"c21": "5"}},
                           functional={"c11": "1/2", "c22": "1/2"}))
    assert d.elements["a"].coeffs == (1, F(2, 3), -1, 0)
    assert d.elements["b"].coeffs[d.category.arrow_index("c21")] == 5
    assert d.functional.phi_hat == (F(1, 2), 0, 0, F(1, 2))


def test_complex_and_tropical_literals():
    d = parse_document(json.dumps({"rig": "complex", "category": {"builder": "discrete", "n": 2},
                                   "elements": {"z": [[1, 2], [0.5, -1]]}}))
    assert d.elements["z"].coeffs == (1 + 2j, 0.5 - 1j)
    d = parse_document(json.dumps({"rig": "tropical", "category": {"builder": "discrete", "n": 2},
                                   "elements": {"w": [3, "inf"]}}))
    assert d.elements["w"].coeffs == (3.0, float("inf"))


def test_explicit_dagger_map():
    d = parse_document(doc(dagger={"map": {"c11": "c11", "c12": "c21", "c21": "c12", "c22": "c22"}}))
    assert validate_dagger(d.category, d.dagger).ok


def test_unknown_compose_label_has_path():
    raw = json.loads((DATA / "s3_explicit.json").read_text())
    raw["category"]["compose"][3]["left"] = "nope"
    with pytest.raises(SchemaError) as info:
        parse_document(json.dumps(raw))
    assert info.value.path == "category.compose[3].left"
    assert "category.compose[3].left" in str(info.value)


def test_missing_composite():
    raw = json.loads((DATA / "s3_explicit.json").read_text())
    del raw["category"]["compose"][5]
    with pytest.raises(SchemaError, match="missing composite"):
        parse_document(json.dumps(raw))


def test_non_composable_entry():
    cat = category_to_json(fincat.chain(2))
    cat["compose"].append({"left": "0->1", "right": "0->1", "result": "0->1"})
    with pytest.raises(SchemaError, match="not composable"):
        parse_document(json.dumps({"rig": "rational", "category": cat}))


@pytest.mark.parametrize("text,exc", [
    ("{not json", ParseError),
    ("[]", SchemaError),
    ('{"category": {}}', SchemaError),
    ('{"rig": "octonion", "category": {"builder": "discrete", "n": 1}}', UnknownRig),
    ('{"rig": "rational", "category": {"builder": "hypercube", "n": 1}}', SchemaError),
    ('{"rig": "rational", "category": {"builder": "discrete", "n": -1}}', SchemaError),
    ('{"rig": "rational", "category": {"builder": "monoid", "table": [[0, 1], [0, 0]]}}', SchemaError),
    ('{"rig": "rational", "category": {"builder": "chain", "n": 2}, "dagger": {"kind": "inverse"}}', SchemaError),
    ('{"rig": "rational", "category": {"builder": "discrete", "n": 1}, "elements": {"a": ["x"]}}', BadLiteral),
    ('{"rig": "rational", "category": {"builder": "discrete", "n": 1}, "elements": {"a": ["1", "2"]}}', SchemaError),
    ('{"rig": "rational", "category": {"builder": "discrete", "n": 1}, "functional": {"zz": "1"}}', SchemaError),
])
def test_malformed_documents(text, exc):
    with pytest.raises(exc):
        parse_document(text)


def test_parse_error_reports_position():
    with pytest.raises(ParseError, match="line 2"):
        parse_document('{\n  "rig": rational}')
