import json

import pytest

from colorsga.colored import build_colored_explicit, compare_algebras
from colorsga.errors import SchemaError
from colorsga.fock import build_fock_rep
from colorsga.galilei import P
from colorsga.serialization import (
    algebra_from_dict,
    algebra_to_dict,
    dumps_algebra,
    export_json,
    import_json,
    loads_algebra,
    matrix_triplets,
)


@pytest.mark.parametrize("two_ell,central", [(1, False), (2, False), (1, True), (3, True)])
def test_round_trip_is_identity(two_ell, central):
    a = build_colored_explicit(two_ell, central=central)
    text = dumps_algebra(a)
    b = loads_algebra(text)
    assert b.basis == a.basis
    assert b.degrees == a.degrees
    assert (b.name, b.two_ell, b.central) == (a.name, a.two_ell, a.central)
    assert compare_algebras(a, b).ok
    # canonical text re-emits byte for byte
    assert dumps_algebra(b) == text


def test_emission_is_deterministic_and_newline_terminated():
    a = build_colored_explicit(2)
    one, two = dumps_algebra(a), dumps_algebra(build_colored_explicit(2))
    assert one == two
    assert one.endswith("}\n") and not one.endswith("\n\n")


def test_file_round_trip(tmp_path):
    a = build_colored_explicit(1, central=True)
    path = tmp_path / "alg.json"
    export_json(a, str(path))
    b = import_json(str(path))
    assert compare_algebras(a, b).ok
    assert path.read_text(encoding="utf-8") == dumps_algebra(a)


def _doc(two_ell=1, central=False):
    return algebra_to_dict(build_colored_explicit(two_ell, central=central))


def test_rejects_out_of_range_degree():
    doc = _doc()
    doc["basis"][0]["degree"] = "02"
    with pytest.raises(SchemaError, match=r"basis\[0\]\.degree"):
        algebra_from_dict(doc)


def test_rejects_non_canonical_rational():
    doc = _doc()
    doc["table"][0]["value"][0]["coeff"] = "2/4"
    with pytest.raises(SchemaError, match="lowest terms"):
        algebra_from_dict(doc)


def test_rejects_integer_coeff_without_denominator():
    doc = _doc()
    doc["table"][0]["value"][0]["coeff"] = "2"
    with pytest.raises(SchemaError, match=r"table\[0\]\.value\[0\]\.coeff"):
        algebra_from_dict(doc)


def test_rejects_unknown_id_in_table():
    doc = _doc()
    doc["table"][0]["left"] = "Zz[7]"
    with pytest.raises(SchemaError, match="unknown generator"):
        algebra_from_dict(doc)


def test_rejects_malformed_id():
    doc = _doc()
    doc["basis"][0]["id"] = "P[1,]"
    with pytest.raises(SchemaError, match=r"basis\[0\]\.id"):
        algebra_from_dict(doc)


def test_rejects_duplicate_basis_entry():
    doc = _doc()
    doc["basis"].append(dict(doc["basis"][0]))
    with pytest.raises(SchemaError, match="duplicate generator"):
        algebra_from_dict(doc)


def test_rejects_duplicate_table_pair():
    doc = _doc()
    doc["table"].append(dict(doc["table"][0]))
    with pytest.raises(SchemaError, match="duplicate pair"):
        algebra_from_dict(doc)


def test_rejects_missing_and_unknown_keys():
    doc = _doc()
    del doc["central"]
    with pytest.raises(SchemaError, match="missing keys: central"):
        algebra_from_dict(doc)
    doc = _doc()
    doc["comment"] = "hello"
    with pytest.raises(SchemaError, match="unknown keys: comment"):
        algebra_from_dict(doc)


def test_rejects_boolean_two_ell_and_zero_term():
    doc = _doc()
    doc["two_ell"] = True
    with pytest.raises(SchemaError, match="two_ell"):
        algebra_from_dict(doc)
    doc = _doc()
    doc["table"][0]["value"][0]["coeff"] = "0/1"
    with pytest.raises(SchemaError, match="zero terms"):
        algebra_from_dict(doc)


def test_rejects_invalid_json_text():
    with pytest.raises(SchemaError, match="not valid JSON"):
        loads_algebra("{not json")


def test_document_key_order_is_stable():
    text = dumps_algebra(build_colored_explicit(1))
    doc = json.loads(text)
    assert list(doc) == ["two_ell", "central", "basis", "table"]
    assert list(doc["basis"][0]) == ["id", "degree"]
    assert list(doc["table"][0]) == ["left", "right", "value"]


def test_matrix_triplets_sorted_exact():
    rep = build_fock_rep(1, 4)
    trips = matrix_triplets(rep.matrix(P(0)))
    assert trips == sorted(trips, key=lambda t: (t["row"], t["col"]))
    assert all(set(t) == {"row", "col", "value"} for t in trips)
    # entries are exact strings with explicit denominators
    assert all("/" in t["value"] for t in trips)
