"""JSON exchange format for structure-constant tables and Fock matrices.

The document layout is fixed and minimal: the half-integer weight (as the
integer ``two_ell``), the central flag, the graded basis, and the full
bracket table with exact rational coefficients.  Emission is deterministic
byte for byte: basis order is the algebra's canonical order, table rows
follow :meth:`ColorAlgebra.table_items`, coefficients always print with an
explicit denominator, and the serializer appends a single trailing newline.

Import is strict.  Anything outside the schema -- unknown keys, a degree
string that is not one of ``00 01 10 11``, a coefficient not in lowest
terms, a table row naming an id missing from the basis -- raises
:class:`SchemaError` with a path to the offending field rather than
round-tripping something subtly different from what was written.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List, Tuple

from .algebra import ColorAlgebra, GeneratorId, LinComb, parse_generator
from .errors import SchemaError
from .grading import DEG, Degree
from .sqrtfield import format_fraction, parse_fraction

__all__ = [
    "algebra_to_dict",
    "algebra_from_dict",
    "dumps_algebra",
    "loads_algebra",
    "export_json",
    "import_json",
    "matrix_triplets",
]


def algebra_to_dict(alg: ColorAlgebra) -> Dict[str, Any]:
    """Schema document for ``alg``; key order matches the written layout."""
    basis = [{"id": str(g), "degree": str(alg.degree(g))} for g in alg.basis]
    table = []
    for (x, y), value in alg.table_items():
        table.append(
            {
                "left": str(x),
                "right": str(y),
                "value": [
                    {"id": str(g), "coeff": format_fraction(c)} for g, c in value
                ],
            }
        )
    return {
        "two_ell": alg.two_ell,
        "central": alg.central,
        "basis": basis,
        "table": table,
    }


def _expect(cond: bool, where: str, what: str) -> None:
    if not cond:
        raise SchemaError(f"{where}: {what}")


def _expect_keys(obj: Any, where: str, keys: Tuple[str, ...]) -> None:
    _expect(isinstance(obj, dict), where, "expected an object")
    missing = [k for k in keys if k not in obj]
    _expect(not missing, where, f"missing keys: {', '.join(missing)}")
    extra = [k for k in obj if k not in keys]
    _expect(not extra, where, f"unknown keys: {', '.join(sorted(extra))}")


def _parse_id(text: Any, where: str) -> GeneratorId:
    _expect(isinstance(text, str), where, "id must be a string")
    try:
        return parse_generator(text)
    except ValueError as exc:
        raise SchemaError(f"{where}: {exc}") from None


def _parse_degree_strict(text: Any, where: str) -> Degree:
    # only the two-character form is legal on the wire
    _expect(isinstance(text, str), where, "degree must be a string")
    try:
        return DEG[text]
    except KeyError:
        raise SchemaError(
            f"{where}: degree must be one of 00 01 10 11, got {text!r}"
        ) from None


def _parse_coeff(text: Any, where: str) -> Fraction:
    _expect(isinstance(text, str), where, "coeff must be a string")
    try:
        return parse_fraction(text)
    except SchemaError as exc:
        raise SchemaError(f"{where}: {exc}") from None


def algebra_from_dict(doc: Any) -> ColorAlgebra:
    """Rebuild an algebra from a schema document, validating every field.

    The document does not carry a display name; the result is named by its
    parameters the same way the explicit constructor names its output, so a
    build/export/import cycle compares equal in every observable.
    """
    _expect_keys(doc, "document", ("two_ell", "central", "basis", "table"))

    two_ell = doc["two_ell"]
    _expect(
        isinstance(two_ell, int) and not isinstance(two_ell, bool) and two_ell > 0,
        "two_ell",
        f"expected a positive integer, got {two_ell!r}",
    )
    central = doc["central"]
    _expect(isinstance(central, bool), "central", f"expected a boolean, got {central!r}")

    raw_basis = doc["basis"]
    _expect(isinstance(raw_basis, list) and raw_basis, "basis", "expected a non-empty array")
    basis: List[GeneratorId] = []
    degrees: Dict[GeneratorId, Degree] = {}
    for i, row in enumerate(raw_basis):
        where = f"basis[{i}]"
        _expect_keys(row, where, ("id", "degree"))
        g = _parse_id(row["id"], f"{where}.id")
        _expect(g not in degrees, f"{where}.id", f"duplicate generator {g}")
        basis.append(g)
        degrees[g] = _parse_degree_strict(row["degree"], f"{where}.degree")

    raw_table = doc["table"]
    _expect(isinstance(raw_table, list), "table", "expected an array")
    entries: List[Tuple[GeneratorId, GeneratorId, LinComb]] = []
    seen: set = set()
    for i, row in enumerate(raw_table):
        where = f"table[{i}]"
        _expect_keys(row, where, ("left", "right", "value"))
        x = _parse_id(row["left"], f"{where}.left")
        y = _parse_id(row["right"], f"{where}.right")
        for side, g in (("left", x), ("right", y)):
            _expect(g in degrees, f"{where}.{side}", f"unknown generator {g}")
        _expect((x, y) not in seen, where, f"duplicate pair ({x}, {y})")
        seen.add((x, y))
        raw_value = row["value"]
        _expect(isinstance(raw_value, list), f"{where}.value", "expected an array")
        total = LinComb()
        for j, term in enumerate(raw_value):
            tw = f"{where}.value[{j}]"
            _expect_keys(term, tw, ("id", "coeff"))
            g = _parse_id(term["id"], f"{tw}.id")
            _expect(g in degrees, f"{tw}.id", f"unknown generator {g}")
            c = _parse_coeff(term["coeff"], f"{tw}.coeff")
            _expect(c != 0, f"{tw}.coeff", "zero terms must be omitted")
            _expect(total.coeff(g) == 0, f"{tw}.id", f"repeated generator {g}")
            total = total + LinComb({g: c})
        entries.append((x, y, total))

    L = two_ell
    name = f"colored-central[{L}/2]" if central else f"colored[{L}/2]"
    try:
        return ColorAlgebra(
            name=name,
            two_ell=two_ell,
            basis=basis,
            degrees=degrees,
            entries=entries,
            central=central,
        )
    except ValueError as exc:
        raise SchemaError(f"table: {exc}") from None


def dumps_algebra(alg: ColorAlgebra) -> str:
    """Canonical text form: two-space indent, schema key order, one final newline."""
    return json.dumps(algebra_to_dict(alg), indent=2) + "\n"


def loads_algebra(text: str) -> ColorAlgebra:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from None
    return algebra_from_dict(doc)


def export_json(alg: ColorAlgebra, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fp:
        fp.write(dumps_algebra(alg))


def import_json(path: str) -> ColorAlgebra:
    with open(path, "r", encoding="utf-8") as fp:
        return loads_algebra(fp.read())


def matrix_triplets(mat) -> List[Dict[str, Any]]:
    """Sparse triplets for an exact matrix, sorted by (row, col).

    Values are the exact field elements in their canonical string form, so
    the triplet list is stable text and safe to diff.
    """
    out = []
    for (r, c) in sorted(mat.entries):
        out.append({"row": r, "col": c, "value": str(mat.entries[(r, c)])})
    return out
