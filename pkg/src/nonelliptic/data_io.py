"""Eigenvalue-data ingestion (strict JSON wire format), the bundled datasets,
and deterministic report serialization.

Map keys are primes as decimal strings; unknown keys are rejected outright so
typos in hand-entered data surface immediately. A Ramanujan-bound violation
warns but does not reject: nothing downstream relies on the bound, and the
warning is the useful signal.
"""

from __future__ import annotations

import json
from importlib import resources

import jsonschema

from .arith import is_prime
from .quadfield import QuadInt, ensure_squarefree
from .repmodel import NewformData


class SchemaError(ValueError):
    """The byte stream does not validate against the FormRecord schema."""


def _load_packaged(name: str) -> dict:
    with resources.files("nonelliptic.data").joinpath(name).open("rb") as fp:
        return json.load(fp)


_SCHEMA = _load_packaged("form_record.schema.json")
BUNDLED_FORMS = ("schoen_s4_25", "s2_512_sqrt2")


def parse_form(text: str | bytes) -> NewformData:
    """Parse and validate one FormRecord; errors carry the offending path."""
    try:
        record = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from None
    try:
        jsonschema.validate(record, _SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SchemaError(f"schema violation at {exc.json_path}: {exc.message}") from None

    level = record["level"]
    field = record["field"]
    d = field["d"] if field["type"] == "quadratic" else None
    if d is not None:
        try:
            ensure_squarefree(d)
        except ValueError as exc:
            raise SchemaError(f"schema violation at $.field.d: {exc}") from None
    eigenvalues: dict[int, QuadInt] = {}
    for p_str, val in record["eigenvalues"].items():
        p = int(p_str)
        if not is_prime(p):
            raise SchemaError(f"schema violation at $.eigenvalues.{p_str}: {p} is not prime")
        if level % p == 0:
            raise SchemaError(
                f"schema violation at $.eigenvalues.{p_str}: {p} divides the level {level}"
            )
        if d is None and val["y"] != 0:
            raise SchemaError(
                f"schema violation at $.eigenvalues.{p_str}: rational field with y != 0"
            )
        eigenvalues[p] = QuadInt(val["x"], val["y"], d if val["y"] != 0 else None)

    try:
        return NewformData(
            form_id=record["id"],
            level=level,
            weight=record["weight"],
            d=d,
            eigenvalues=eigenvalues,
            claimed_conductor_equality=record.get("claimed_conductor_equality", False),
            notes=record.get("notes", ""),
        )
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def load_form(path) -> NewformData:
    """Load a FormRecord from a filesystem path or an open binary file."""
    if hasattr(path, "read"):
        return parse_form(path.read())
    with open(path, "rb") as fp:
        return parse_form(fp.read())


def dump_form(form: NewformData) -> str:
    """Serialize a NewformData back to its wire format (round-trips load)."""
    record = {
        "id": form.form_id,
        "level": form.level,
        "weight": form.weight,
        "field": {"type": "rational"} if form.d is None else {"type": "quadratic", "d": form.d},
        "eigenvalues": {
            str(p): {"x": a.x, "y": a.y} for p, a in sorted(form.eigenvalues.items())
        },
        "claimed_conductor_equality": form.claimed_conductor_equality,
        "notes": form.notes,
    }
    return canonical_json(record)


def bundled_form(form_id: str) -> NewformData:
    """One of the two datasets shipped with the package."""
    if form_id not in BUNDLED_FORMS:
        raise KeyError(f"no bundled form {form_id!r}; available: {BUNDLED_FORMS}")
    return parse_form(json.dumps(_load_packaged(f"{form_id}.json")))


def load_expectations() -> dict:
    """The versioned expectations table the bundled verification diffs against."""
    return _load_packaged("expectations.json")


def canonical_json(obj) -> str:
    """Deterministic JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def dump_report(report, fmt: str = "text") -> str:
    """Serialize a report object (anything with to_dict/to_text, or a dict).

    Canonical in both formats: stable ordering, no timestamps, so identical
    inputs give byte-identical output.
    """
    if fmt == "json":
        payload = report.to_dict() if hasattr(report, "to_dict") else report
        return canonical_json(payload)
    if fmt == "text":
        if hasattr(report, "to_text"):
            return report.to_text() + "\n"
        if isinstance(report, dict) and not report:
            return ""
        return canonical_json(report)
    raise ValueError(f"unknown report format {fmt!r}")
