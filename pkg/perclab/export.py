#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Export functions for perclab results.

JSON documents carry a "schema" field, sorted keys and fixed indentation
and no timestamps, so reruns with the same seeds are byte-identical.
Rationals are written as "p/q" strings. Tabular results go out as CSV.
The JSON schemas shipped in ``perclab/schemas`` describe every document.
"""

import csv
import json
from fractions import Fraction
from importlib import resources
from typing import Any, Dict, Iterable, List, Sequence, TextIO

from perclab.constants import JSON_INDENT, SCHEMA_VERSION


def rational_str(value: Fraction) -> str:
    """Render a rational as "p/q", always with a denominator."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def versioned(payload: Dict[str, Any]) -> Dict[str, Any]:
    """Return a copy of ``payload`` stamped with the schema version."""
    document = dict(payload)
    document["schema"] = SCHEMA_VERSION
    return document


def dumps_json(payload: Dict[str, Any]) -> str:
    return json.dumps(versioned(payload), indent=JSON_INDENT, sort_keys=True, ensure_ascii=False) + "\n"


def write_json(payload: Dict[str, Any], output_file: TextIO) -> None:
    """
    Write a schema-versioned JSON document.

    Args:
        payload: JSON-serialisable mapping (rationals already rendered)
        output_file: File object to write JSON to
    """
    output_file.write(dumps_json(payload))


def write_csv(header: Sequence[str], rows: Iterable[Sequence[Any]], output_file: TextIO) -> None:
    """Write a header row and data rows as CSV with LF line endings."""
    writer = csv.writer(output_file, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)


def schema_names() -> List[str]:
    folder = resources.files("perclab") / "schemas"
    return sorted(p.name[: -len(".json")] for p in folder.iterdir() if p.name.endswith(".json"))


def load_schema(name: str) -> Dict[str, Any]:
    """Load ``perclab/schemas/<name>.json``."""
    path = resources.files("perclab") / "schemas" / f"{name}.json"
    return json.loads(path.read_text(encoding="utf-8"))
