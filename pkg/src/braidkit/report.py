"""Canonical report serialization.

JSON is the single source of truth: identical inputs must serialize to
byte-identical output, so keys are sorted, separators fixed, and every
scalar is already a string or int by the time it lands here.  The table
format is derived from the JSON document, never computed separately.
"""

from __future__ import annotations

import json
from typing import Any


def to_canonical_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


def _fmt_scalar(value: Any) -> str:
    if value is None:
        return "-"
    if value is True:
        return "yes"
    if value is False:
        return "no"
    return str(value)


def _is_scalar_list(value: Any) -> bool:
    return isinstance(value, list) and all(
        not isinstance(v, (dict, list)) for v in value)


def render_table(doc: dict, indent: int = 0) -> str:
    """Indented key/value listing of a JSON report."""
    lines: list[str] = []
    pad = "  " * indent
    for key in sorted(doc):
        value = doc[key]
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(render_table(value, indent + 1))
        elif _is_scalar_list(value):
            lines.append(f"{pad}{key}: " + " ".join(_fmt_scalar(v) for v in value))
        elif isinstance(value, list):
            lines.append(f"{pad}{key}:")
            for i, item in enumerate(value):
                if isinstance(item, dict):
                    lines.append(f"{pad}  [{i}]")
                    lines.append(render_table(item, indent + 2))
                else:
                    lines.append(f"{pad}  [{i}] {_fmt_scalar(item)}")
        else:
            lines.append(f"{pad}{key}: {_fmt_scalar(value)}")
    return "\n".join(line for line in lines if line)
