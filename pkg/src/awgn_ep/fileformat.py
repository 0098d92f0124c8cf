"""JSON constellation files.

A file holds the top-level keys ``dimension``, ``points``, ``probs`` and
optionally ``labels`` and ``name``. Point ``k`` in the file is index ``k``
(zero-based) everywhere in the library. For ``dimension`` 1 the points may
be given as plain numbers instead of one-element arrays.
"""

from __future__ import annotations

import json
import re
from typing import Any

from .constellation import Bundle, ValidationError, validate

KEYS = {"dimension", "points", "probs", "labels", "name"}


class ConstellationFileError(ValueError):
    def __init__(self, message: str, line: int | None = None, location: str | None = None):
        self.line = line
        self.location = location
        where = ", ".join(
            x for x in (f"line {line}" if line else None, location) if x
        )
        super().__init__(f"{where}: {message}" if where else message)


def _key_line(text: str, key: str) -> int | None:
    m = re.search(r'"%s"\s*:' % re.escape(key), text)
    return text.count("\n", 0, m.start()) + 1 if m else None


def _element_line(text: str, location: str | None) -> int | None:
    """Best-effort source line of ``points[3]``-style locations."""
    if not location:
        return None
    m = re.match(r"(\w+)(?:\[(\d+)\])?", location)
    key, idx = m.group(1), m.group(2)
    line = _key_line(text, key)
    if line is None or idx is None:
        return line
    start = re.search(r'"%s"\s*:\s*\[' % re.escape(key), text).end()
    # walk the array to the idx-th top-level element
    depth, count, pos = 0, 0, start
    in_str = False
    while pos < len(text):
        c = text[pos]
        if in_str:
            in_str = c != '"' or text[pos - 1] == "\\"
        elif c == '"':
            in_str = True
        elif c in "[{":
            depth += 1
        elif c in "]}":
            if depth == 0:
                break
            depth -= 1
        elif c == "," and depth == 0:
            count += 1
        if count == int(idx) and not c.isspace() and c != ",":
            return text.count("\n", 0, pos) + 1
        pos += 1
    return line


def parse_constellation(document: str) -> Bundle:
    """Parse and validate a constellation document."""
    try:
        doc: Any = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ConstellationFileError(f"syntax error: {exc.msg} (column {exc.colno})", exc.lineno) from None
    if not isinstance(doc, dict):
        raise ConstellationFileError("top level must be an object", 1)
    unknown = sorted(set(doc) - KEYS)
    if unknown:
        raise ConstellationFileError(f"unknown key {unknown[0]!r}", _key_line(document, unknown[0]), unknown[0])
    for key in ("dimension", "points", "probs"):
        if key not in doc:
            raise ConstellationFileError(f"missing required key {key!r}", None, key)

    dim = doc["dimension"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ConstellationFileError(
            f"dimension must be a positive integer, got {dim!r}", _key_line(document, "dimension"), "dimension"
        )
    points = doc["points"]
    if not isinstance(points, list):
        raise ConstellationFileError("points must be an array", _key_line(document, "points"), "points")
    rows = []
    for k, pt in enumerate(points):
        row = [pt] if dim == 1 and _is_number(pt) else pt
        if not isinstance(row, list) or len(row) != dim or not all(_is_number(v) for v in row):
            loc = f"points[{k}]"
            raise ConstellationFileError(
                f"expected an array of {dim} numbers, got {pt!r}", _element_line(document, loc), loc
            )
        rows.append([float(v) for v in row])
    probs = doc["probs"]
    if not isinstance(probs, list) or not all(_is_number(v) for v in probs):
        raise ConstellationFileError("probs must be an array of numbers", _key_line(document, "probs"), "probs")
    labels = doc.get("labels")
    if labels is not None and (not isinstance(labels, list) or not all(isinstance(s, str) for s in labels)):
        raise ConstellationFileError("labels must be an array of strings", _key_line(document, "labels"), "labels")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise ConstellationFileError("name must be a string", _key_line(document, "name"), "name")

    try:
        return validate(rows, probs, labels, name)
    except ValidationError as exc:
        raise ConstellationFileError(
            str(exc).split(": ", 1)[-1] if exc.location else str(exc),
            _element_line(document, exc.location),
            exc.location,
        ) from None


def _is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def serialize_constellation(bundle: Bundle) -> str:
    """Inverse of :func:`parse_constellation`; floats keep their shortest round-trip form."""
    doc: dict[str, Any] = {}
    if bundle.name is not None:
        doc["name"] = bundle.name
    doc["dimension"] = bundle.N
    doc["points"] = [[float(v) for v in row] for row in bundle.points]
    doc["probs"] = [float(v) for v in bundle.probs]
    if bundle.labeling is not None:
        doc["labels"] = list(bundle.labeling.labels)
    lines = ["{"]
    items = list(doc.items())
    for n, (key, val) in enumerate(items):
        sep = "," if n + 1 < len(items) else ""
        if isinstance(val, list):
            inner = ",\n".join("    " + json.dumps(v) for v in val)
            lines.append(f'  "{key}": [\n{inner}\n  ]{sep}')
        else:
            lines.append(f'  "{key}": {json.dumps(val)}{sep}')
    lines.append("}")
    return "\n".join(lines) + "\n"
