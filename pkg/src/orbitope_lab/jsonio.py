"""Deterministic JSON rendering with exact rationals.

Reports are part of the package's public contract and must be
byte-identical across runs with the same configuration.  To that end,
dictionaries are rendered in insertion order (never sorted behind the
caller's back), floats use a fixed 17-significant-digit format, and
``fractions.Fraction`` values become strings such as ``"3/4"`` (or ``"3"``
when the denominator is one).  Only JSON-compatible types plus Fraction
are accepted; NaN and infinities are rejected.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

_INDENT = "  "


def _render(value, depth: int, out: list) -> None:
    if value is None or value is True or value is False:
        out.append(json.dumps(value))
    elif isinstance(value, Fraction):
        out.append(json.dumps(str(value)))
    elif isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"cannot serialize non-finite float {value!r}")
        out.append(format(value, ".17g"))
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, str):
        out.append(json.dumps(value))
    elif isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        pad = _INDENT * (depth + 1)
        for k, (key, item) in enumerate(value.items()):
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be strings, got {key!r}")
            out.append(pad)
            out.append(json.dumps(key))
            out.append(": ")
            _render(item, depth + 1, out)
            out.append(",\n" if k + 1 < len(value) else "\n")
        out.append(_INDENT * depth + "}")
    elif isinstance(value, (list, tuple)):
        if not value:
            out.append("[]")
            return
        out.append("[\n")
        pad = _INDENT * (depth + 1)
        for k, item in enumerate(value):
            out.append(pad)
            _render(item, depth + 1, out)
            out.append(",\n" if k + 1 < len(value) else "\n")
        out.append(_INDENT * depth + "]")
    else:
        raise TypeError(f"cannot serialize {type(value).__name__} values")


def render(value) -> str:
    """Render a report value as deterministic JSON (no trailing newline)."""
    out = []
    _render(value, 0, out)
    return "".join(out)


def dump_report(value) -> str:
    """Render a report with a trailing newline, ready to write."""
    return render(value) + "\n"
