"""Deterministic JSON output: floats at 17 significant digits, sorted keys."""

from __future__ import annotations

import math


def _format(value, parts: list[str]) -> None:
    if value is None:
        parts.append("null")
    elif value is True:
        parts.append("true")
    elif value is False:
        parts.append("false")
    elif isinstance(value, int):
        parts.append(str(value))
    elif isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            raise ValueError("JSON output cannot carry NaN or infinity")
        parts.append(format(value, ".17g"))
    elif isinstance(value, str):
        parts.append(
            '"'
            + value.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
            + '"'
        )
    elif isinstance(value, dict):
        parts.append("{")
        for i, key in enumerate(sorted(value)):
            if i:
                parts.append(",")
            _format(str(key), parts)
            parts.append(":")
            _format(value[key], parts)
        parts.append("}")
    elif isinstance(value, (list, tuple)):
        parts.append("[")
        for i, item in enumerate(value):
            if i:
                parts.append(",")
            _format(item, parts)
        parts.append("]")
    else:
        raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps(value) -> str:
    parts: list[str] = []
    _format(value, parts)
    return "".join(parts)
