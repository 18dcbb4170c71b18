"""Canonical JSON: the single byte encoding shared by storage, exports and the API.

Rules: object keys sorted, no insignificant whitespace, ASCII escapes,
reals rendered with 12 significant digits.  Two equal documents always
serialize to identical bytes, which is what makes stored documents
diffable and lets tests compare exports byte-for-byte.
"""

from __future__ import annotations

import hashlib
import json
import math
from typing import Any


def format_real(value: float) -> str:
    """The 12-significant-digit rendering used for every real in canonical output."""
    if not math.isfinite(value):
        raise ValueError(f"cannot canonicalize non-finite number: {value!r}")
    text = format(value, ".12g")
    # ".12g" never emits a leading "+", but -0.0 would survive as "-0".
    if text == "-0":
        return "0"
    return text


def _encode(obj: Any, out: list[str]) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_real(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=True))
    elif isinstance(obj, dict):
        out.append("{")
        first = True
        for key in sorted(obj):
            if not isinstance(key, str):
                raise TypeError(f"canonical JSON object keys must be strings, got {key!r}")
            if not first:
                out.append(",")
            first = False
            out.append(json.dumps(key, ensure_ascii=True))
            out.append(":")
            _encode(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(",")
            _encode(item, out)
        out.append("]")
    else:
        raise TypeError(f"cannot canonicalize value of type {type(obj).__name__}")


def dumps(obj: Any) -> str:
    out: list[str] = []
    _encode(obj, out)
    return "".join(out)


def dump_bytes(obj: Any) -> bytes:
    return dumps(obj).encode("ascii")


def sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def loads(data: bytes | str) -> Any:
    return json.loads(data)
