"""Text formats.

* ``MOP1``: first line ``n``, then one ``a b`` line per diagonal, sorted.
  JSON mirror: ``{"n": n, "diagonals": [[a, b], ...]}``.
* ``POLY1``: first line ``n``, then ``n`` lines ``x y`` in counterclockwise
  order. JSON mirror: ``{"corners": [[x, y], ...]}``.
* Vertex sets: integers separated by whitespace or commas, or a JSON list.

Blank lines and ``#`` comments are ignored in the text formats. Structural
problems raise :class:`ParseError`; well-formed input that violates a MOP or
polygon invariant raises the specific error from the constructor.
"""
from __future__ import annotations

import json
import re
from pathlib import Path

from .errors import ParseError
from .gallery import SimplePolygon
from .mop import Mop


def _int(tok: str, what: str) -> int:
    if not re.fullmatch(r"[+-]?\d+", tok):
        raise ParseError(f"{what}: expected an integer, got {tok!r}")
    return int(tok)


def _lines(text: str) -> list:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _json_int(v, what):
    if not isinstance(v, int) or isinstance(v, bool):
        raise ParseError(f"{what}: expected an integer, got {v!r}")
    return v


def _json_pairs(items, what) -> list:
    if not isinstance(items, list):
        raise ParseError(f"{what} must be a list")
    out = []
    for item in items:
        if not isinstance(item, list) or len(item) != 2:
            raise ParseError(f"{what}: entry {item!r} is not a pair")
        out.append((_json_int(item[0], what), _json_int(item[1], what)))
    return out


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None


def _text_pairs(lines: list) -> list:
    out = []
    for line in lines:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected two integers per line, got {line!r}")
        out.append((_int(parts[0], "pair"), _int(parts[1], "pair")))
    return out


# -- MOPs ------------------------------------------------------------------------


def dumps_mop(G: Mop, fmt: str = "mop1") -> str:
    if fmt == "json":
        return json.dumps({"n": G.n, "diagonals": [list(d) for d in G.diagonals]}) + "\n"
    if fmt != "mop1":
        raise ValueError(f"unknown MOP format {fmt!r}")
    return "".join([f"{G.n}\n"] + [f"{a} {b}\n" for a, b in G.diagonals])


def loads_mop(text: str) -> Mop:
    """Parse MOP1 or its JSON mirror (detected by a leading ``{``)."""
    if text.lstrip().startswith("{"):
        data = _load_json(text)
        if not isinstance(data, dict) or "n" not in data or "diagonals" not in data:
            raise ParseError('JSON MOP needs keys "n" and "diagonals"')
        n = _json_int(data["n"], "n")
        pairs = _json_pairs(data["diagonals"], "diagonals")
        return Mop(n, tuple(pairs))
    lines = _lines(text)
    if not lines:
        raise ParseError("empty MOP file")
    n = _int(lines[0], "vertex count")
    pairs = _text_pairs(lines[1:])
    return Mop(n, tuple(pairs))


# -- polygons ------------------------------------------------------------------------


def dumps_polygon(P: SimplePolygon, fmt: str = "poly1") -> str:
    if fmt == "json":
        return json.dumps({"corners": [list(c) for c in P.corners]}) + "\n"
    if fmt != "poly1":
        raise ValueError(f"unknown polygon format {fmt!r}")
    return "".join([f"{P.n}\n"] + [f"{x} {y}\n" for x, y in P.corners])


def loads_polygon(text: str) -> SimplePolygon:
    if text.lstrip().startswith("{"):
        data = _load_json(text)
        if not isinstance(data, dict) or "corners" not in data:
            raise ParseError('JSON polygon needs key "corners"')
        return SimplePolygon(tuple(_json_pairs(data["corners"], "corners")))
    lines = _lines(text)
    if not lines:
        raise ParseError("empty polygon file")
    n = _int(lines[0], "corner count")
    corners = _text_pairs(lines[1:])
    if len(corners) != n:
        raise ParseError(f"header says {n} corners, found {len(corners)}")
    return SimplePolygon(tuple(corners))


def loads_any(text: str):
    """A Mop or a SimplePolygon, told apart by keys (JSON) or by line count (text)."""
    if text.lstrip().startswith("{"):
        data = _load_json(text)
        if isinstance(data, dict) and "corners" in data:
            return loads_polygon(text)
        return loads_mop(text)
    lines = _lines(text)
    if lines and re.fullmatch(r"\d+", lines[0]) and len(lines) - 1 == int(lines[0]):
        return loads_polygon(text)
    return loads_mop(text)


# -- vertex sets ---------------------------------------------------------------------


def loads_set(text: str) -> tuple:
    stripped = text.strip()
    if stripped.startswith("["):
        data = _load_json(stripped)
        if not isinstance(data, list):
            raise ParseError("vertex set JSON must be a list")
        return tuple(_json_int(v, "vertex") for v in data)
    toks = [t for t in re.split(r"[\s,]+", stripped) if t]
    return tuple(_int(t, "vertex") for t in toks)


def dumps_set(S) -> str:
    return " ".join(str(v) for v in sorted(S)) + "\n"


def read_text(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
