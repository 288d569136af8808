"""Grid text and JSON serialization for PDAs.

Text format: an optional header line ``# pda f=<f> K=<K>``, then f lines of
K whitespace-separated tokens, ``*`` for a star and a decimal non-negative
integer otherwise.  Output uses LF line endings.

JSON format: an object with fields ``rows``, ``cols`` and ``cells``, the
latter a flat row-major list where stars encode as null.
"""

from __future__ import annotations

import json
import re

from .core import Pda
from .errors import GridParseError

__all__ = [
    "parse_grid",
    "serialize_grid",
    "pda_to_json",
    "pda_from_json",
    "load_pda",
    "save_pda",
]

_HEADER_RE = re.compile(r"#\s*pda\s+f=(\d+)\s+K=(\d+)\s*$")
_TOKEN_RE = re.compile(r"^(?:\*|\d+)$")


def parse_grid(text: str) -> Pda:
    lines = text.splitlines()
    header = None
    body = []
    body_linenos = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if body or header is not None:
                raise GridParseError("unexpected comment line", lineno, 1)
            m = _HEADER_RE.match(line)
            if not m:
                raise GridParseError("malformed header", lineno, 1)
            header = (int(m.group(1)), int(m.group(2)))
            continue
        body.append(line.split())
        body_linenos.append(lineno)

    if not body:
        raise GridParseError("empty grid", 1, 1)

    width = len(body[0])
    rows = []
    for tokens, lineno in zip(body, body_linenos):
        if len(tokens) != width:
            raise GridParseError(
                f"ragged row: {len(tokens)} tokens, expected {width}", lineno, 1
            )
        row = []
        for col, tok in enumerate(tokens, start=1):
            if not _TOKEN_RE.match(tok):
                raise GridParseError(f"invalid token {tok!r}", lineno, col)
            row.append(None if tok == "*" else int(tok))
        rows.append(row)

    p = Pda.from_rows(rows)
    if header is not None and header != (p.rows, p.cols):
        raise GridParseError(
            f"header says f={header[0]} K={header[1]} but body is {p.rows}x{p.cols}",
            1,
            1,
        )
    return p


def serialize_grid(p: Pda, header: bool = False) -> str:
    out = []
    if header:
        out.append(f"# pda f={p.rows} K={p.cols}")
    for j in range(p.rows):
        out.append(" ".join("*" if c is None else str(c) for c in p.row(j)))
    return "\n".join(out) + "\n"


def pda_to_json(p: Pda) -> str:
    return json.dumps({"rows": p.rows, "cols": p.cols, "cells": list(p.cells)})


def pda_from_json(text: str) -> Pda:
    try:
        obj = json.loads(text)
        rows, cols, cells = obj["rows"], obj["cols"], obj["cells"]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise GridParseError(f"malformed PDA JSON: {exc}", 1, 1) from exc
    try:
        return Pda(rows, cols, tuple(cells))
    except (ValueError, TypeError) as exc:
        raise GridParseError(f"malformed PDA JSON: {exc}", 1, 1) from exc


def load_pda(path) -> Pda:
    """Read a PDA from a file, JSON when the name ends in .json, grid text otherwise."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if str(path).endswith(".json"):
        return pda_from_json(text)
    return parse_grid(text)


def save_pda(p: Pda, path, fmt: str = "grid") -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(pda_to_json(p) + "\n" if fmt == "json" else serialize_grid(p))
