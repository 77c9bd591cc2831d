"""Line-oriented tiling file format (``tiling v1``).

::

    tiling v1
    case pi3
    tile 3 8 7
    triangle 0 0  36 0  18 18w
    count 54
    t x0 y0  x1 y1  x2 y2
    ...

``#`` starts a comment. Numbers use the Q3 literal grammar (``w`` = sqrt 3).
"""

from __future__ import annotations

from typing import List

from .model import PlacedTile, Tiling
from .numeric import format_q3, parse_q3
from .theory import GammaCase, ShapeError, TileShape


class TilingParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


def _fmt_point(p) -> str:
    return f"{format_q3(p[0])} {format_q3(p[1])}"


def serialize_tiling(t: Tiling) -> str:
    sh = t.shape
    lines = [
        "tiling v1",
        f"case {sh.gamma_case.value}",
        f"tile {format_q3(sh.a)} {format_q3(sh.b)} {format_q3(sh.c)}",
        "triangle " + "  ".join(_fmt_point(p) for p in t.target),
        f"count {t.N}",
    ]
    for tile in t.tiles:
        lines.append("t " + "  ".join(_fmt_point(p) for p in tile.points))
    return "\n".join(lines) + "\n"


def _tokens(raw: str):
    """(column, token) pairs of a line with its comment removed."""
    text = raw.split("#", 1)[0]
    out = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        j = i
        while j < len(text) and not text[j].isspace():
            j += 1
        out.append((i + 1, text[i:j]))
        i = j
    return out


def _num(tok, lineno):
    col, text = tok
    try:
        return parse_q3(text)
    except ValueError:
        raise TilingParseError(f"malformed Q3 literal {text!r}", lineno, col) from None


def _points(toks, lineno, expected):
    if len(toks) != 2 * expected:
        col = toks[-1][0] if toks else 1
        raise TilingParseError(f"expected {2 * expected} coordinates, got {len(toks)}", lineno, col)
    nums = [_num(t, lineno) for t in toks]
    return [(nums[2 * i], nums[2 * i + 1]) for i in range(expected)]


def parse_tiling(text: str) -> Tiling:
    lines: List[tuple] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = _tokens(raw)
        if toks:
            lines.append((lineno, toks))
    if not lines:
        raise TilingParseError("empty input", 1)

    def expect(idx, keyword):
        if idx >= len(lines):
            last = lines[-1][0] if lines else 1
            raise TilingParseError(f"missing {keyword!r} line", last + 1)
        lineno, toks = lines[idx]
        if toks[0][1] != keyword:
            raise TilingParseError(f"expected {keyword!r}, found {toks[0][1]!r}", lineno, toks[0][0])
        return lineno, toks[1:]

    lineno, rest = expect(0, "tiling")
    if [t for _, t in rest] != ["v1"]:
        raise TilingParseError("unsupported version (expected 'tiling v1')", lineno, rest[0][0] if rest else 8)
    lineno, rest = expect(1, "case")
    try:
        case = GammaCase(rest[0][1]) if len(rest) == 1 else None
    except ValueError:
        case = None
    if case is None:
        raise TilingParseError("case must be pi3, 2pi3 or other", lineno, rest[0][0] if rest else 6)
    lineno, rest = expect(2, "tile")
    if len(rest) != 3:
        raise TilingParseError("tile needs three side lengths", lineno)
    sides = [_num(t, lineno) for t in rest]
    try:
        shape = TileShape.from_sides(*sides)
    except ShapeError as exc:
        raise TilingParseError(str(exc), lineno) from None
    if shape.gamma_case is not case:
        raise TilingParseError(f"tile has gamma case {shape.gamma_case.value}, header says {case.value}", lineno)
    lineno, rest = expect(3, "triangle")
    target = _points(rest, lineno, 3)
    lineno, rest = expect(4, "count")
    if len(rest) != 1 or not rest[0][1].isdigit():
        raise TilingParseError("count needs one nonnegative integer", lineno)
    count = int(rest[0][1])
    body = lines[5:]
    if len(body) != count:
        where = body[-1][0] if body else lineno
        raise TilingParseError(f"count mismatch: header says {count}, found {len(body)} tile lines", where)
    tiles = []
    for lineno, toks in body:
        if toks[0][1] != "t":
            raise TilingParseError(f"expected 't', found {toks[0][1]!r}", lineno, toks[0][0])
        pts = _points(toks[1:], lineno, 3)
        try:
            tiles.append(PlacedTile(*pts))
        except Exception as exc:
            raise TilingParseError(str(exc), lineno) from None
    return Tiling(tuple(target), shape, tuple(tiles))


def read_tiling(path) -> Tiling:
    with open(path, encoding="utf-8") as fh:
        return parse_tiling(fh.read())


def write_tiling(t: Tiling, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_tiling(t))
