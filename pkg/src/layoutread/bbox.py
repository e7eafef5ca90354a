"""Normalized [0, 1] boxes and their bracketed string form.

Grammar (whitespace-tolerant)::

    box    := "[" num "," num "," num "," num "]"
    num    := ["+"|"-"] (digits ["." [digits]] | "." digits) [("e"|"E") ["+"|"-"] digits]
    line   := text " " box          # one Task II response line; text may hold spaces

``format_box`` always writes exactly three decimals, halves away from zero.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .core import Rect
from .util import fixed

PLACES = 3


class BoxParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class BoxValidationError(ValueError):
    pass


@dataclass(frozen=True)
class NormalizedBox:
    x_min: float
    y_min: float
    x_max: float
    y_max: float

    def __post_init__(self):
        if not (0.0 <= self.x_min < self.x_max <= 1.0 and 0.0 <= self.y_min < self.y_max <= 1.0):
            raise BoxValidationError(f"not a valid normalized box: {self.as_tuple()}")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.x_min, self.y_min, self.x_max, self.y_max)


def normalize(rect: Rect, width_px: int, height_px: int) -> NormalizedBox:
    if width_px <= 0 or height_px <= 0:
        raise ValueError(f"page dimensions must be positive, got {width_px}x{height_px}")
    return NormalizedBox(
        rect.x_min / width_px, rect.y_min / height_px, rect.x_max / width_px, rect.y_max / height_px
    )


def denormalize(nbox: NormalizedBox, width_px: int, height_px: int) -> tuple[float, float, float, float]:
    return (nbox.x_min * width_px, nbox.y_min * height_px, nbox.x_max * width_px, nbox.y_max * height_px)


def format_box(nbox: NormalizedBox) -> str:
    return "[" + ", ".join(fixed(v, PLACES) for v in nbox.as_tuple()) + "]"


_WS = re.compile(r"\s*")
_NUM = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")


def _parse_values(s: str, pos: int = 0) -> tuple[list[float], int]:
    def skip(p):
        return _WS.match(s, p).end()

    def expect(ch, p):
        p = skip(p)
        if p >= len(s) or s[p] != ch:
            found = repr(s[p]) if p < len(s) else "end of input"
            raise BoxParseError(f"expected {ch!r}, found {found}", p)
        return p + 1

    p = expect("[", pos)
    values = []
    for i in range(4):
        if i:
            p = expect(",", p)
        p = skip(p)
        m = _NUM.match(s, p)
        if not m:
            raise BoxParseError("expected a number", p)
        values.append(float(m.group()))
        p = m.end()
    p = expect("]", p)
    return values, skip(p)


def parse_box(s: str) -> NormalizedBox:
    values, end = _parse_values(s)
    if end != len(s):
        raise BoxParseError("trailing characters after box", end)
    return NormalizedBox(*values)


def format_line(text: str, nbox: NormalizedBox) -> str:
    return f"{text} {format_box(nbox)}"


def parse_line(line: str) -> tuple[str, NormalizedBox]:
    """Split ``"<text> [a, b, c, d]"`` into text and box (the last bracket group is the box)."""
    start = line.rfind("[")
    if start <= 0:
        raise BoxParseError("no text before box", max(start, 0))
    text = line[:start].rstrip()
    if not text:
        raise BoxParseError("no text before box", 0)
    return text, parse_box(line[start:])
