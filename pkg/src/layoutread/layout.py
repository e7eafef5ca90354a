"""Plain-text layout recovery from OCR boxes.

Boxes are grouped into rows by vertical overlap, each row gets an average
character width, and horizontal gaps become runs of spaces. One line is
emitted per row.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass

from .core import Page, TextBox
from .util import round_half_away


@dataclass(frozen=True)
class LayoutConfig:
    row_overlap_threshold: float = 0.5
    max_gap_spaces: int = 40
    indent_enabled: bool = True
    vgap_blank_lines: bool = False
    vgap_factor: float = 1.5

    def __post_init__(self):
        if not 0.0 < self.row_overlap_threshold <= 1.0:
            raise ValueError(f"row_overlap_threshold must be in (0, 1], got {self.row_overlap_threshold}")
        if int(self.max_gap_spaces) < 1:
            raise ValueError(f"max_gap_spaces must be >= 1, got {self.max_gap_spaces}")
        if self.vgap_factor <= 0:
            raise ValueError(f"vgap_factor must be positive, got {self.vgap_factor}")


@dataclass(frozen=True)
class RowGroup:
    boxes: tuple[TextBox, ...]
    y_top: float
    y_bottom: float
    char_width_px: float

    @property
    def y_center(self) -> float:
        return (self.y_top + self.y_bottom) / 2

    @property
    def height(self) -> float:
        return self.y_bottom - self.y_top


@dataclass(frozen=True)
class LayoutText:
    lines: tuple[str, ...]

    @property
    def rendered(self) -> str:
        return "\n".join(self.lines)


def estimate_char_width(boxes) -> float:
    """Row width per character: sum of box widths over sum of text lengths.

    Accepts a RowGroup or any iterable of TextBox. Internal spaces count as
    characters.
    """
    if isinstance(boxes, RowGroup):
        boxes = boxes.boxes
    width = sum(b.rect.width for b in boxes)
    chars = sum(len(b.text) for b in boxes)
    if chars == 0:
        raise ValueError("cannot estimate character width of an empty row")
    return width / chars


class _Row:
    __slots__ = ("members", "top", "bottom", "order")

    def __init__(self, member, order):
        idx, box = member
        self.members = [member]
        self.top = box.rect.y_min
        self.bottom = box.rect.y_max
        self.order = order

    def overlap(self, box: TextBox) -> float:
        return min(self.bottom, box.rect.y_max) - max(self.top, box.rect.y_min)

    def add(self, member):
        box = member[1]
        self.members.append(member)
        self.top = min(self.top, box.rect.y_min)
        self.bottom = max(self.bottom, box.rect.y_max)


def group_rows(page: Page, cfg: LayoutConfig = LayoutConfig()) -> list[RowGroup]:
    """Assign every box to exactly one row, rows top-to-bottom, boxes left-to-right.

    Boxes are visited by ascending vertical center. A box joins the existing
    row whose current extent overlaps it the most, provided the overlap is at
    least ``row_overlap_threshold * min(box height, row height)``; otherwise it
    opens a new row. Exact ties fall back to input order.
    """
    indexed = list(enumerate(page.boxes))
    indexed.sort(key=lambda m: (m[1].rect.y_center, m[1].rect.x_min, m[0]))
    rows: list[_Row] = []
    for member in indexed:
        box = member[1]
        best, best_ratio = None, 0.0
        for row in rows:
            ov = row.overlap(box)
            need = cfg.row_overlap_threshold * min(box.rect.height, row.bottom - row.top)
            if ov > 0 and ov >= need:
                ratio = ov / min(box.rect.height, row.bottom - row.top)
                if best is None or ratio > best_ratio:
                    best, best_ratio = row, ratio
        if best is None:
            rows.append(_Row(member, len(rows)))
        else:
            best.add(member)

    rows.sort(key=lambda r: ((r.top + r.bottom) / 2, r.order))
    out = []
    for r in rows:
        members = sorted(r.members, key=lambda m: (m[1].rect.x_min, m[0]))
        boxes = tuple(m[1] for m in members)
        out.append(RowGroup(boxes, r.top, r.bottom, estimate_char_width(boxes)))
    return out


def reading_order(page: Page, cfg: LayoutConfig = LayoutConfig()) -> list[TextBox]:
    return [b for row in group_rows(page, cfg) for b in row.boxes]


def layout_row(row: RowGroup, cfg: LayoutConfig = LayoutConfig()) -> str:
    cw = row.char_width_px
    parts = []
    if cfg.indent_enabled:
        indent = round_half_away(row.boxes[0].rect.x_min / cw)
        parts.append(" " * min(max(indent, 0), cfg.max_gap_spaces))
    prev = None
    for box in row.boxes:
        if prev is not None:
            n = round_half_away((box.rect.x_min - prev.rect.x_max) / cw)
            parts.append(" " * min(max(n, 1), cfg.max_gap_spaces))
        parts.append(box.text)
        prev = box
    return "".join(parts).rstrip()


def recover_layout(page: Page, cfg: LayoutConfig = LayoutConfig()) -> LayoutText:
    rows = group_rows(page, cfg)
    if not rows:
        return LayoutText(())
    threshold = None
    if cfg.vgap_blank_lines and len(rows) > 1:
        threshold = cfg.vgap_factor * statistics.median(r.height for r in rows)
    lines = []
    for i, row in enumerate(rows):
        if threshold is not None and i > 0 and row.y_top - rows[i - 1].y_bottom > threshold:
            lines.append("")
        lines.append(layout_row(row, cfg))
    return LayoutText(tuple(lines))


def collapse_ws(s: str) -> str:
    return " ".join(s.split())
