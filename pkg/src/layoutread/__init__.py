"""Layout-aware OCR text tooling: layout recovery, instruction data, tables, synthetic benchmark, scoring."""

__version__ = "0.1.0"

from .bbox import NormalizedBox, format_box, normalize, parse_box
from .core import Page, QuadBox, Rect, TextBox, hull, ingest_ocr
from .layout import LayoutConfig, LayoutText, RowGroup, estimate_char_width, group_rows, layout_row, recover_layout

__all__ = [
    "LayoutConfig",
    "LayoutText",
    "NormalizedBox",
    "Page",
    "QuadBox",
    "Rect",
    "RowGroup",
    "TextBox",
    "estimate_char_width",
    "format_box",
    "group_rows",
    "hull",
    "ingest_ocr",
    "layout_row",
    "normalize",
    "parse_box",
    "recover_layout",
]
