"""HTML tables and chart source data to GitHub-flavored Markdown pipe tables."""

from __future__ import annotations

import html
import json
import math
import re
from dataclasses import dataclass
from html.parser import HTMLParser
from numbers import Real
from pathlib import Path
from typing import Sequence

from .util import fixed


class TableError(ValueError):
    pass


@dataclass(frozen=True)
class TableModel:
    header: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...] = ()

    def __post_init__(self):
        header = tuple(self.header)
        rows = tuple(tuple(r) for r in self.rows)
        width = max([len(header), *(len(r) for r in rows)]) if (header or rows) else 0
        header = header + ("",) * (width - len(header))
        rows = tuple(r + ("",) * (width - len(r)) for r in rows)
        for cell in (*header, *(c for r in rows for c in r)):
            if "\n" in cell or "\r" in cell:
                raise TableError(f"cell contains a newline: {cell!r}")
        object.__setattr__(self, "header", header)
        object.__setattr__(self, "rows", rows)

    def cells(self) -> list[str]:
        return [*self.header, *(c for r in self.rows for c in r)]


class _TableParser(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.depth = 0
        self.seen_table = False
        self.rows: list[list[str]] = []
        self.row: list[str] | None = None
        self.cell: list[str] | None = None
        self.span = 1

    def handle_starttag(self, tag, attrs):
        attrs = dict(attrs)
        if tag == "table":
            if self.depth:
                raise TableError("nested tables are not supported")
            if self.seen_table:
                raise TableError("more than one <table> in input")
            self.depth, self.seen_table = 1, True
        elif not self.depth:
            return
        elif tag == "tr":
            self._close_row()
            self.row = []
        elif tag in ("td", "th"):
            self._close_cell()
            if self.row is None:
                self.row = []
            if int(attrs.get("rowspan") or 1) > 1:
                raise TableError("rowspan is not supported")
            try:
                self.span = max(1, int(attrs.get("colspan") or 1))
            except ValueError:
                raise TableError(f"bad colspan {attrs.get('colspan')!r}") from None
            self.cell = []
        elif tag == "br" and self.cell is not None:
            self.cell.append(" ")

    def handle_endtag(self, tag):
        if not self.depth:
            return
        if tag in ("td", "th"):
            self._close_cell()
        elif tag == "tr":
            self._close_row()
        elif tag in ("thead", "tbody"):
            self._close_row()
        elif tag == "table":
            self._close_row()
            self.depth = 0

    def handle_data(self, data):
        if self.cell is not None:
            self.cell.append(data)

    def _close_cell(self):
        if self.cell is not None:
            text = " ".join("".join(self.cell).split())
            self.row.extend([text] * self.span)
            self.cell, self.span = None, 1

    def _close_row(self):
        self._close_cell()
        if self.row is not None:
            self.rows.append(self.row)
            self.row = None


def html_table_to_model(source: str) -> TableModel:
    """Parse a single ``<table>``; the first row (the ``<thead>`` row if any) is the header.

    ``colspan`` cells are duplicated across the spanned columns; short rows are
    padded with empty cells; tags other than table structure are dropped with
    their text kept.
    """
    p = _TableParser()
    p.feed(source)
    p.close()
    if not p.seen_table:
        raise TableError("no <table> element found")
    if not p.rows:
        raise TableError("table has no rows")
    return TableModel(tuple(p.rows[0]), tuple(tuple(r) for r in p.rows[1:]))


def _escape(cell: str) -> str:
    return cell.replace("\\", "\\\\").replace("|", "\\|")


def _md_row(cells: Sequence[str]) -> str:
    return "| " + " | ".join(_escape(c) for c in cells) + " |"


def model_to_markdown(model: TableModel) -> str:
    lines = [_md_row(model.header), "| " + " | ".join(["---"] * len(model.header)) + " |"]
    lines += [_md_row(r) for r in model.rows]
    return "\n".join(lines)


def html_to_markdown(source: str) -> str:
    return model_to_markdown(html_table_to_model(source))


_INLINE_TAG = re.compile(r"^</?[a-z]+>$")


def pubtabnet_html(annotation: dict) -> str:
    """Assemble table HTML from a PubTabNet-style ``{"html": {"structure", "cells"}}`` record."""
    structure = annotation["html"]["structure"]["tokens"]
    cells = iter(annotation["html"]["cells"])
    out = []
    for tok in structure:
        out.append(tok)
        if tok == "<td>" or tok == ">":
            # '>' closes a '<td' opened with attributes such as ' colspan="2"'
            try:
                cell = next(cells)
            except StopIteration:
                raise TableError("structure has more cells than the annotation") from None
            out.append("".join(
                t if _INLINE_TAG.match(t) else html.escape(t, quote=False) for t in cell["tokens"]
            ))
    return "<table>" + "".join(out) + "</table>"


# -- charts --------------------------------------------------------------------


@dataclass(frozen=True)
class ChartSeries:
    categories: tuple[str, ...]
    series: tuple[tuple[str, tuple[float, ...]], ...] = ()
    title: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "categories", tuple(str(c) for c in self.categories))
        object.__setattr__(self, "series", tuple((str(n), tuple(v)) for n, v in self.series))
        for name, values in self.series:
            if len(values) != len(self.categories):
                raise TableError(
                    f"series {name!r} has {len(values)} values for {len(self.categories)} categories"
                )

    @classmethod
    def from_json(cls, data: dict) -> "ChartSeries":
        try:
            return cls(
                tuple(data["categories"]),
                tuple((s["name"], tuple(s["values"])) for s in data.get("series", [])),
                data.get("title"),
            )
        except (KeyError, TypeError) as exc:
            raise TableError(f"bad chart JSON: {exc}") from None


def format_number(v) -> str:
    """Integers (and integral floats) bare, everything else to two decimals."""
    if isinstance(v, bool) or not isinstance(v, Real):
        return str(v)
    if isinstance(v, int):
        return str(v)
    if not math.isfinite(v):
        return str(v)
    if float(v).is_integer():
        return str(int(v))
    return fixed(v, 2)


def chart_to_markdown(chart: ChartSeries) -> str:
    model = TableModel(
        ("Category", *(name for name, _ in chart.series)),
        tuple(
            (cat, *(format_number(values[i]) for _, values in chart.series))
            for i, cat in enumerate(chart.categories)
        ),
    )
    table = model_to_markdown(model)
    return f"# {chart.title}\n{table}" if chart.title else table


def load_chart(path: str | Path) -> ChartSeries:
    return ChartSeries.from_json(json.loads(Path(path).read_text(encoding="utf-8")))
