import json
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from conftest import DATA
from layoutread.tables import (
    ChartSeries,
    TableError,
    TableModel,
    chart_to_markdown,
    format_number,
    html_table_to_model,
    html_to_markdown,
    load_chart,
    model_to_markdown,
    pubtabnet_html,
)

TABLES = sorted((DATA / "tables").glob("t*.html"))
CHARTS = sorted((DATA / "charts").glob("*.json"))


def parse_pipe_table(md: str) -> TableModel:
    """Reference GFM pipe-table reader, independent of the writer."""

    def split(line):
        assert line.startswith("| ") and line.endswith(" |"), line
        body = line[2:-2]
        cells, cur, i = [], [], 0
        while i < len(body):
            ch = body[i]
            if ch == "\\" and i + 1 < len(body) and body[i + 1] in "\\|":
                cur.append(body[i + 1])
                i += 2
                continue
            if body.startswith(" | ", i):
                cells.append("".join(cur))
                cur = []
                i += 3
                continue
            cur.append(ch)
            i += 1
        cells.append("".join(cur))
        return [c.strip() for c in cells]

    lines = md.split("\n")
    header, sep = split(lines[0]), split(lines[1])
    assert all(c == "---" for c in sep) and len(sep) == len(header)
    return TableModel(tuple(header), tuple(tuple(split(ln)) for ln in lines[2:]))


def test_simple_example():
    m = html_table_to_model("<table><tr><th>A</th><th>B</th></tr><tr><td>1</td><td>2</td></tr></table>")
    assert m == TableModel(("A", "B"), (("1", "2"),))
    assert model_to_markdown(m) == "| A | B |\n| --- | --- |\n| 1 | 2 |"


def test_pipe_escaped_and_recovered():
    m = TableModel(("h",), (("a|b",),))
    md = model_to_markdown(m)
    assert "a\\|b" in md
    assert parse_pipe_table(md) == m


def test_colspan_duplicates_cell():
    m = html_table_to_model('<table><tr><td colspan="3">x</td></tr><tr><td>1</td><td>2</td><td>3</td></tr></table>')
    assert m.header == ("x", "x", "x")


def test_ragged_rows_padded():
    m = html_table_to_model("<table><tr><td>a</td><td>b</td></tr><tr><td>1</td></tr></table>")
    assert m.rows == (("1", ""),)


def test_entities_and_tags():
    m = html_table_to_model("<table><tr><td><b>R&amp;D</b> &lt;5<br>x</td></tr></table>")
    assert m.header == ("R&D <5 x",)


@pytest.mark.parametrize(
    "src",
    [
        "<p>no table here</p>",
        "<table><tr><td><table><tr><td>x</td></tr></table></td></tr></table>",
        "<table><tr><td>a</td></tr></table><table><tr><td>b</td></tr></table>",
        '<table><tr><td rowspan="2">a</td></tr><tr></tr></table>',
        "<table></table>",
    ],
)
def test_errors(src):
    with pytest.raises(TableError):
        html_table_to_model(src)


def test_newline_in_cell_rejected():
    with pytest.raises(TableError):
        TableModel(("a\nb",))


def test_golden_corpus_present():
    assert len(TABLES) == 50
    texts = [p.read_text() for p in TABLES]
    assert any("colspan" in t for t in texts)
    assert any("|" in t for t in texts)


@pytest.mark.parametrize("path", TABLES, ids=lambda p: p.stem)
def test_golden_table(path):
    expected = json.loads(path.with_name(path.stem + ".expected.json").read_text(encoding="utf-8"))
    model = html_table_to_model(path.read_text(encoding="utf-8"))
    assert model == TableModel(tuple(expected["header"]), tuple(map(tuple, expected["rows"])))
    md = model_to_markdown(model)
    assert parse_pipe_table(md) == model
    assert Counter(c for c in parse_pipe_table(md).cells() if c) == Counter(c for c in model.cells() if c)


cell_text = st.text(st.characters(blacklist_categories=("Cs", "Cc", "Zl", "Zp")), max_size=12).map(
    lambda s: " ".join(s.split())
)


@given(st.lists(st.lists(cell_text, min_size=1, max_size=5), min_size=1, max_size=6))
def test_markdown_reparse_property(grid):
    m = TableModel(tuple(grid[0]), tuple(tuple(r) for r in grid[1:]))
    assert parse_pipe_table(model_to_markdown(m)) == m


def _pubtabnet_records():
    with open(DATA / "pubtabnet_sample.jsonl", encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


@pytest.mark.parametrize("rec", _pubtabnet_records(), ids=lambda r: r["filename"])
def test_pubtabnet_cells_flatten(rec):
    model = html_table_to_model(pubtabnet_html(rec))
    # expected cells: each annotation cell, plain text, repeated by its colspan
    spans, tokens = [], rec["html"]["structure"]["tokens"]
    for i, tok in enumerate(tokens):
        if tok == "<td>":
            spans.append(1)
        elif tok == "<td":
            spans.append(int(tokens[i + 1].split('"')[1]))
    expected = []
    for span, cell in zip(spans, rec["html"]["cells"]):
        text = "".join(t for t in cell["tokens"] if not (t.startswith("<") and t.endswith(">") and len(t) > 1))
        expected += [" ".join(text.split())] * span
    assert model.cells() == expected
    assert parse_pipe_table(model_to_markdown(model)) == model


def test_pubtabnet_cell_shortage():
    rec = {"html": {"structure": {"tokens": ["<tr>", "<td>", "</td>", "</tr>"]}, "cells": []}}
    with pytest.raises(TableError):
        pubtabnet_html(rec)


# -- charts ---------------------------------------------------------------------


def test_chart_example():
    md = chart_to_markdown(ChartSeries((2020, 2021), (("Sales", (5, 7)),)))
    assert md.split("\n")[2:] == ["| 2020 | 5 |", "| 2021 | 7 |"]


def test_chart_zero_series():
    assert chart_to_markdown(ChartSeries(("a", "b"))) == "| Category |\n| --- |\n| a |\n| b |"


def test_chart_length_mismatch():
    with pytest.raises(TableError):
        ChartSeries(("a", "b"), (("s", (1,)),))
    with pytest.raises(TableError):
        ChartSeries.from_json({"series": []})


@pytest.mark.parametrize("v, s", [(5, "5"), (7.0, "7"), (2.5, "2.50"), (0.125, "0.13"), (-1.125, "-1.13"), (1e6, "1000000")])
def test_format_number(v, s):
    assert format_number(v) == s


@pytest.mark.parametrize("path", CHARTS, ids=lambda p: p.stem)
def test_chart_golden(path):
    assert chart_to_markdown(load_chart(path)) + "\n" == path.with_suffix(".md").read_text(encoding="utf-8")


def test_html_to_markdown_wrapper():
    src = "<table><thead><tr><th>k</th></tr></thead><tbody><tr><td>v</td></tr></tbody></table>"
    assert html_to_markdown(src) == "| k |\n| --- |\n| v |"
