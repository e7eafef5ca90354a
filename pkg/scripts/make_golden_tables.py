"""Write the golden HTML tables used by the table-conversion tests.

Each ``tNN.html`` comes with ``tNN.expected.json`` holding the header and rows
the generator laid out (colspan cells already duplicated, ragged rows padded),
so the expected model never depends on the parser under test.

    python scripts/make_golden_tables.py tests/data/tables
"""

import html
import json
import random
import sys
from pathlib import Path

WORDS = [
    "Revenue", "Cost", "Q1", "Q2", "2019", "2020", "total", "n/a", "12.5%", "−3", "Model", "Acc.",
    "F1", "BLEU", "x|y", "a | b", "back\\slash", "R&D", "<5", "naïve", "東京", "p < 0.05", "",
    "Mean ± SD", "3,400", "α", "ID", "Name", "pipe|", "|lead",
]


def cell_text(rng):
    return " ".join(rng.choice(WORDS) for _ in range(rng.choice([1, 1, 1, 2, 3]))).strip()


def render_cell(tag, text, span, rng):
    body = html.escape(text, quote=False)
    if body and rng.random() < 0.2:
        body = f"<b>{body}</b>"
    if body and rng.random() < 0.1:
        body = f"  {body}\n "
    attr = f' colspan="{span}"' if span > 1 else ""
    return f"<{tag}{attr}>{body}</{tag}>"


def make_table(rng, idx):
    ncols = rng.randint(1, 6)
    nrows = rng.randint(0, 8)
    use_thead = rng.random() < 0.6
    rows_html, grid = [], []
    for r in range(nrows + 1):
        tag = "th" if r == 0 and rng.random() < 0.7 else "td"
        cells, remaining = [], ncols
        ragged = r > 0 and rng.random() < 0.15
        limit = rng.randint(1, ncols) if ragged else ncols
        out_row = []
        while remaining > ncols - limit:
            span = rng.randint(1, min(3, remaining - (ncols - limit))) if rng.random() < 0.25 else 1
            text = cell_text(rng)
            cells.append(render_cell(tag, text, span, rng))
            out_row.extend([" ".join(text.split())] * span)
            remaining -= span
        grid.append(out_row + [""] * (ncols - len(out_row)))
        rows_html.append("<tr>" + "".join(cells) + "</tr>")
    if idx == 0:
        # fixed pipe-in-cell and colspan case
        rows_html = ['<tr><th colspan="2">x|y</th></tr>', "<tr><td>a|b</td><td>c</td></tr>"]
        grid = [["x|y", "x|y"], ["a|b", "c"]]
        use_thead = False
    if use_thead:
        body = "<thead>" + rows_html[0] + "</thead><tbody>" + "".join(rows_html[1:]) + "</tbody>"
    else:
        body = "".join(rows_html)
    wrapper = rng.choice(["{}", "<div class='t'>{}</div>", "<html><body><p>Table</p>{}</body></html>"])
    return wrapper.format(f"<table>{body}</table>"), {"header": grid[0], "rows": grid[1:]}


def main(out_dir):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(20240501)
    for i in range(50):
        src, expected = make_table(rng, i)
        (out / f"t{i:02d}.html").write_text(src + "\n", encoding="utf-8")
        (out / f"t{i:02d}.expected.json").write_text(
            json.dumps(expected, ensure_ascii=False, indent=1) + "\n", encoding="utf-8"
        )


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/data/tables")
