from __future__ import annotations

import random
from pathlib import Path

import pytest

from layoutread.core import Page, TextBox

ROOT = Path(__file__).resolve().parents[1]
DATA = Path(__file__).parent / "data"
SCHEMAS = ROOT / "docs" / "schemas"

_ALNUM = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"


def random_word(rng: random.Random, lo: int = 1, hi: int = 10) -> str:
    return "".join(rng.choice(_ALNUM) for _ in range(rng.randint(lo, hi)))


def random_page(rng: random.Random, max_boxes: int = 30, image_id: str = "fuzz") -> Page:
    """Fuzzed geometry: any sizes, overlaps and jitter, texts with internal spaces."""
    w, h = rng.randint(50, 3000), rng.randint(50, 3000)
    boxes = []
    for _ in range(rng.randint(0, max_boxes)):
        bw = rng.uniform(0.5, w / 2)
        bh = rng.uniform(0.5, h / 4)
        x0 = rng.uniform(0, w - bw)
        y0 = rng.uniform(0, h - bh)
        words = [random_word(rng) for _ in range(rng.choice([1, 1, 1, 2, 3]))]
        boxes.append(TextBox.from_rect(" ".join(words), (x0, y0, x0 + bw, y0 + bh), rng.random()))
    return Page(image_id, w, h, tuple(boxes))


def is_tie_free(page: Page) -> bool:
    ys = [b.rect.y_center for b in page.boxes]
    xs = [b.rect.x_min for b in page.boxes]
    return len(set(ys)) == len(ys) and len(set(xs)) == len(xs)


@pytest.fixture
def rng():
    return random.Random(1234)


# -- acceptance summary ----------------------------------------------------------

ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    key = report.nodeid.split("::")[-1]
    detail = ""
    for name, content in report.user_properties:
        if name == "criterion":
            detail = content
    ACCEPTANCE_RESULTS[key] = (report.passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key, (ok, detail) in sorted(ACCEPTANCE_RESULTS.items()):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}  {detail}")
