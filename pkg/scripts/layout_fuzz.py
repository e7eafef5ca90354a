"""Stress the layout engine: grid round trips and fuzzed token preservation.

    python scripts/layout_fuzz.py --grids 5000 --pages 20000 --seed 0

Prints exact-match counts and timings; exits non-zero on any mismatch and
dumps the first failing input as OCR-JSON for inspection.
"""

import argparse
import random
import sys
import time

from layoutread.core import Page, TextBox, write_ocr_json
from layoutread.layout import collapse_ws, reading_order, recover_layout
from layoutread.synth import grid_page, random_grid


def fuzz_page(rng, image_id):
    w, h = rng.randint(50, 3000), rng.randint(50, 3000)
    boxes = []
    for _ in range(rng.randint(1, 40)):
        bw, bh = rng.uniform(0.5, w / 2), rng.uniform(0.5, h / 4)
        x0, y0 = rng.uniform(0, w - bw), rng.uniform(0, h - bh)
        text = " ".join("".join(rng.choice("abcxyz0123") for _ in range(rng.randint(1, 8)))
                        for _ in range(rng.randint(1, 3)))
        boxes.append(TextBox.from_rect(text, (x0, y0, x0 + bw, y0 + bh)))
    return Page(image_id, w, h, tuple(boxes))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--grids", type=int, default=1000)
    ap.add_argument("--pages", type=int, default=10000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    bad = 0

    t0 = time.perf_counter()
    for i in range(args.grids):
        lines = random_grid(rng)
        page = grid_page(lines, image_id=f"grid{i}")
        if list(recover_layout(page).lines) != lines:
            bad += 1
            if bad == 1:
                write_ocr_json(page, "grid_failure.json")
    print(f"grids: {args.grids - bad}/{args.grids} exact in {time.perf_counter() - t0:.2f}s")

    t0, fails = time.perf_counter(), 0
    for i in range(args.pages):
        page = fuzz_page(rng, f"fuzz{i}")
        want = collapse_ws(" ".join(b.text for b in reading_order(page)))
        if collapse_ws(recover_layout(page).rendered) != want:
            fails += 1
            if fails == 1:
                write_ocr_json(page, "fuzz_failure.json")
    print(f"fuzz: {args.pages - fails}/{args.pages} token-preserving in {time.perf_counter() - t0:.2f}s")
    sys.exit(1 if bad or fails else 0)


if __name__ == "__main__":
    main()
