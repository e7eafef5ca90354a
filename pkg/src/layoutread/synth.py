"""Synthetic text-recognition benchmark: rendered images with exact ground truth.

Three sweeps are supported: font size on a plain background, font size on a
natural-image background, and word count on a plain background. Font size is
the ink height of a capital ``H`` (cap height to baseline), and point sizes
are calibrated per font to hit it. Every placed phrase is recorded with its
box: x spans the pen advance of the phrase, y spans the cap band of its line.

Also here: an exact monospace geometry model used to build OCR pages whose
layout text is known in advance.
"""

from __future__ import annotations

import enum
import functools
import io
import json
import logging
import math
import random
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path
from typing import Sequence

import numpy as np
from PIL import Image, ImageDraw, ImageFont, ImageOps

from .core import Page, TextBox
from .util import config_hash, derive_seed

log = logging.getLogger(__name__)

DEFAULT_FONT_SIZES = (4, 5, 6, 7, 8, 9, 10, 12, 16, 24, 32)
DEFAULT_WORD_COUNTS = (10, 25, 50, 100, 200, 400)
DEFAULT_SEEDS = (0, 1, 2)
DEFAULT_CANVAS = (1024, 1024)
DEFAULT_PHRASES_PER_IMAGE = 8
DEFAULT_RUN_FONT_PX = 12

INK_THRESHOLD = 128  # pixel value below this (on white) counts as ink
CALIBRATION_GLYPH = "H"
IMAGE_EXTS = (".png", ".jpg", ".jpeg", ".bmp", ".webp")
FONT_EXTS = (".ttf", ".otf")


class TextOverflowError(ValueError):
    """Requested text does not fit on the canvas."""


class Mode(str, enum.Enum):
    PlainBG_FontSweep = "PlainBG_FontSweep"
    NaturalBG_FontSweep = "NaturalBG_FontSweep"
    PlainBG_WordCountSweep = "PlainBG_WordCountSweep"

    @property
    def is_font_sweep(self) -> bool:
        return self is not Mode.PlainBG_WordCountSweep

    @property
    def sweep_axis(self) -> str:
        return "font_px" if self.is_font_sweep else "word_count"


# -- assets ----------------------------------------------------------------------


def _data(name: str):
    return resources.files("layoutread") / "data" / name


def default_font() -> Path:
    return Path(str(_data("fonts/DejaVuSans.ttf")))


def mono_font() -> Path:
    return Path(str(_data("fonts/DejaVuSansMono.ttf")))


@functools.lru_cache(maxsize=None)
def ml_terms() -> tuple[str, ...]:
    return tuple(l.strip() for l in _data("ml_terms.txt").read_text("utf-8").splitlines() if l.strip())


@functools.lru_cache(maxsize=None)
def corpus_words() -> tuple[str, ...]:
    return tuple(_data("corpus.txt").read_text("utf-8").split())


# -- font calibration --------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _font(path: str, size: float) -> ImageFont.FreeTypeFont:
    return ImageFont.truetype(path, size)


def measure_ink_rows(img: Image.Image, threshold: int = INK_THRESHOLD) -> tuple[int, int] | None:
    """(first, last) row containing a pixel darker than ``threshold``; None if blank."""
    a = np.asarray(img.convert("L"))
    rows = np.flatnonzero((a < threshold).any(axis=1))
    return (int(rows[0]), int(rows[-1])) if rows.size else None


@functools.lru_cache(maxsize=None)
def cap_band(font_path: str, size: int) -> tuple[int, int]:
    """Ink rows of the calibration glyph relative to the baseline: (top, bottom + 1)."""
    font = _font(font_path, size)
    ascent, descent = font.getmetrics()
    base = ascent + 4
    img = Image.new("L", (int(size * 2) + 16, base + descent + 8), 255)
    ImageDraw.Draw(img).text((4, base), CALIBRATION_GLYPH, font=font, fill=0, anchor="ls")
    rows = measure_ink_rows(img)
    if rows is None:
        return (0, 0)
    return (rows[0] - base, rows[1] + 1 - base)


@functools.lru_cache(maxsize=None)
def calibrate(font_path: str, font_px: int) -> int:
    """Integer font size whose cap ink height is closest to ``font_px`` (smaller on ties)."""
    if font_px < 1:
        raise ValueError("font_px must be >= 1")
    top, bottom = cap_band(font_path, 200)
    guess = max(1, round(font_px * 200 / max(bottom - top, 1)))
    best = None
    for size in range(max(1, guess - 4), guess + 5):
        t, b = cap_band(font_path, size)
        err = abs((b - t) - font_px)
        if best is None or err < best[0]:
            best = (err, size)
    return best[1]


# -- conditions and manifest ----------------------------------------------------------


@dataclass(frozen=True)
class BenchCondition:
    mode: Mode
    font_px: int
    word_count: int
    seed: int = 0
    canvas_px: tuple[int, int] = DEFAULT_CANVAS
    background_ref: str | None = None
    font_path: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "canvas_px", tuple(int(v) for v in self.canvas_px))
        if self.font_px < 1:
            raise ValueError(f"font_px must be >= 1, got {self.font_px}")
        if self.word_count < 1:
            raise ValueError(f"word_count must be >= 1, got {self.word_count}")
        if min(self.canvas_px) < 1:
            raise ValueError(f"bad canvas {self.canvas_px}")
        if (self.mode is Mode.NaturalBG_FontSweep) != (self.background_ref is not None):
            raise ValueError("background_ref is required for, and only for, NaturalBG_FontSweep")

    @property
    def stem(self) -> str:
        return f"{self.mode.value}_fs{self.font_px:02d}_wc{self.word_count:03d}_s{self.seed}"


@dataclass
class ManifestEntry:
    image: str
    mode: str
    font_px: int
    word_count: int
    seed: int
    phrases: list[str]
    boxes: list[list[float]]
    font: str = ""
    font_size: int = 0
    cap_px: int = 0
    canvas: list[int] = field(default_factory=lambda: list(DEFAULT_CANVAS))
    background: str | None = None
    overlay: list[bool] = field(default_factory=list)
    suite: str = ""

    def __post_init__(self):
        if len(self.phrases) != len(self.boxes):
            raise ValueError("every phrase needs exactly one box")

    def to_json(self) -> str:
        return json.dumps(asdict(self), ensure_ascii=False)

    @classmethod
    def from_dict(cls, d: dict) -> "ManifestEntry":
        return cls(**{k: d[k] for k in cls.__dataclass_fields__ if k in d})

    def to_page(self, image_id: str | None = None) -> Page:
        boxes = tuple(TextBox.from_rect(p, b) for p, b in zip(self.phrases, self.boxes))
        return Page(image_id or self.image, self.canvas[0], self.canvas[1], boxes)


def read_manifest(path: str | Path) -> list[ManifestEntry]:
    out = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            if line.strip():
                out.append(ManifestEntry.from_dict(json.loads(line)))
    return out


def write_manifest(entries: Sequence[ManifestEntry], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for e in entries:
            f.write(e.to_json() + "\n")


# -- rendering ---------------------------------------------------------------------------


def sample_phrases(cond: BenchCondition, lexicon: Sequence[str] | None = None) -> list[str]:
    rng = random.Random(derive_seed(cond.seed, "phrases", cond.mode.value, cond.font_px, cond.word_count))
    if cond.mode.is_font_sweep:
        pool = list(lexicon if lexicon is not None else ml_terms())
        if not pool:
            raise ValueError("empty lexicon")
        k = cond.word_count
        return rng.sample(pool, k) if k <= len(pool) else rng.choices(pool, k=k)
    words = list(lexicon if lexicon is not None else corpus_words())
    if len(words) < cond.word_count:
        raise ValueError(f"corpus has {len(words)} words, {cond.word_count} requested")
    start = rng.randrange(len(words) - cond.word_count + 1)
    return words[start : start + cond.word_count]


@dataclass(frozen=True)
class _Placement:
    phrase: str
    x: int
    baseline: int
    length: float


def _flow(phrases, font, canvas, margin, gap) -> list[_Placement]:
    width, height = canvas
    ascent, descent = font.getmetrics()
    pitch = ascent + descent + max(1, math.ceil(0.25 * (ascent + descent)))
    x, baseline = margin, margin + ascent
    placed = []
    for ph in phrases:
        length = font.getlength(ph)
        if margin + length > width - margin:
            raise TextOverflowError(
                f"phrase {ph!r} is {length:.0f}px wide, canvas {width}px; use a larger canvas"
            )
        if x > margin and x + length > width - margin:
            x, baseline = margin, baseline + pitch
        if baseline + descent > height - margin:
            raise TextOverflowError(
                f"{len(phrases)} phrases do not fit a {width}x{height} canvas at this font size;"
                " use a larger canvas"
            )
        placed.append(_Placement(ph, x, baseline, length))
        x = math.ceil(x + length + gap)
    return placed


def _load_background(ref: str, canvas) -> Image.Image:
    with Image.open(ref) as im:
        return ImageOps.fit(im.convert("RGB"), canvas, method=Image.Resampling.BICUBIC)


def _luma(region: np.ndarray) -> np.ndarray:
    return region[..., 0] * 0.299 + region[..., 1] * 0.587 + region[..., 2] * 0.114


MIN_CONTRAST = 100.0
OVERLAY_ALPHA = 150


def render_condition(
    cond: BenchCondition, lexicon: Sequence[str] | None = None
) -> tuple[Image.Image, ManifestEntry]:
    """Render one condition. The returned entry's ``image`` field is the file stem."""
    font_path = cond.font_path or str(default_font())
    size = calibrate(font_path, cond.font_px)
    font = _font(font_path, size)
    top, bottom = cap_band(font_path, size)
    phrases = sample_phrases(cond, lexicon)
    space = font.getlength(" ")
    gap = 2 * space if cond.mode.is_font_sweep else space
    margin = max(8, cond.font_px)
    placed = _flow(phrases, font, cond.canvas_px, margin, gap)

    ascent, descent = font.getmetrics()
    overlay = []
    if cond.mode is Mode.NaturalBG_FontSweep:
        img = _load_background(cond.background_ref, cond.canvas_px)
        base = np.asarray(img, dtype=np.float64)
        shade = Image.new("RGBA", img.size, (0, 0, 0, 0))
        sdraw = ImageDraw.Draw(shade)
        colors = []
        for p in placed:
            x0, y0 = p.x, max(0, p.baseline - ascent)
            x1, y1 = min(img.width, math.ceil(p.x + p.length)), min(img.height, p.baseline + descent)
            lum = _luma(base[y0:y1, x0:x1])
            mean = float(lum.mean()) if lum.size else 255.0
            fill = (0, 0, 0) if mean >= 128 else (255, 255, 255)
            contrast = abs(mean - (0 if fill[0] == 0 else 255))
            needs = contrast < MIN_CONTRAST or (lum.size and float(lum.std()) > 64)
            if needs:
                sdraw.rectangle([x0 - 2, y0 - 1, x1 + 2, y1 + 1], fill=(0, 0, 0, OVERLAY_ALPHA))
                fill = (255, 255, 255)
            overlay.append(bool(needs))
            colors.append(fill)
        img = Image.alpha_composite(img.convert("RGBA"), shade).convert("RGB")
    else:
        img = Image.new("L", cond.canvas_px, 255)
        colors = [0] * len(placed)
        overlay = [False] * len(placed)

    draw = ImageDraw.Draw(img)
    boxes = []
    for p, color in zip(placed, colors):
        draw.text((p.x, p.baseline), p.phrase, font=font, fill=color, anchor="ls")
        boxes.append([float(p.x), float(p.baseline + top), p.x + p.length, float(p.baseline + bottom)])

    entry = ManifestEntry(
        image=cond.stem,
        mode=cond.mode.value,
        font_px=cond.font_px,
        word_count=cond.word_count,
        seed=cond.seed,
        phrases=[p.phrase for p in placed],
        boxes=boxes,
        font=Path(font_path).name,
        font_size=size,
        cap_px=bottom - top,
        canvas=list(cond.canvas_px),
        background=Path(cond.background_ref).name if cond.background_ref else None,
        overlay=overlay,
    )
    return img, entry


def render_phrase_alone(entry: ManifestEntry, index: int, font_path: str | None = None) -> Image.Image:
    """Re-render one manifest phrase by itself on a blank plain canvas at its recorded spot."""
    font_path = font_path or str(default_font())
    font = _font(font_path, entry.font_size)
    top, _ = cap_band(font_path, entry.font_size)
    x0, y0 = entry.boxes[index][:2]
    img = Image.new("L", tuple(entry.canvas), 255)
    ImageDraw.Draw(img).text((int(x0), int(y0) - top), entry.phrases[index], font=font, fill=0, anchor="ls")
    return img


def png_bytes(img: Image.Image) -> bytes:
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    return buf.getvalue()


# -- suites -------------------------------------------------------------------------------


@dataclass(frozen=True)
class Sweep:
    mode: Mode
    font_px: tuple[int, ...]
    word_count: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "font_px", _as_tuple(self.font_px))
        object.__setattr__(self, "word_count", _as_tuple(self.word_count))


def _as_tuple(v) -> tuple[int, ...]:
    return tuple(int(x) for x in v) if isinstance(v, (list, tuple)) else (int(v),)


@dataclass(frozen=True)
class SuiteSpec:
    sweeps: tuple[Sweep, ...] = ()
    seeds: tuple[int, ...] = DEFAULT_SEEDS
    canvas_px: tuple[int, int] = DEFAULT_CANVAS
    font: str | None = None
    font_dir: str | None = None
    background_dir: str | None = None

    @classmethod
    def default(cls, **kw) -> "SuiteSpec":
        return cls(
            sweeps=(
                Sweep(Mode.PlainBG_FontSweep, DEFAULT_FONT_SIZES, DEFAULT_PHRASES_PER_IMAGE),
                Sweep(Mode.PlainBG_WordCountSweep, DEFAULT_RUN_FONT_PX, DEFAULT_WORD_COUNTS),
            ),
            **kw,
        )

    @classmethod
    def from_dict(cls, d: dict) -> "SuiteSpec":
        sweeps = tuple(
            Sweep(
                s["mode"],
                s.get("font_px", DEFAULT_RUN_FONT_PX if s["mode"] == Mode.PlainBG_WordCountSweep.value
                      else list(DEFAULT_FONT_SIZES)),
                s.get("word_count", DEFAULT_PHRASES_PER_IMAGE if s["mode"] != Mode.PlainBG_WordCountSweep.value
                      else list(DEFAULT_WORD_COUNTS)),
            )
            for s in d.get("sweep", [])
        )
        return cls(
            sweeps=sweeps,
            seeds=_as_tuple(d.get("seeds", list(DEFAULT_SEEDS))),
            canvas_px=tuple(int(v) for v in d.get("canvas", DEFAULT_CANVAS)),
            font=d.get("font"),
            font_dir=d.get("font_dir"),
            background_dir=d.get("background_dir"),
        )

    def to_dict(self) -> dict:
        return {
            "sweep": [
                {"mode": s.mode.value, "font_px": list(s.font_px), "word_count": list(s.word_count)}
                for s in self.sweeps
            ],
            "seeds": list(self.seeds),
            "canvas": list(self.canvas_px),
            "font": self.font,
            "font_dir": self.font_dir,
            "background_dir": self.background_dir,
        }

    @property
    def suite_id(self) -> str:
        return config_hash(self.to_dict())


def load_suite_spec(path: str | Path) -> SuiteSpec:
    from ._toml import toml

    with open(path, "rb") as f:
        return SuiteSpec.from_dict(toml.load(f))


def _listdir(d: str | None, exts) -> list[str]:
    if not d:
        return []
    return sorted(str(p) for p in Path(d).iterdir() if p.suffix.lower() in exts)


def conditions(spec: SuiteSpec) -> list[BenchCondition]:
    fonts = _listdir(spec.font_dir, FONT_EXTS)
    backgrounds = _listdir(spec.background_dir, IMAGE_EXTS)
    out = []
    for sweep in spec.sweeps:
        if sweep.mode is Mode.NaturalBG_FontSweep and not backgrounds:
            raise ValueError("NaturalBG_FontSweep needs a background_dir with images")
        for fp in sweep.font_px:
            for wc in sweep.word_count:
                for seed in spec.seeds:
                    key = (sweep.mode.value, fp, wc)
                    font = spec.font
                    if fonts:
                        font = random.Random(derive_seed(seed, "font", *key)).choice(fonts)
                    bg = None
                    if sweep.mode is Mode.NaturalBG_FontSweep:
                        bg = random.Random(derive_seed(seed, "background", *key)).choice(backgrounds)
                    out.append(BenchCondition(sweep.mode, fp, wc, seed, spec.canvas_px, bg, font))
    return out


def gen_suite(spec: SuiteSpec, out_dir: str | Path, threads: int = 1, lexicon=None) -> list[ManifestEntry]:
    """Render every condition of ``spec`` into ``out_dir`` and write ``manifest.jsonl``."""
    out_dir = Path(out_dir)
    (out_dir / "images").mkdir(parents=True, exist_ok=True)
    conds = conditions(spec)
    suite = spec.suite_id

    def one(cond: BenchCondition) -> ManifestEntry:
        img, entry = render_condition(cond, lexicon)
        rel = f"images/{cond.stem}.png"
        img.save(out_dir / rel, format="PNG")
        entry.image = rel
        entry.suite = suite
        return entry

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            entries = list(pool.map(one, conds))
    else:
        entries = [one(c) for c in conds]
    write_manifest(entries, out_dir / "manifest.jsonl")
    log.info("rendered %d images into %s", len(entries), out_dir)
    return entries


# -- monospace geometry ------------------------------------------------------------------


_RUN = re.compile(r"\S+")


def grid_page(
    lines: Sequence[str],
    advance_px: float = 10.0,
    line_pitch_px: float = 24.0,
    box_height_px: float = 16.0,
    image_id: str = "grid",
) -> Page:
    """Exact boxes for text laid out on a monospace character grid.

    Each whitespace-free run becomes a box; column ``c`` starts at
    ``c * advance_px``. Page origin is the grid origin, so leading spaces
    are recoverable as indentation.
    """
    boxes = []
    for i, line in enumerate(lines):
        y0 = i * line_pitch_px + (line_pitch_px - box_height_px) / 2
        for m in _RUN.finditer(line):
            boxes.append(
                TextBox.from_rect(m.group(), (m.start() * advance_px, y0, m.end() * advance_px, y0 + box_height_px))
            )
    width = max((len(l) for l in lines), default=1) * advance_px
    return Page(image_id, max(1, math.ceil(width)), max(1, math.ceil(len(lines) * line_pitch_px)), tuple(boxes))


_WORD_CHARS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789.,:;-()%$#"


def random_grid(
    rng: random.Random,
    rows: tuple[int, int] = (1, 8),
    boxes_per_row: tuple[int, int] = (1, 6),
    max_gap: int = 40,
    max_indent: int = 40,
    word_len: tuple[int, int] = (1, 12),
) -> list[str]:
    """Random character-grid text: lines of words separated by 1..max_gap spaces."""
    out = []
    for _ in range(rng.randint(*rows)):
        parts = [" " * rng.randint(0, max_indent)]
        for j in range(rng.randint(*boxes_per_row)):
            if j:
                parts.append(" " * rng.randint(1, max_gap))
            parts.append("".join(rng.choice(_WORD_CHARS) for _ in range(rng.randint(*word_len))))
        out.append("".join(parts))
    return out


@functools.lru_cache(maxsize=None)
def mono_size_for_advance(advance_px: float, font_path: str | None = None) -> float:
    path = font_path or str(mono_font())
    unit = _font(path, 1000).getlength("M") / 1000
    return advance_px / unit


def render_grid(
    lines: Sequence[str], advance_px: float = 12.0, font_path: str | None = None, image_id: str = "grid"
) -> tuple[Image.Image, Page, float]:
    """Render grid text with a monospace font.

    Returns the image, a Page whose boxes are measured from the renderer, and
    the renderer's own advance width.
    """
    path = font_path or str(mono_font())
    font = _font(path, mono_size_for_advance(advance_px, path))
    advance = font.getlength("M")
    ascent, descent = font.getmetrics()
    pitch = ascent + descent + 4
    width = math.ceil(max((font.getlength(l) for l in lines), default=advance)) + 1
    img = Image.new("L", (width, pitch * len(lines) + 4), 255)
    draw = ImageDraw.Draw(img)
    boxes = []
    for i, line in enumerate(lines):
        baseline = i * pitch + ascent + 2
        draw.text((0, baseline), line, font=font, fill=0, anchor="ls")
        for m in _RUN.finditer(line):
            x0 = font.getlength(line[: m.start()])
            x1 = font.getlength(line[: m.end()])
            boxes.append(TextBox.from_rect(m.group(), (x0, baseline - ascent, x1, baseline + descent)))
    return img, Page(image_id, img.width, img.height, tuple(boxes)), advance
