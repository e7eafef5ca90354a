"""OCR page model and ingestion of OCR-engine output.

Two on-disk forms are accepted:

* the bare PaddleOCR list ``[[[x, y] x4], [text, confidence]], ...]``
  (optionally wrapped in one more list, as PaddleOCR returns per-image);
* the self-contained sidecar ``{"image_id", "width", "height", "detections"}``.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

log = logging.getLogger(__name__)

Point = tuple[float, float]


class OCRFormatError(ValueError):
    """Input is not valid OCR-JSON. ``lineno`` is set for JSON syntax errors."""

    def __init__(self, message: str, lineno: int | None = None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class DegenerateBoxError(ValueError):
    pass


def _check_coord(v: float) -> None:
    if not math.isfinite(v) or v < 0:
        raise ValueError(f"coordinate must be finite and >= 0, got {v!r}")


@dataclass(frozen=True)
class Rect:
    x_min: float
    y_min: float
    x_max: float
    y_max: float

    def __post_init__(self):
        for v in (self.x_min, self.y_min, self.x_max, self.y_max):
            _check_coord(v)
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise DegenerateBoxError(f"empty rect {self.as_tuple()}")

    @property
    def width(self) -> float:
        return self.x_max - self.x_min

    @property
    def height(self) -> float:
        return self.y_max - self.y_min

    @property
    def y_center(self) -> float:
        return (self.y_min + self.y_max) / 2

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.x_min, self.y_min, self.x_max, self.y_max)


@dataclass(frozen=True)
class QuadBox:
    """Four corner points, conventionally TL, TR, BR, BL. Any order is accepted."""

    p1: Point
    p2: Point
    p3: Point
    p4: Point

    def __post_init__(self):
        for p in self.points:
            _check_coord(p[0])
            _check_coord(p[1])
        xs = [p[0] for p in self.points]
        ys = [p[1] for p in self.points]
        if not (min(xs) < max(xs) and min(ys) < max(ys)):
            raise DegenerateBoxError(f"degenerate quad {self.points}")

    @property
    def points(self) -> tuple[Point, Point, Point, Point]:
        return (self.p1, self.p2, self.p3, self.p4)

    @classmethod
    def from_points(cls, pts: Sequence[Sequence[float]]) -> "QuadBox":
        if len(pts) != 4:
            raise ValueError(f"quad needs 4 points, got {len(pts)}")
        return cls(*(tuple(float(c) for c in p) for p in pts))

    @classmethod
    def from_rect(cls, r: Rect) -> "QuadBox":
        return cls(
            (r.x_min, r.y_min), (r.x_max, r.y_min), (r.x_max, r.y_max), (r.x_min, r.y_max)
        )


def hull(quad: QuadBox) -> Rect:
    """Smallest axis-aligned rectangle containing all four points."""
    xs = [p[0] for p in quad.points]
    ys = [p[1] for p in quad.points]
    return Rect(min(xs), min(ys), max(xs), max(ys))


@dataclass(frozen=True)
class TextBox:
    text: str
    quad: QuadBox
    confidence: float = 1.0
    rect: Rect = field(init=False)

    def __post_init__(self):
        if not self.text or not self.text.strip():
            raise ValueError("text box needs non-empty text")
        if "\n" in self.text or "\r" in self.text:
            raise ValueError(f"text box text contains a newline: {self.text!r}")
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence out of [0, 1]: {self.confidence}")
        object.__setattr__(self, "rect", hull(self.quad))

    @classmethod
    def from_rect(cls, text: str, rect: Rect | Sequence[float], confidence: float = 1.0) -> "TextBox":
        if not isinstance(rect, Rect):
            rect = Rect(*(float(v) for v in rect))
        return cls(text, QuadBox.from_rect(rect), confidence)


@dataclass(frozen=True)
class Page:
    image_id: str
    width_px: int
    height_px: int
    boxes: tuple[TextBox, ...] = ()
    # ingestion diagnostics; not part of page identity
    warnings: tuple[str, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if int(self.width_px) <= 0 or int(self.height_px) <= 0:
            raise ValueError(f"page dimensions must be positive, got {self.width_px}x{self.height_px}")
        object.__setattr__(self, "boxes", tuple(self.boxes))
        for b in self.boxes:
            r = b.rect
            if r.x_max > self.width_px or r.y_max > self.height_px:
                raise ValueError(
                    f"box {b.text!r} {r.as_tuple()} outside {self.width_px}x{self.height_px} page"
                )


def _clamp(v: float, hi: float) -> float:
    return min(max(v, 0.0), float(hi))


def parse_detections(
    detections: Iterable[Any],
    image_id: str,
    width_px: int,
    height_px: int,
    min_confidence: float | None = None,
) -> Page:
    """Build a Page from already-decoded PaddleOCR-style detections."""
    boxes: list[TextBox] = []
    warnings: list[str] = []
    for i, det in enumerate(detections):
        try:
            pts, (text, conf) = det
            raw = [(float(p[0]), float(p[1])) for p in pts]
            conf = float(conf)
        except (TypeError, ValueError) as exc:
            raise OCRFormatError(f"detection {i} is not [[[x,y]x4], [text, conf]]: {exc}") from None
        if len(raw) != 4:
            raise OCRFormatError(f"detection {i} has {len(raw)} points, expected 4")
        if not all(math.isfinite(c) for p in raw for c in p):
            warnings.append(f"detection {i}: non-finite coordinate, skipped")
            continue
        if not isinstance(text, str) or not text.strip():
            warnings.append(f"detection {i}: empty text, skipped")
            continue
        text = " ".join(text.split()) if ("\n" in text or "\r" in text) else text.strip()
        if min_confidence is not None and conf < min_confidence:
            warnings.append(f"detection {i}: confidence {conf} below {min_confidence}, skipped")
            continue
        pts_c = [(_clamp(x, width_px), _clamp(y, height_px)) for x, y in raw]
        if pts_c != raw:
            warnings.append(f"detection {i}: coordinates clamped to image bounds")
        try:
            quad = QuadBox(*pts_c)
        except DegenerateBoxError:
            warnings.append(f"detection {i}: degenerate quad, skipped")
            continue
        boxes.append(TextBox(text, quad, min(max(conf, 0.0), 1.0)))
    for w in warnings:
        log.debug("%s: %s", image_id, w)
    return Page(image_id, int(width_px), int(height_px), tuple(boxes), tuple(warnings))


def _unwrap_paddle(data: list) -> list:
    # PaddleOCR returns one list per input image: [[det, det, ...]] or [None].
    if len(data) == 1 and data[0] is None:
        return []
    if (
        len(data) == 1
        and isinstance(data[0], list)
        and data[0]
        and isinstance(data[0][0], list)
        and data[0][0]
        and isinstance(data[0][0][0], list)
        and data[0][0][0]
        and isinstance(data[0][0][0][0], list)
    ):
        return data[0]
    return data


def load_ocr_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise OCRFormatError(exc.msg, lineno=exc.lineno) from None


def ingest_ocr(
    path: str | Path,
    image_id: str | None = None,
    width_px: int | None = None,
    height_px: int | None = None,
    min_confidence: float | None = None,
) -> Page:
    """Read an OCR-JSON file into a Page.

    Explicit ``image_id``/``width_px``/``height_px`` override sidecar values.
    A bare detection list requires width and height to be passed in.
    """
    path = Path(path)
    data = load_ocr_json(path.read_text(encoding="utf-8"))
    if isinstance(data, dict):
        try:
            detections = data["detections"]
        except KeyError:
            raise OCRFormatError("sidecar object has no 'detections' key") from None
        image_id = image_id if image_id is not None else data.get("image_id")
        width_px = width_px if width_px is not None else data.get("width")
        height_px = height_px if height_px is not None else data.get("height")
    elif isinstance(data, list):
        detections = _unwrap_paddle(data)
    else:
        raise OCRFormatError(f"expected a JSON array or object, got {type(data).__name__}")
    if width_px is None or height_px is None:
        raise OCRFormatError(f"{path}: page width/height unknown (use the sidecar form or pass them)")
    if not isinstance(detections, list):
        raise OCRFormatError("'detections' must be an array")
    return parse_detections(
        detections, image_id if image_id is not None else path.stem, width_px, height_px, min_confidence
    )


def page_to_ocr_json(page: Page) -> dict:
    """Sidecar form of ``page``; ``ingest_ocr`` on the dump gives back an equal Page."""
    return {
        "image_id": page.image_id,
        "width": page.width_px,
        "height": page.height_px,
        "detections": [
            [[list(p) for p in b.quad.points], [b.text, b.confidence]] for b in page.boxes
        ],
    }


def write_ocr_json(page: Page, path: str | Path) -> None:
    Path(path).write_text(json.dumps(page_to_ocr_json(page), ensure_ascii=False) + "\n", encoding="utf-8")
