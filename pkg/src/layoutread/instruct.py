"""Single-turn instruction records for the four layout-aware pretraining tasks.

Task I   text recognition    -> reading-order words
Task II  text localization   -> one ``text [x0, y0, x1, y1]`` line per box
Task III page parsing        -> page Markdown / layout text, verbatim
Task IV  layout recovery     -> instruction carries the Task II OCR block,
                                response is the recovered layout
"""

from __future__ import annotations

import enum
import json
import logging
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from . import templates
from .bbox import format_line, normalize
from .core import Page
from .layout import LayoutConfig, reading_order, recover_layout
from .util import derive_seed

log = logging.getLogger(__name__)

IMAGE_TOKEN = "<image>"


class Task(enum.Enum):
    TextRecognition = 1
    TextLocalization = 2
    PageParsing = 3
    LayoutRecovery = 4


POOLS: dict[Task, tuple[str, ...]] = {
    Task.TextRecognition: templates.TEXT_RECOGNITION_TEMPLATES,
    Task.TextLocalization: templates.TEXT_LOCALIZATION_TEMPLATES,
    Task.PageParsing: templates.PAGE_PARSER_TEMPLATES,
    Task.LayoutRecovery: templates.LAYOUT_RECONSTRUCTION_TEMPLATES,
}


class EmptyPageError(ValueError):
    pass


@dataclass(frozen=True)
class InstructionRecord:
    id: str
    image_ref: str
    task: Task
    instruction: str
    response: str

    def __post_init__(self):
        if not self.response:
            raise ValueError(f"record {self.id}: empty response")

    def to_conversation(self) -> dict:
        return {
            "id": self.id,
            "image": self.image_ref,
            "conversations": [
                {"from": "human", "value": f"{IMAGE_TOKEN}\n{self.instruction}"},
                {"from": "gpt", "value": self.response},
            ],
        }


def record_seed(root_seed: int, task: Task, image_id: str) -> int:
    """Per-record seed; depends only on (root seed, task, image id)."""
    return derive_seed(root_seed, "instruct", task.value, image_id)


def _pick(task: Task, rng_seed: int) -> str:
    return random.Random(rng_seed).choice(POOLS[task])


def _require_boxes(page: Page) -> None:
    if not page.boxes:
        raise EmptyPageError(f"page {page.image_id!r} has no text boxes")


def _record_id(image_ref: str, task: Task) -> str:
    return f"{image_ref}-task{task.value}"


def localization_block(page: Page, cfg: LayoutConfig = LayoutConfig()) -> str:
    return "\n".join(
        format_line(b.text, normalize(b.rect, page.width_px, page.height_px))
        for b in reading_order(page, cfg)
    )


def gen_task1(page: Page, rng_seed: int, cfg: LayoutConfig = LayoutConfig()) -> InstructionRecord:
    _require_boxes(page)
    task = Task.TextRecognition
    return InstructionRecord(
        _record_id(page.image_id, task),
        page.image_id,
        task,
        _pick(task, rng_seed),
        " ".join(b.text for b in reading_order(page, cfg)),
    )


def gen_task2(page: Page, rng_seed: int, cfg: LayoutConfig = LayoutConfig()) -> InstructionRecord:
    _require_boxes(page)
    task = Task.TextLocalization
    return InstructionRecord(
        _record_id(page.image_id, task), page.image_id, task, _pick(task, rng_seed), localization_block(page, cfg)
    )


def gen_task3(page_markdown: str, rng_seed: int, image_ref: str) -> InstructionRecord:
    if not page_markdown or not page_markdown.strip():
        raise EmptyPageError(f"{image_ref}: empty page markdown")
    task = Task.PageParsing
    return InstructionRecord(_record_id(image_ref, task), image_ref, task, _pick(task, rng_seed), page_markdown)


def gen_task4(page: Page, rng_seed: int, cfg: LayoutConfig = LayoutConfig()) -> InstructionRecord:
    _require_boxes(page)
    task = Task.LayoutRecovery
    instruction = f"{_pick(task, rng_seed)}\n{localization_block(page, cfg)}"
    return InstructionRecord(
        _record_id(page.image_id, task), page.image_id, task, instruction, recover_layout(page, cfg).rendered
    )


def template_of(record: InstructionRecord) -> str:
    """The pool template a record's instruction was built from."""
    if record.task is Task.LayoutRecovery:
        return record.instruction.split("\n", 1)[0]
    return record.instruction


def dumps_records(records: Iterable[InstructionRecord]) -> str:
    return json.dumps([r.to_conversation() for r in records], ensure_ascii=False, indent=2) + "\n"


def write_records(records: Iterable[InstructionRecord], path: str | Path) -> int:
    records = list(records)
    Path(path).write_text(dumps_records(records), encoding="utf-8")
    return len(records)


def read_conversations(path: str | Path) -> list[dict]:
    return json.loads(Path(path).read_text(encoding="utf-8"))
