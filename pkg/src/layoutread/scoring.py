"""Word-recognition accuracy over benchmark manifests.

Exact mode: a ground-truth phrase counts as detected when its tokens appear
contiguously in the model output. Both sides are lowercased, split on
whitespace and ASCII punctuation (intra-word hyphens kept), and stripped of
stop words. Top-k mode: a ground-truth word counts when it is among the
first k candidates of any ranked list.
"""

from __future__ import annotations

import csv
import functools
import io
import json
import math
import re
import string
from collections import defaultdict
from dataclasses import asdict, dataclass
from importlib import resources
from typing import Iterable, Sequence

from .synth import ManifestEntry, Mode

_PUNCT_NO_HYPHEN = "".join(c for c in string.punctuation if c != "-")
_SPLIT = str.maketrans({c: " " for c in _PUNCT_NO_HYPHEN})
_EDGE_HYPHENS = re.compile(r"^-+|-+$")


class ScoringError(ValueError):
    pass


@dataclass(frozen=True)
class StopWordList:
    words: frozenset[str]

    def __post_init__(self):
        if any(w != w.lower() for w in self.words):
            raise ValueError("stop words must be lowercase")

    def __contains__(self, w: str) -> bool:
        return w in self.words

    def __len__(self) -> int:
        return len(self.words)

    @classmethod
    def empty(cls) -> "StopWordList":
        return cls(frozenset())


@functools.lru_cache(maxsize=None)
def english_stopwords() -> StopWordList:
    """The 179-word English list distributed with NLTK."""
    text = (resources.files("layoutread") / "data" / "stopwords_en.txt").read_text("utf-8")
    words = [w.strip() for w in text.splitlines() if w.strip()]
    if len(words) != len(set(words)):
        raise ValueError("duplicate stop words in shipped list")
    return StopWordList(frozenset(words))


def tokenize(text: str) -> list[str]:
    out = []
    for tok in text.lower().translate(_SPLIT).split():
        tok = _EDGE_HYPHENS.sub("", tok)
        if tok:
            out.append(tok)
    return out


def content_tokens(text: str, stops: StopWordList) -> list[str]:
    return [t for t in tokenize(text) if t not in stops]


def score_exact(entry: ManifestEntry, model_output: str, stops: StopWordList) -> tuple[int, int]:
    """(n_detected, n_phrases); phrases emptied by stop-word removal are not counted."""
    out_tokens = content_tokens(model_output or "", stops)
    grams: dict[int, set[tuple[str, ...]]] = {}
    detected = total = 0
    for phrase in entry.phrases:
        toks = tuple(content_tokens(phrase, stops))
        if not toks:
            continue
        total += 1
        n = len(toks)
        if n not in grams:
            grams[n] = {tuple(out_tokens[i : i + n]) for i in range(len(out_tokens) - n + 1)}
        if toks in grams[n]:
            detected += 1
    return detected, total


def gt_words(entry: ManifestEntry, stops: StopWordList) -> list[str]:
    """Content words of a manifest entry, one per occurrence."""
    return [t for p in entry.phrases for t in content_tokens(p, stops)]


def score_topk(
    gt: Sequence[str], ranked: Sequence[Sequence[str]], k: int = 3, stops: StopWordList | None = None
) -> tuple[int, int]:
    """(n_detected, n_total) for ground-truth words against per-token ranked candidates."""
    if k < 1:
        raise ScoringError(f"k must be >= 1, got {k}")
    stops = stops if stops is not None else english_stopwords()
    pool = {c.strip().lower() for cands in ranked for c in cands[:k]}
    detected = total = 0
    for w in gt:
        w = w.strip().lower()
        if not w or w in stops:
            continue
        total += 1
        detected += w in pool
    return detected, total


# -- reports --------------------------------------------------------------------------------


@dataclass(frozen=True)
class ConditionScore:
    image: str
    mode: str
    font_px: int
    word_count: int
    seed: int
    n_phrases: int
    n_detected: int

    @property
    def accuracy(self) -> float | None:
        return self.n_detected / self.n_phrases if self.n_phrases else None

    @property
    def x(self) -> int:
        return self.font_px if Mode(self.mode).is_font_sweep else self.word_count


@dataclass(frozen=True)
class AggregateRow:
    mode: str
    x: int
    accuracy: float
    n: int


@dataclass(frozen=True)
class ScoreReport:
    suite: str
    conditions: tuple[ConditionScore, ...]
    rows: tuple[AggregateRow, ...]

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "conditions": [{**asdict(c), "accuracy": c.accuracy} for c in self.conditions],
            "aggregate": [asdict(r) for r in self.rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["mode", "x", "accuracy", "n"])
        for r in self.rows:
            w.writerow([r.mode, r.x, repr(r.accuracy), r.n])
        return buf.getvalue()


def rows_from_csv(text: str) -> tuple[AggregateRow, ...]:
    reader = csv.DictReader(io.StringIO(text))
    return tuple(AggregateRow(r["mode"], int(r["x"]), float(r["accuracy"]), int(r["n"])) for r in reader)


def condition_score(entry: ManifestEntry, detected: int, total: int) -> ConditionScore:
    return ConditionScore(entry.image, entry.mode, entry.font_px, entry.word_count, entry.seed, total, detected)


def aggregate(scores: Iterable[tuple[str, ConditionScore]]) -> ScoreReport:
    """Group per-condition scores by (mode, sweep value); accuracy is the mean over conditions.

    ``scores`` yields (suite id, score). Conditions with no scorable phrase are
    kept in the per-condition list but left out of the means.
    """
    scores = list(scores)
    if not scores:
        raise ScoringError("no scores to aggregate")
    suites = {s for s, _ in scores}
    if len(suites) > 1:
        raise ScoringError(f"scores come from different suites: {sorted(suites)}")
    conds = tuple(sorted((c for _, c in scores), key=lambda c: (c.mode, c.x, c.seed, c.image)))
    groups: dict[tuple[str, int], list[float]] = defaultdict(list)
    for c in conds:
        if c.accuracy is not None:
            groups[(c.mode, c.x)].append(c.accuracy)
    rows = tuple(
        AggregateRow(mode, x, math.fsum(accs) / len(accs), len(accs))
        for (mode, x), accs in sorted(groups.items())
    )
    return ScoreReport(suites.pop(), conds, rows)


def score_manifest(
    entries: Sequence[ManifestEntry], outputs: dict[str, str], stops: StopWordList | None = None
) -> ScoreReport:
    stops = stops if stops is not None else english_stopwords()
    return aggregate(
        (e.suite, condition_score(e, *score_exact(e, outputs.get(e.image, ""), stops))) for e in entries
    )


def score_manifest_topk(
    entries: Sequence[ManifestEntry],
    ranked: dict[str, Sequence[Sequence[str]]],
    k: int = 3,
    stops: StopWordList | None = None,
) -> ScoreReport:
    stops = stops if stops is not None else english_stopwords()
    return aggregate(
        (e.suite, condition_score(e, *score_topk(gt_words(e, stops), ranked.get(e.image, []), k, stops)))
        for e in entries
    )
