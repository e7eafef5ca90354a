import random

import pytest
from hypothesis import given, settings, strategies as st

from layoutread.scoring import (
    AggregateRow,
    ConditionScore,
    ScoringError,
    StopWordList,
    aggregate,
    english_stopwords,
    rows_from_csv,
    score_exact,
    score_manifest,
    score_topk,
    tokenize,
)
from oracles import entry, exact_oracle, random_exact_instance, random_topk_instance, topk_oracle

STOPS = english_stopwords()


# -- examples ---------------------------------------------------------------------------


def test_case_insensitive_contiguous():
    assert score_exact(entry(["gradient descent"]), "we see Gradient Descent here", STOPS) == (1, 1)
    assert score_exact(entry(["gradient descent"]), "gradient of descent", StopWordList.empty()) == (0, 1)


def test_stop_word_rule():
    assert score_exact(entry(["the model"]), "model", STOPS) == (1, 1)
    assert score_exact(entry(["the of"]), "anything", STOPS) == (0, 0)


def test_stop_words_inside_phrase_on_both_sides():
    # "precision and recall" -> [precision, recall]; the echoed output must match too
    assert score_exact(entry(["precision and recall"]), "precision and recall", STOPS) == (1, 1)


def test_empty_output():
    assert score_exact(entry(["loss"]), "", STOPS) == (0, 1)


def test_37_of_100():
    rng = random.Random(37)
    phrases = [f"term{i} word{i}" for i in range(100)]
    present = rng.sample(phrases, 37)
    text = " blah ".join(present)
    assert score_exact(entry(phrases), text, STOPS) == (37, 100)
    gts = [p.split() for p in phrases]
    assert exact_oracle(gts, tokenize(text), STOPS) == (37, 100)


def test_repeated_phrases_count_per_occurrence():
    assert score_exact(entry(["loss", "loss", "model"]), "loss", STOPS) == (2, 3)


def test_tokenize():
    assert tokenize("ReLU-based, (self-attention)! -x- it's") == ["relu-based", "self-attention", "x", "it", "s"]


def test_topk_examples():
    assert score_topk(["cat"], [["cat", "dog", "car"]], 3) == (1, 1)
    assert score_topk(["cat"], [["dog", "car", "cab"]], 3) == (0, 1)
    assert score_topk(["cat"], [["dog", "car", "cab", "cat"]], 3) == (0, 1)
    assert score_topk(["cat"], [["dog"], ["x", "cat"]], 3) == (1, 1)
    with pytest.raises(ScoringError):
        score_topk(["cat"], [], 0)


def test_topk_unbounded_k():
    gt, ranked = ["loss", "model", "zzz"], [["a", "b", "c", "d", "loss"], ["model"]]
    anywhere = {w for lst in ranked for w in lst}
    assert score_topk(gt, ranked, k=10**9)[0] == sum(w in anywhere for w in gt)


# -- oracles -----------------------------------------------------------------------------


@pytest.mark.parametrize("seed", range(300))
def test_exact_matches_oracle(seed):
    rng = random.Random(seed)
    gts, out, text = random_exact_instance(rng)
    e = entry([" ".join(g) for g in gts])
    assert score_exact(e, text, STOPS) == exact_oracle(gts, out, STOPS)


@pytest.mark.parametrize("seed", range(300))
def test_topk_matches_oracle(seed):
    gt, ranked, k = random_topk_instance(random.Random(seed))
    assert score_topk(gt, ranked, k) == topk_oracle(gt, ranked, k, STOPS)


@settings(max_examples=150)
@given(st.integers(0, 2**32), st.text(max_size=80))
def test_exact_monotone_under_append(seed, extra):
    gts, _, text = random_exact_instance(random.Random(seed))
    e = entry([" ".join(g) for g in gts])
    base = score_exact(e, text, STOPS)[0]
    assert score_exact(e, text + " " + extra, STOPS)[0] >= base
    assert score_exact(e, extra + " " + text, STOPS)[0] >= base


# -- aggregation -----------------------------------------------------------------------


def cs(font_px, det, tot, seed=0, mode="PlainBG_FontSweep", wc=8):
    return ConditionScore(f"i{font_px}_{seed}_{mode}", mode, font_px, wc, seed, tot, det)


def test_two_conditions_same_font():
    rep = aggregate([("s", cs(8, 1, 1, 0)), ("s", cs(8, 0, 1, 1))])
    assert rep.rows == (AggregateRow("PlainBG_FontSweep", 8, 0.5, 2),)


def test_empty_and_mixed_suites():
    with pytest.raises(ScoringError):
        aggregate([])
    with pytest.raises(ScoringError):
        aggregate([("a", cs(8, 1, 1)), ("b", cs(8, 1, 1))])


def test_zero_phrase_conditions_left_out():
    rep = aggregate([("s", cs(8, 0, 0, 0)), ("s", cs(8, 2, 3, 1))])
    assert rep.rows == (AggregateRow("PlainBG_FontSweep", 8, 2 / 3, 1),)
    assert len(rep.conditions) == 2


def test_word_count_axis():
    rep = aggregate([("s", cs(12, 3, 4, mode="PlainBG_WordCountSweep", wc=50))])
    assert rep.rows[0].x == 50


def _random_scores(rng):
    return [
        ("s", cs(rng.choice([4, 6, 9, 12]), d, d + rng.randint(0, 5), seed=i,
                 mode=rng.choice(["PlainBG_FontSweep", "PlainBG_WordCountSweep"]), wc=rng.choice([10, 25])))
        for i, d in enumerate(rng.randint(0, 7) for _ in range(rng.randint(1, 40)))
    ]


@pytest.mark.parametrize("seed", range(30))
def test_aggregate_permutation_invariant(seed):
    rng = random.Random(seed)
    scores = _random_scores(rng)
    shuffled = scores[:]
    rng.shuffle(shuffled)
    a, b = aggregate(scores), aggregate(shuffled)
    assert a == b and a.to_csv() == b.to_csv()


@pytest.mark.parametrize("seed", range(30))
def test_csv_round_trip(seed):
    rep = aggregate(_random_scores(random.Random(seed)))
    assert rows_from_csv(rep.to_csv()) == rep.rows
    assert rep.to_csv().splitlines()[0] == "mode,x,accuracy,n"
    for r in rep.rows:
        assert 0 <= r.accuracy <= 1


def test_score_manifest_echo_and_empty():
    es = [entry(["gradient descent", "the loss"], image=f"im{i}", font_px=fp) for i, fp in enumerate((6, 9))]
    echo = {e.image: "\n".join(e.phrases) for e in es}
    assert all(r.accuracy == 1.0 for r in score_manifest(es, echo).rows)
    assert all(r.accuracy == 0.0 for r in score_manifest(es, {}).rows)


def test_stopword_asset():
    assert len(STOPS) == 179
    assert all(w == w.lower() for w in STOPS.words)
    assert {"the", "and", "of", "wouldn't", "ourselves"} <= STOPS.words
    with pytest.raises(ValueError):
        StopWordList(frozenset({"The"}))
