"""Brute-force reference implementations for the scorers, plus instance generators."""

from layoutread.synth import ManifestEntry

VOCAB = ["gradient", "descent", "loss", "model", "the", "of", "batch", "norm", "re-lu", "attention", "a", "layer"]
SEPARATORS = [" ", "  ", "\n", ", ", ". ", "; ", " (", ") ", "\t", "! "]


def entry(phrases, image="img", mode="PlainBG_FontSweep", font_px=12, word_count=8, seed=0, suite="s"):
    return ManifestEntry(image, mode, font_px, word_count, seed, list(phrases), [[0, 0, 1, 1]] * len(phrases),
                         suite=suite)


def naive_contains(hay, needle):
    for i in range(len(hay) - len(needle) + 1):
        if all(hay[i + j] == needle[j] for j in range(len(needle))):
            return True
    return False


def exact_oracle(gt_token_lists, out_tokens, stops):
    hay = [t for t in out_tokens if t not in stops]
    det = tot = 0
    for toks in gt_token_lists:
        toks = [t for t in toks if t not in stops]
        if not toks:
            continue
        tot += 1
        det += naive_contains(hay, toks)
    return det, tot


def random_exact_instance(rng):
    """Token arrays known by construction, rendered to text with mixed case and punctuation."""
    gts = [[rng.choice(VOCAB) for _ in range(rng.randint(1, 4))] for _ in range(rng.randint(0, 20))]
    out = []
    while len(out) < rng.randint(0, 200):
        if gts and rng.random() < 0.3:
            out.extend(rng.choice(gts))
        else:
            out.append(rng.choice(VOCAB))
    text = "".join(
        (w.upper() if rng.random() < 0.2 else w) + rng.choice(SEPARATORS) for w in out
    )
    return gts, out, text


def topk_oracle(gt, ranked, k, stops):
    det = tot = 0
    for w in gt:
        w = w.lower()
        if w in stops:
            continue
        tot += 1
        hit = False
        for cands in ranked:
            for i in range(min(k, len(cands))):
                if cands[i].lower() == w:
                    hit = True
        det += hit
    return det, tot


def random_topk_instance(rng):
    gt = [rng.choice(VOCAB) for _ in range(rng.randint(0, 20))]
    ranked = [[rng.choice(VOCAB + ["zzz", "qq"]) for _ in range(rng.randint(0, 6))] for _ in range(rng.randint(0, 10))]
    return gt, ranked, rng.randint(1, 6)
