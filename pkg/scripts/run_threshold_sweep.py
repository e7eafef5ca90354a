"""Render a benchmark suite and score it against stub engines or real outputs.

Stubs stand in for an OCR engine so the harness can be exercised end to end:

    echo      returns the manifest phrases (accuracy 1 everywhere)
    empty     returns nothing (accuracy 0 everywhere)
    cutoff:N  reads only images rendered at N px or larger

    python scripts/run_threshold_sweep.py --out runs/sweep --stub cutoff:7
    python scripts/run_threshold_sweep.py --out runs/sweep --outputs my_engine.jsonl

Writes ``accuracy.csv`` and ``report.json`` under ``--out`` and prints the
per-condition table.
"""

import argparse
import json
import time
from pathlib import Path

from layoutread.scoring import score_manifest
from layoutread.synth import SuiteSpec, gen_suite, load_suite_spec


def stub_outputs(entries, stub):
    if stub == "echo":
        return {e.image: "\n".join(e.phrases) for e in entries}
    if stub == "empty":
        return {}
    if stub.startswith("cutoff:"):
        px = int(stub.split(":", 1)[1])
        return {e.image: "\n".join(e.phrases) for e in entries if e.font_px >= px}
    raise SystemExit(f"unknown stub {stub!r}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--spec", type=Path, help="suite TOML (default: built-in suite)")
    ap.add_argument("--out", type=Path, required=True)
    ap.add_argument("--stub", default="cutoff:7")
    ap.add_argument("--outputs", type=Path, help='JSONL of {"image", "output"}; overrides --stub')
    ap.add_argument("--threads", type=int, default=4)
    args = ap.parse_args()

    spec = load_suite_spec(args.spec) if args.spec else SuiteSpec.default()
    t0 = time.perf_counter()
    entries = gen_suite(spec, args.out / "bench", threads=args.threads)
    print(f"rendered {len(entries)} images in {time.perf_counter() - t0:.1f}s")

    if args.outputs:
        with open(args.outputs, encoding="utf-8") as f:
            outputs = {r["image"]: r.get("output", "") for r in map(json.loads, f) if r}
    else:
        outputs = stub_outputs(entries, args.stub)
    rep = score_manifest(entries, outputs)
    (args.out / "accuracy.csv").write_text(rep.to_csv(), encoding="utf-8")
    (args.out / "report.json").write_text(rep.to_json(), encoding="utf-8")

    print(f"{'mode':<24}{'x':>6}{'accuracy':>10}{'n':>4}")
    for r in rep.rows:
        print(f"{r.mode:<24}{r.x:>6}{r.accuracy:>10.3f}{r.n:>4}")


if __name__ == "__main__":
    main()
