"""``layoutread`` command line.

Exit codes: 0 success, 1 invalid input or usage, 2 I/O failure.
Every run writes a ``*.meta.json`` (or ``run_metadata.json`` in output
directories) with versions, seed and a hash of the effective configuration.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import logging
import platform
import sys
from concurrent.futures import ThreadPoolExecutor
from importlib import metadata as _md
from pathlib import Path

from . import __version__
from .bbox import format_line, format_box, normalize
from .core import OCRFormatError, Page, ingest_ocr, load_ocr_json
from .instruct import EmptyPageError, Task, gen_task1, gen_task2, gen_task3, gen_task4, record_seed, write_records
from .layout import LayoutConfig, recover_layout
from .synth import SuiteSpec, gen_suite, load_suite_spec, read_manifest
from .tables import ChartSeries, chart_to_markdown, html_to_markdown
from .util import config_hash

log = logging.getLogger("layoutread")

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


class _Warnings(logging.Handler):
    def __init__(self):
        super().__init__(logging.WARNING)
        self.messages: list[str] = []

    def emit(self, record):
        if record.levelno == logging.WARNING:
            self.messages.append(record.getMessage())


# -- shared helpers ---------------------------------------------------------------


def _layout_cfg(a) -> LayoutConfig:
    return LayoutConfig(
        row_overlap_threshold=a.row_overlap_threshold,
        max_gap_spaces=a.max_gap_spaces,
        indent_enabled=a.indent,
        vgap_blank_lines=a.vgap_blank_lines,
        vgap_factor=a.vgap_factor,
    )


def _inputs(path: Path, suffixes: tuple[str, ...]) -> list[Path]:
    if path.is_dir():
        files = sorted(p for p in path.iterdir() if p.suffix.lower() in suffixes)
        if not files:
            log.warning("no %s files in %s", "/".join(suffixes), path)
        return files
    if not path.exists():
        raise FileNotFoundError(f"no such file or directory: {path}")
    return [path]


def _load_page(path: Path, a) -> Page:
    page = ingest_ocr(path, width_px=a.width, height_px=a.height, min_confidence=a.min_confidence)
    for w in page.warnings:
        log.warning("%s: %s", path.name, w)
    return page


def _map(fn, items, threads: int):
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _versions() -> dict:
    out = {"layoutread": __version__, "python": platform.python_version()}
    for pkg in ("numpy", "pillow"):
        try:
            out[pkg] = _md.version(pkg)
        except _md.PackageNotFoundError:
            pass
    return out


def _effective_config(a) -> dict:
    skip = {"func", "config", "log_level"}
    return {k: (str(v) if isinstance(v, Path) else v) for k, v in sorted(vars(a).items()) if k not in skip}


def write_metadata(target: Path, a, extra: dict | None = None) -> Path:
    """Run metadata next to a file output, or inside a directory output."""
    meta_path = target / "run_metadata.json" if target.is_dir() else target.with_name(target.name + ".meta.json")
    cfg = _effective_config(a)
    meta = {
        "command": a.command,
        "seed": a.seed,
        "versions": _versions(),
        "config": cfg,
        "config_hash": config_hash(cfg),
        "created_utc": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        **(extra or {}),
    }
    meta_path.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return meta_path


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


# -- subcommands ----------------------------------------------------------------------


def cmd_recover_layout(a) -> None:
    cfg = _layout_cfg(a)
    pages = _map(lambda p: _load_page(p, a), _inputs(a.inp, (".json",)), a.threads)
    fmt = a.format or ("jsonl" if a.out.suffix == ".jsonl" else "txt")
    if fmt == "txt":
        if len(pages) != 1:
            raise UsageError(f"{len(pages)} pages cannot go to one txt file; use --format jsonl")
        _write_text(a.out, recover_layout(pages[0], cfg).rendered + "\n")
    else:
        lines = [
            json.dumps({"image_id": p.image_id, "layout_text": recover_layout(p, cfg).rendered}, ensure_ascii=False)
            for p in sorted(pages, key=lambda p: p.image_id)
        ]
        _write_text(a.out, "".join(l + "\n" for l in lines))
    write_metadata(a.out, a)


def cmd_normalize_boxes(a) -> None:
    pages = sorted(_map(lambda p: _load_page(p, a), _inputs(a.inp, (".json",)), a.threads), key=lambda p: p.image_id)
    fmt = a.format or ("jsonl" if a.out.suffix == ".jsonl" else "lines")
    chunks = []
    for p in pages:
        if fmt == "lines":
            chunks.extend(format_line(b.text, normalize(b.rect, p.width_px, p.height_px)) + "\n" for b in p.boxes)
        else:
            boxes = [{"text": b.text, "box": format_box(normalize(b.rect, p.width_px, p.height_px))} for b in p.boxes]
            chunks.append(json.dumps({"image_id": p.image_id, "boxes": boxes}, ensure_ascii=False) + "\n")
    _write_text(a.out, "".join(chunks))
    write_metadata(a.out, a)


def _task3_source(path: Path, a, cfg: LayoutConfig) -> tuple[str, str]:
    """(image_ref, page markdown) for a table, chart or OCR page file."""
    if path.suffix.lower() in (".html", ".htm"):
        return path.stem, html_to_markdown(path.read_text(encoding="utf-8"))
    data = load_ocr_json(path.read_text(encoding="utf-8"))
    if isinstance(data, dict) and "categories" in data:
        return data.get("image_id", path.stem), chart_to_markdown(ChartSeries.from_json(data))
    page = _load_page(path, a)
    return page.image_id, recover_layout(page, cfg).rendered


def cmd_gen_instructions(a) -> None:
    task = Task(a.task)
    cfg = _layout_cfg(a)
    suffixes = (".json", ".html", ".htm") if task is Task.PageParsing else (".json",)
    files = _inputs(a.inp, suffixes)

    def one(path: Path):
        try:
            if task is Task.PageParsing:
                ref, md = _task3_source(path, a, cfg)
                return gen_task3(md, record_seed(a.seed, task, ref), ref)
            page = _load_page(path, a)
            gen = {Task.TextRecognition: gen_task1, Task.TextLocalization: gen_task2, Task.LayoutRecovery: gen_task4}[task]
            return gen(page, record_seed(a.seed, task, page.image_id), cfg)
        except EmptyPageError as exc:
            log.warning("skipped: %s", exc)
            return None

    records = sorted((r for r in _map(one, files, a.threads) if r is not None), key=lambda r: (r.image_ref, r.id))
    a.out.parent.mkdir(parents=True, exist_ok=True)
    n = write_records(records, a.out)
    log.info("wrote %d task %d records to %s", n, task.value, a.out)
    write_metadata(a.out, a, {"records": n})


def cmd_table2md(a) -> None:
    _write_text(a.out, html_to_markdown(a.inp.read_text(encoding="utf-8")) + "\n")
    write_metadata(a.out, a)


def cmd_chart2md(a) -> None:
    data = json.loads(a.inp.read_text(encoding="utf-8"))
    _write_text(a.out, chart_to_markdown(ChartSeries.from_json(data)) + "\n")
    write_metadata(a.out, a)


def cmd_render_bench(a) -> None:
    spec = load_suite_spec(a.spec) if a.spec else SuiteSpec.default()
    if a.seeds:
        spec = SuiteSpec(spec.sweeps, tuple(a.seeds), spec.canvas_px, spec.font, spec.font_dir, spec.background_dir)
    a.out.mkdir(parents=True, exist_ok=True)
    entries = gen_suite(spec, a.out, threads=a.threads)
    write_metadata(a.out, a, {"suite": spec.to_dict(), "suite_id": spec.suite_id, "images": len(entries)})


def _read_jsonl(path: Path) -> list[dict]:
    rows = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            if line.strip():
                try:
                    rows.append(json.loads(line))
                except json.JSONDecodeError as exc:
                    raise OCRFormatError(f"{path.name}: {exc.msg}", lineno=lineno) from None
    return rows


def cmd_score(a) -> None:
    from .scoring import score_manifest, score_manifest_topk

    entries = read_manifest(a.manifest)
    rows = _read_jsonl(a.outputs)
    if a.topk:
        ranked = {r["image"]: r["ranked"] for r in rows}
        missing = [e.image for e in entries if e.image not in ranked]
        report = score_manifest_topk(entries, ranked, k=a.topk)
    else:
        outputs = {r["image"]: r.get("output", "") for r in rows}
        missing = [e.image for e in entries if e.image not in outputs]
        report = score_manifest(entries, outputs)
    for m in missing:
        log.warning("no model output for %s; scored as empty", m)
    a.out.mkdir(parents=True, exist_ok=True)
    _write_text(a.out / "report.json", report.to_json())
    _write_text(a.out / "accuracy.csv", report.to_csv())
    write_metadata(a.out, a, {"suite_id": report.suite})


# -- parser ------------------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global")
    g.add_argument("--config", type=Path, help="TOML file; [global] and [<command>] tables set defaults")
    g.add_argument("--seed", type=int, default=0, help="root seed (default 0)")
    g.add_argument("--threads", type=int, default=1, help="worker threads (default 1)")
    g.add_argument("--log-level", default="INFO", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    return p


def _page_args(p) -> None:
    p.add_argument("--width", type=int, help="page width for bare OCR arrays")
    p.add_argument("--height", type=int, help="page height for bare OCR arrays")
    p.add_argument("--min-confidence", type=float, default=None, help="drop boxes below this confidence (off)")


def _layout_args(p) -> None:
    d = LayoutConfig()
    p.add_argument("--row-overlap-threshold", type=float, default=d.row_overlap_threshold)
    p.add_argument("--max-gap-spaces", type=int, default=d.max_gap_spaces)
    p.add_argument("--indent", action=argparse.BooleanOptionalAction, default=d.indent_enabled)
    p.add_argument("--vgap-blank-lines", action=argparse.BooleanOptionalAction, default=d.vgap_blank_lines)
    p.add_argument("--vgap-factor", type=float, default=d.vgap_factor)


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    common = _common()
    parser = _Parser(prog="layoutread", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    subs = {}

    def add(name, func, help):
        p = sub.add_parser(name, help=help, description=help, parents=[common])
        p.set_defaults(func=func)
        subs[name] = p
        return p

    p = add("recover-layout", cmd_recover_layout, "reconstruct plain-text layout from OCR-JSON")
    p.add_argument("--in", dest="inp", type=Path, required=True, help="OCR-JSON file or directory")
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--format", choices=["txt", "jsonl"], help="default: from --out extension")
    _page_args(p)
    _layout_args(p)

    p = add("normalize-boxes", cmd_normalize_boxes, "write [0,1]-normalized boxes as 'text [x0, y0, x1, y1]'")
    p.add_argument("--in", dest="inp", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--format", choices=["lines", "jsonl"], help="default: from --out extension")
    _page_args(p)

    p = add("gen-instructions", cmd_gen_instructions, "generate pretraining instruction records")
    p.add_argument("--task", type=int, choices=[1, 2, 3, 4], required=True)
    p.add_argument("--in", dest="inp", type=Path, required=True, help="file or directory of pages")
    p.add_argument("--out", type=Path, required=True)
    _page_args(p)
    _layout_args(p)

    p = add("table2md", cmd_table2md, "convert an HTML table to a Markdown pipe table")
    p.add_argument("--in", dest="inp", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)

    p = add("chart2md", cmd_chart2md, "convert chart source JSON to a Markdown table")
    p.add_argument("--in", dest="inp", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)

    p = add("render-bench", cmd_render_bench, "render the synthetic recognition benchmark")
    p.add_argument("--spec", type=Path, help="suite TOML (default: built-in suite)")
    p.add_argument("--out", type=Path, required=True, help="output directory")
    p.add_argument("--seeds", type=int, nargs="+", help="override the suite's seed list")

    p = add("score", cmd_score, "score model outputs against a benchmark manifest")
    p.add_argument("--manifest", type=Path, required=True)
    p.add_argument("--outputs", type=Path, required=True, help='JSONL of {"image", "output"} or {"image", "ranked"}')
    p.add_argument("--out", type=Path, required=True, help="output directory for report.json and accuracy.csv")
    p.add_argument("--topk", type=int, default=0, help="score ranked candidate lists at this k instead")
    return parser, subs


def _apply_config(argv, subs) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", type=Path)
    known, rest = pre.parse_known_args(argv)
    if not known.config:
        return
    from ._toml import toml

    with open(known.config, "rb") as f:
        cfg = toml.load(f)
    command = next((t for t in rest if t in subs), None)
    norm = lambda d: {k.replace("-", "_"): v for k, v in d.items() if not isinstance(v, dict)}
    for name, p in subs.items():
        p.set_defaults(**norm(cfg.get("global", {})))
    if command:
        section = norm(cfg.get(command, {}))
        for key in ("in", "out", "spec", "manifest", "outputs"):
            if key in section:
                section["inp" if key == "in" else key] = Path(section.pop(key))
        subs[command].set_defaults(**section)
        for action in subs[command]._actions:
            if action.dest in section:
                action.required = False


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subs = build_parser()
    try:
        _apply_config(argv, subs)
    except OSError as exc:
        print(f"layoutread: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"layoutread: bad config: {exc}", file=sys.stderr)
        return EXIT_INVALID
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    stream = logging.StreamHandler(sys.stderr)
    stream.setFormatter(logging.Formatter("%(asctime)s level=%(levelname)s logger=%(name)s msg=%(message)s"))
    collector = _Warnings()
    root = logging.getLogger("layoutread")
    root.setLevel(a.log_level)
    root.addHandler(stream)
    root.addHandler(collector)
    try:
        a.func(a)
        code = EXIT_OK
    except (UsageError, ValueError, KeyError, TypeError) as exc:
        log.error("invalid input: %s", exc)
        code = EXIT_INVALID
    except OSError as exc:
        log.error("I/O failure: %s", exc)
        code = EXIT_IO
    finally:
        root.removeHandler(collector)
        root.removeHandler(stream)
    if collector.messages:
        print(f"layoutread: {len(collector.messages)} warning(s)", file=sys.stderr)
        for m in collector.messages[:20]:
            print(f"  - {m}", file=sys.stderr)
        if len(collector.messages) > 20:
            print(f"  ... {len(collector.messages) - 20} more", file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
