"""Command line front end: ``gcdtkit COMMAND [options]``.

Exit codes: 0 clean, 1 findings at or above the ``--fail-on`` threshold
(or a score below ``--min-f1``), 2 usage, input or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Iterable, Sequence

from . import __version__
from .corpus_io import (
    AnalyzedDocument,
    align,
    parse_conllx,
    parse_raw_document,
    parse_rs3,
    serialize_conllx,
    serialize_raw_document,
    serialize_rs3,
)
from .diagnostics import Diagnostic, Severity
from .errors import ConfigError, GcdtError, PreconditionFailed
from .linter import LintConfig, LintReport, format_jsonl, format_text, lint_report
from .metrics import EMPTY_BOUNDARY_SCORES, EMPTY_PARSEVAL_SCORES, boundary_scores, parseval_scores
from .rst_model.tree import validate_structure
from .segmenter import EduSpan, SegmenterConfig, analyze_sentence
from .segmenter.golden import golden_corpus

CONFIG_ENV = "GCDTKIT_CONFIG"
FORMATS = ("text", "jsonl", "csv")
SEGMENT_COLUMNS = ("doc", "sentence", "first", "last", "trace")


@dataclass(frozen=True)
class RunConfig:
    """Settings for one run. A JSON config file may set any field; flags win."""

    raw: tuple[str, ...] = ()
    conllx: tuple[str, ...] = ()
    rs3: tuple[str, ...] = ()
    gold: tuple[str, ...] = ()
    pred: tuple[str, ...] = ()
    golden: bool = False
    output: str | None = None  # file path; stdout when unset
    output_dir: str | None = None
    format: str = "text"
    jobs: int = 1
    stable: bool = False
    fail_on: str = "advisory"
    min_f1: float | None = None
    disabled_rules: tuple[str, ...] = ()
    require_parse: bool = False
    lexicon_dir: str | None = None
    lint_disable: tuple[str, ...] = ()
    lint_severity: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {', '.join(FORMATS)}")
        if not isinstance(self.jobs, int) or self.jobs < 1:
            raise ConfigError("jobs must be a positive integer")
        try:
            Severity(self.fail_on)
        except ValueError:
            raise ConfigError(f"fail_on must be one of {', '.join(s.value for s in Severity)}") from None

    @classmethod
    def from_mapping(cls, data: dict, source: str = "config") -> RunConfig:
        if not isinstance(data, dict):
            raise ConfigError(f"{source}: expected a JSON object")
        known = {f.name: f for f in fields(cls)}
        unknown = sorted(set(data) - set(known))
        if unknown:
            raise ConfigError(f"{source}: unknown keys: {', '.join(unknown)}")
        values = {}
        for key, value in data.items():
            default = getattr(cls, key, None) if key != "lint_severity" else {}
            if isinstance(default, tuple):
                if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
                    raise ConfigError(f"{source}: {key} must be a list of strings")
                value = tuple(value)
            elif isinstance(default, bool) and not isinstance(value, bool):
                raise ConfigError(f"{source}: {key} must be true or false")
            elif key == "lint_severity" and not isinstance(value, dict):
                raise ConfigError(f"{source}: lint_severity must map codes to severities")
            values[key] = value
        return cls(**values)

    @classmethod
    def load(cls, path: str | os.PathLike) -> RunConfig:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc.msg})") from None
        return cls.from_mapping(data, str(path))

    def segmenter_config(self) -> SegmenterConfig:
        return SegmenterConfig(frozenset(self.disabled_rules), self.require_parse, self.lexicon_dir)

    def lint_config(self) -> LintConfig:
        return LintConfig(dict(self.lint_severity), frozenset(self.lint_disable))


class UsageError(GcdtError):
    pass


# -- argument parsing ------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", metavar="PATH",
                        help=f"JSON run configuration (default: ${CONFIG_ENV} when set)")
    common.add_argument("--format", choices=FORMATS)
    common.add_argument("-o", "--output", metavar="PATH")
    common.add_argument("--jobs", type=int, metavar="N", help="worker processes, one document each")
    common.add_argument("--stable", action="store_true", help="omit the timestamped header line")
    common.add_argument("--fail-on", dest="fail_on", choices=[s.value for s in Severity],
                        help="lowest severity that makes the exit code 1 (default: advisory)")

    parser = argparse.ArgumentParser(prog="gcdtkit", description="Chinese RST corpus tools.")
    parser.add_argument("--version", action="version", version=f"gcdtkit {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    def command(name: str, help: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help, argument_default=argparse.SUPPRESS)

    def files(p, *names):
        for name in names:
            p.add_argument(f"--{name}", nargs="+", metavar="FILE")

    p = command("segment", "split parsed sentences into EDUs (TSV)")
    files(p, "raw", "conllx")
    p.add_argument("--golden", action="store_true", help="segment the bundled golden corpus")
    p.add_argument("--disable-rule", dest="disabled_rules", action="append", metavar="RULE")
    p.add_argument("--require-parse", dest="require_parse", action="store_true")
    p.add_argument("--lexicon-dir", dest="lexicon_dir", metavar="DIR")

    p = command("validate", "structural checks on rs3 trees")
    files(p, "rs3")

    p = command("lint", "guideline checks on rs3 trees")
    files(p, "rs3", "raw", "conllx")
    p.add_argument("--disable", dest="lint_disable", action="append", metavar="CODE")
    p.add_argument("--severity", dest="lint_severity", action="append", metavar="CODE=LEVEL")

    p = command("score", "compare gold and predicted files")
    files(p, "gold", "pred")
    p.add_argument("--min-f1", dest="min_f1", type=float, metavar="X")

    p = command("stats", "relation and EDU frequency tables")
    files(p, "rs3", "conllx")

    p = command("convert", "rewrite files in canonical form")
    files(p, "raw", "conllx", "rs3")
    p.add_argument("--output-dir", dest="output_dir", metavar="DIR")
    return parser


def _config_from_args(ns: argparse.Namespace) -> RunConfig:
    opts = vars(ns).copy()
    command = opts.pop("command")
    path = opts.pop("config", None) or os.environ.get(CONFIG_ENV)
    base = RunConfig.load(path) if path else RunConfig()
    if "lint_severity" in opts:
        table = dict(base.lint_severity)
        for item in opts.pop("lint_severity"):
            code, sep, level = item.partition("=")
            if not sep:
                raise UsageError(f"--severity expects CODE=LEVEL, got {item!r}")
            table[code.strip()] = level.strip()
        opts["lint_severity"] = table
    for key, value in list(opts.items()):
        if isinstance(value, list):
            opts[key] = tuple(value)
    try:
        config = replace(base, **opts)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    _check_inputs(command, config)
    return config


def _check_inputs(command: str, c: RunConfig) -> None:
    if command == "segment":
        if not (c.golden or c.conllx):
            raise UsageError("segment needs --conllx (optionally with --raw) or --golden")
        if c.raw and len(c.raw) != len(c.conllx):
            raise UsageError("--raw and --conllx must list the same number of files")
    elif command in ("validate", "lint") and not c.rs3:
        raise UsageError(f"{command} needs --rs3")
    elif command == "lint" and (c.raw or c.conllx):
        if len(c.raw) != len(c.rs3) or len(c.conllx) != len(c.rs3):
            raise UsageError("lint pairs --rs3, --raw and --conllx files by position")
    elif command == "score":
        if not c.gold or len(c.gold) != len(c.pred):
            raise UsageError("score needs --gold and --pred with the same number of files")
    elif command == "stats" and not (c.rs3 or c.conllx):
        raise UsageError("stats needs --rs3 or --conllx")
    elif command == "convert":
        inputs = c.raw + c.conllx + c.rs3
        if not inputs:
            raise UsageError("convert needs --raw, --conllx or --rs3")
        if len(inputs) > 1 and not c.output_dir:
            raise UsageError("convert of several files needs --output-dir")


# -- shared helpers -----------------------------------------------------------

def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _header(command: str, c: RunConfig) -> str | None:
    if c.stable:
        return None
    stamp = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    if c.format == "jsonl":
        return json.dumps({"meta": {"tool": "gcdtkit", "version": __version__,
                                    "command": command, "generated": stamp}})
    return f"# gcdtkit {__version__} {command} generated {stamp}"


def _map(fn: Callable, items: Sequence, jobs: int) -> list:
    """Apply ``fn`` in input order, optionally across processes."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (jobs * 4))))


def _csv_rows(rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def load_document(raw_path: str, conllx_path: str) -> AnalyzedDocument:
    return align(parse_raw_document(_read(raw_path)), parse_conllx(_read(conllx_path)))


# -- segment --------------------------------------------------------------------

def _segment_job(job: tuple) -> tuple[list[EduSpan], list[str]]:
    doc_id, sentences, seg_config = job
    spans: list[EduSpan] = []
    warnings: list[str] = []
    for i, sentence in enumerate(sentences):
        result = analyze_sentence(sentence, i, seg_config)
        spans.extend(result.spans)
        warnings.extend(f"{doc_id}: {w}" for w in result.warnings)
    return spans, warnings


def _segment_rows(doc_id: str, spans: Iterable[EduSpan]) -> list[tuple]:
    return [(doc_id, s.sentence_index, s.first_token, s.last_token, ",".join(s.trace)) for s in spans]


def _format_rows(rows: list[tuple], columns: Sequence[str], fmt: str) -> str:
    if fmt == "jsonl":
        return "".join(json.dumps(dict(zip(columns, r)), ensure_ascii=False) + "\n" for r in rows)
    if fmt == "csv":
        return _csv_rows([columns, *rows])
    return "".join("\t".join(str(x) for x in r) + "\n" for r in [columns, *rows])


def _segment(c: RunConfig, emit: Callable[[str], None]) -> int:
    seg_config = c.segmenter_config()
    jobs = []
    if c.golden:
        jobs += [(g.id, [list(g.tokens)], seg_config) for g in golden_corpus()]
    for k, conllx_path in enumerate(c.conllx):
        if c.raw:
            doc = load_document(c.raw[k], conllx_path)
            jobs.append((doc.doc_id, [list(s) for s in doc.sentences], seg_config))
        else:
            jobs.append((Path(conllx_path).stem, parse_conllx(_read(conllx_path)), seg_config))
    rows = []
    for (doc_id, _, _), (spans, warnings) in zip(jobs, _map(_segment_job, jobs, c.jobs)):
        for w in warnings:
            print(f"warning: {w}", file=sys.stderr)
        rows.extend(_segment_rows(doc_id, spans))
    emit(_format_rows(rows, SEGMENT_COLUMNS, c.format))
    return 0


def read_segment_table(text: str) -> dict[str, list[EduSpan]]:
    """Parse ``segment`` TSV output back into spans grouped by document."""
    out: dict[str, list[EduSpan]] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if tuple(cols[:4]) == SEGMENT_COLUMNS[:4]:
            continue
        if len(cols) < 4:
            raise UsageError(f"line {line_no}: expected doc, sentence, first, last columns")
        try:
            sent, first, last = int(cols[1]), int(cols[2]), int(cols[3])
        except ValueError:
            raise UsageError(f"line {line_no}: sentence, first and last must be integers") from None
        trace = tuple(t for t in cols[4].split(",") if t) if len(cols) > 4 else ()
        out.setdefault(cols[0], []).append(EduSpan(sent, first, last, trace))
    return out


# -- validate / lint ------------------------------------------------------------------

def _diagnostic_output(diags: Sequence[Diagnostic], source: str, fmt: str) -> str:
    report = LintReport(tuple(diags))
    if fmt == "jsonl":
        return format_jsonl(report, source)
    if fmt == "csv":
        return _csv_rows(
            (source, d.code, d.severity.value, d.node_id or "",
             f"{d.span[0]}-{d.span[1]}" if d.span else "", d.message)
            for d in diags
        )
    return "".join(f"{source}: {d.format()}\n" for d in diags)


def _fails(diags: Iterable[Diagnostic], threshold: str) -> bool:
    floor = Severity(threshold).rank
    return any(d.severity.rank >= floor for d in diags)


def _validate_job(path: str) -> list[Diagnostic]:
    return validate_structure(parse_rs3(_read(path)))


def _validate(c: RunConfig, emit: Callable[[str], None]) -> int:
    results = _map(_validate_job, list(c.rs3), c.jobs)
    failed = False
    for path, diags in zip(c.rs3, results):
        emit(_diagnostic_output(diags, path, c.format))
        failed |= _fails(diags, c.fail_on)
    return 1 if failed else 0


def _lint_job(job: tuple) -> tuple[LintReport | None, list[Diagnostic]]:
    rs3_path, raw_path, conllx_path, lint_config = job
    tree = parse_rs3(_read(rs3_path))
    doc = load_document(raw_path, conllx_path) if raw_path else None
    try:
        return lint_report(doc, tree, lint_config), []
    except PreconditionFailed:
        return None, validate_structure(tree)


def _lint(c: RunConfig, emit: Callable[[str], None]) -> int:
    lint_config = c.lint_config()
    jobs = [
        (path, c.raw[k] if c.raw else None, c.conllx[k] if c.conllx else None, lint_config)
        for k, path in enumerate(c.rs3)
    ]
    failed = False
    notes: list[str] = []
    for (path, *_), (report, invalid) in zip(jobs, _map(_lint_job, jobs, c.jobs)):
        if report is None:
            emit(_diagnostic_output(invalid, path, c.format))
            print(f"{path}: structural errors; lint skipped", file=sys.stderr)
            failed = True
            continue
        if c.format == "text":
            emit(format_text(report, path))
        else:
            emit(_diagnostic_output(report.diagnostics, path, c.format))
            notes.extend(f"{path}: {n}" for n in report.notes)
        failed |= _fails(report.diagnostics, c.fail_on)
    for note in notes:
        print(f"note: {note}", file=sys.stderr)
    return 1 if failed else 0


# -- score ---------------------------------------------------------------------------

SCORE_COLUMNS = ("doc", "level", "precision", "recall", "f1", "true_pos", "pred_total", "gold_total")


def _score_rows(doc: str, levels: dict[str, dict]) -> list[tuple]:
    return [
        (doc, level, round(v["precision"], 6), round(v["recall"], 6), round(v["f1"], 6),
         v["true_pos"], v["pred_total"], v["gold_total"])
        for level, v in levels.items()
    ]


def _score(c: RunConfig, emit: Callable[[str], None]) -> int:
    rows: list[tuple] = []
    boundary_total = EMPTY_BOUNDARY_SCORES
    parseval_total = EMPTY_PARSEVAL_SCORES
    used_boundary = used_parseval = False
    for gold_path, pred_path in zip(c.gold, c.pred):
        if gold_path.endswith(".rs3") != pred_path.endswith(".rs3"):
            raise UsageError(f"cannot compare {gold_path} with {pred_path}")
        if gold_path.endswith(".rs3"):
            scores = parseval_scores(parse_rs3(_read(gold_path)), parse_rs3(_read(pred_path)))
            parseval_total += scores
            used_parseval = True
            rows += _score_rows(Path(gold_path).stem, scores.to_dict())
            continue
        gold, pred = read_segment_table(_read(gold_path)), read_segment_table(_read(pred_path))
        if set(gold) != set(pred):
            raise UsageError(f"{gold_path} and {pred_path} list different documents")
        for doc in sorted(gold):
            scores = boundary_scores(gold[doc], pred[doc])
            boundary_total += scores
            used_boundary = True
            rows += _score_rows(doc, {"boundary": scores.to_dict()})

    totals: dict[str, dict] = {}
    if used_boundary:
        totals["boundary"] = boundary_total.to_dict()
    if used_parseval:
        totals.update(parseval_total.to_dict())
    rows += _score_rows("TOTAL", totals)

    if c.format == "csv":
        emit(_csv_rows([SCORE_COLUMNS, *rows]))
    elif c.format == "jsonl":
        report = {"total": {k: {kk: v[kk] for kk in sorted(v)} for k, v in totals.items()},
                  "documents": [dict(zip(SCORE_COLUMNS, r)) for r in rows if r[0] != "TOTAL"]}
        emit(json.dumps(report, ensure_ascii=False, sort_keys=True) + "\n")
    else:
        for level, v in totals.items():
            emit(f"{level:10}  P={v['precision']:.4f}  R={v['recall']:.4f}  F1={v['f1']:.4f}"
                 f"  (tp={v['true_pos']} pred={v['pred_total']} gold={v['gold_total']})\n")
    if c.min_f1 is not None and any(v["f1"] < c.min_f1 for v in totals.values()):
        return 1
    return 0


# -- stats ---------------------------------------------------------------------------

def _stats(c: RunConfig, emit: Callable[[str], None]) -> int:
    relations: Counter[str] = Counter()
    counts: Counter[str] = Counter()
    for path in c.rs3:
        tree = parse_rs3(_read(path))
        counts["documents"] += 1
        counts["edus"] += len(tree.edus)
        counts["edu_chars"] += sum(len("".join(e.text.split())) for e in tree.edus)
        for node in tree.nodes():
            for edge in node.children:
                if edge.relation:
                    relations[edge.relation] += 1
    for path in c.conllx:
        sentences = parse_conllx(_read(path))
        counts["sentences"] += len(sentences)
        counts["tokens"] += sum(len(s) for s in sentences)

    rows = [("relation", name, n) for name, n in sorted(relations.items(), key=lambda kv: (-kv[1], kv[0]))]
    rows += [("count", name, counts[name]) for name in sorted(counts)]
    if counts["edus"]:
        rows.append(("mean", "edu_chars", round(counts["edu_chars"] / counts["edus"], 3)))
    emit(_format_rows(rows, ("table", "key", "value"), c.format))
    return 0


# -- convert -------------------------------------------------------------------------

def _convert(c: RunConfig, emit: Callable[[str], None]) -> int:
    converters = [
        (c.raw, lambda text: serialize_raw_document(*parse_raw_document(text))),
        (c.conllx, lambda text: serialize_conllx(parse_conllx(text))),
        (c.rs3, lambda text: serialize_rs3(parse_rs3(text))),
    ]
    for paths, convert in converters:
        for path in paths:
            out = convert(_read(path))
            if c.output_dir:
                target = Path(c.output_dir) / Path(path).name
                target.parent.mkdir(parents=True, exist_ok=True)
                target.write_text(out, encoding="utf-8", newline="\n")
            else:
                emit(out)
    return 0


HANDLERS = {
    "segment": _segment,
    "validate": _validate,
    "lint": _lint,
    "score": _score,
    "stats": _stats,
    "convert": _convert,
}
# commands whose payload gets the optional timestamp header
_HEADED = frozenset(["segment", "validate", "lint", "score", "stats"])


def run(argv: Sequence[str] | None = None) -> int:
    parser = _parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = _config_from_args(ns)
        chunks: list[str] = []
        header = _header(ns.command, config) if ns.command in _HEADED else None
        if header:
            chunks.append(header + "\n")
        code = HANDLERS[ns.command](config, chunks.append)
        payload = "".join(chunks)
        if config.output:
            Path(config.output).write_text(payload, encoding="utf-8", newline="\n")
        else:
            sys.stdout.write(payload)
        return code
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"gcdtkit: error: {exc}", file=sys.stderr)
        return 2
    except (GcdtError, OSError, UnicodeDecodeError) as exc:
        print(f"gcdtkit: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
