"""Command-line front door: prepare -> bench -> train/restore -> evaluate -> sweep.

Exit codes: 0 success, 1 input error (bad flags, unreadable or inconsistent
files), 2 internal error. Every flow is deterministic: rerunning a command
on identical inputs produces byte-identical reports.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .bench import CompressorSpec, measure, render_report
from .corpus import (
    build_pairs,
    count_empty_sources,
    load_sentences,
    read_pairs,
    write_pairs,
)
from .errors import ToolError, UsageError
from .metrics import TrigramHashEmbedder, evaluate_restorations, render_eval_report
from .restore import (
    RestorationRecord,
    load_model,
    read_predictions,
    restore_sentence,
    save_model,
    train_lookup_restorer,
    write_predictions,
)

_BUILTIN_CODECS = {"lzw": "builtin-lzw", "ac": "builtin-ac"}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: D102 - argparse hook
        raise UsageError(message)


def _writetext(path: str | Path, content: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(content)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="devowel", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prepare", parents=[], help="build a source/target pair file")
    p.add_argument("--input", required=True, help="UTF-8 text, one sentence per line")
    p.add_argument("--column", type=int, default=None, help="TAB-separated field to extract")
    p.add_argument("--output", required=True, help="pair TSV to write")
    p.add_argument("--limit", type=int, default=None, help="keep at most this many sentences")
    p.add_argument("--seed", type=int, default=0, help="unused; reserved for sampling")
    p.set_defaults(func=cmd_prepare)

    p = sub.add_parser("bench", help="measure compression ratios over a pair corpus")
    p.add_argument("--pairs", required=True, help="pair TSV (targets form the corpus)")
    p.add_argument("--codecs", default="lzw,ac", help="comma list: lzw, ac, external names")
    p.add_argument("--modes", default="raw,devowel", help="comma list from {raw, devowel}")
    p.add_argument(
        "--external",
        action="append",
        default=[],
        metavar="NAME=CMD",
        help="external codec: command with {in} (and optionally {out}) placeholders",
    )
    p.add_argument("--report", required=True, help="report file to write")
    p.add_argument("--format", choices=["csv", "markdown"], default="csv")
    p.add_argument("--unbounded-table", action="store_true", help="unbounded-table symbol counts")
    p.add_argument("--per-sentence", action="store_true", help="compress each line separately")
    p.add_argument("--limit", type=int, default=None, help="use at most this many pairs")
    p.add_argument("--corpus-id", default=None, help="corpus label (default: pair file stem)")
    p.add_argument("--figure", default=None, help="figure path (default: report with .png)")
    p.add_argument("--no-figure", action="store_true", help="skip figure rendering")
    p.add_argument("--seed", type=int, default=0, help="unused; reserved for sampling")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("train-baseline", help="train the frequency-lookup restorer")
    p.add_argument("--pairs", required=True)
    p.add_argument("--model", required=True, help="model TSV to write")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--seed", type=int, default=0, help="unused; training is deterministic")
    p.set_defaults(func=cmd_train_baseline)

    p = sub.add_parser("restore", help="restore vowels with a trained model")
    p.add_argument("--model", required=True)
    p.add_argument("--pairs", required=True, help="pair TSV; sources are restored")
    p.add_argument("--output", required=True, help="prediction JSON-lines to write")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--seed", type=int, default=0, help="unused; restoration is deterministic")
    p.set_defaults(func=cmd_restore)

    p = sub.add_parser("evaluate", help="score a prediction file against pair targets")
    p.add_argument("--pairs", required=True)
    p.add_argument("--predictions", required=True)
    p.add_argument("--report", required=True, help="metric,value CSV to write")
    p.add_argument("--seed", type=int, default=0, help="unused; evaluation is deterministic")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sweep", help="corpus-size ablation over nested training prefixes")
    p.add_argument("--pairs", required=True)
    p.add_argument("--sizes", required=True, help="comma list of ascending training sizes")
    p.add_argument("--restorer", choices=["baseline"], default="baseline")
    p.add_argument("--test-size", type=int, default=1000, help="held-out pairs after the largest prefix")
    p.add_argument("--report", required=True)
    p.add_argument("--figure", default=None, help="figure path (default: report with .png)")
    p.add_argument("--no-figure", action="store_true")
    p.add_argument("--seed", type=int, default=0, help="unused; the sweep is deterministic")
    p.set_defaults(func=cmd_sweep)

    return parser


def cmd_prepare(args: argparse.Namespace) -> int:
    sentences = load_sentences(args.input, column=args.column)
    if args.limit is not None:
        sentences = sentences[: args.limit]
    pairs = build_pairs(sentences)
    write_pairs(pairs, args.output)
    empties = count_empty_sources(pairs)
    print(f"wrote {len(pairs)} pairs to {args.output} ({empties} empty sources)")
    return 0


def _parse_externals(items: list[str]) -> dict[str, str]:
    out: dict[str, str] = {}
    for item in items:
        name, sep, command = item.partition("=")
        if not sep or not name or not command:
            raise UsageError(f"--external expects NAME=CMD, got {item!r}")
        out[name] = command
    return out


def cmd_bench(args: argparse.Namespace) -> int:
    pairs = read_pairs(args.pairs)
    if args.limit is not None:
        pairs = pairs[: args.limit]
    if not pairs:
        raise UsageError(f"no pairs in {args.pairs}")
    corpus_id = args.corpus_id or Path(args.pairs).stem
    corpus_text = "\n".join(p.target for p in pairs).encode("utf-8")

    externals = _parse_externals(args.external)
    specs = []
    for name in [c.strip() for c in args.codecs.split(",") if c.strip()]:
        if name in _BUILTIN_CODECS:
            specs.append(CompressorSpec(name=name, kind=_BUILTIN_CODECS[name]))
        elif name in externals:
            specs.append(
                CompressorSpec(name=name, kind="external", external_command=externals[name])
            )
        else:
            raise UsageError(
                f"unknown codec {name!r}; builtins are {sorted(_BUILTIN_CODECS)} "
                "and externals must be declared with --external"
            )
    if not specs:
        raise UsageError("--codecs selected nothing")
    modes = [m.strip() for m in args.modes.split(",") if m.strip()]
    for mode in modes:
        if mode not in ("raw", "devowel"):
            raise UsageError(f"unknown mode {mode!r}")
    if not modes:
        raise UsageError("--modes selected nothing")

    reports = [
        measure(
            spec,
            corpus_text,
            mode,
            unbounded_table=args.unbounded_table,
            per_sentence=args.per_sentence,
            corpus_id=corpus_id,
        )
        for spec in specs
        for mode in modes
    ]
    _writetext(args.report, render_report(reports, format=args.format))
    print(
        f"wrote {len(reports)} measurement(s) over {len(pairs)} pair(s) to {args.report}"
    )
    if not args.no_figure:
        from .figures import render_ratio_figure

        figure_path = args.figure or str(Path(args.report).with_suffix(".png"))
        render_ratio_figure(reports, figure_path)
        print(f"wrote figure to {figure_path}")
    return 0


def cmd_train_baseline(args: argparse.Namespace) -> int:
    pairs = read_pairs(args.pairs)
    if args.limit is not None:
        pairs = pairs[: args.limit]
    model = train_lookup_restorer(pairs)
    save_model(model, args.model)
    print(
        f"trained on {model.trained_pairs} pairs; {len(model.table)} skeleton keys "
        f"-> {args.model}"
    )
    return 0


def cmd_restore(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    pairs = read_pairs(args.pairs)
    if args.limit is not None:
        pairs = pairs[: args.limit]
    records = [
        RestorationRecord(
            id=p.id, source=p.source, prediction=restore_sentence(model, p.source)
        )
        for p in pairs
    ]
    write_predictions(records, args.output)
    print(f"restored {len(records)} sentence(s) -> {args.output}")
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    pairs = read_pairs(args.pairs)
    by_id = {p.id: p for p in pairs}
    records = read_predictions(args.predictions)
    if not records:
        raise UsageError(f"no predictions in {args.predictions}")
    references = []
    candidates = []
    for rec in records:
        pair = by_id.get(rec.id)
        if pair is None:
            raise UsageError(f"prediction id {rec.id} has no pair in {args.pairs}")
        if rec.source != pair.source:
            raise UsageError(
                f"prediction id {rec.id} source does not match the pair file "
                f"(got {rec.source!r}, expected {pair.source!r})"
            )
        references.append(pair.target)
        candidates.append(rec.prediction)
    report = evaluate_restorations(references, candidates, TrigramHashEmbedder())
    _writetext(args.report, render_eval_report(report))
    print(f"evaluated {report.sentence_count} sentence(s) -> {args.report}")
    print(f"bleu={report.bleu:.4f} f1={report.bert_f1:.4f} cer={report.cer:.4f}")
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError as exc:
        raise UsageError(f"--sizes must be integers: {exc}") from exc
    if not sizes:
        raise UsageError("--sizes selected nothing")
    if any(s <= 0 for s in sizes) or sizes != sorted(set(sizes)):
        raise UsageError("--sizes must be positive and strictly ascending")
    if args.test_size < 1:
        raise UsageError("--test-size must be >= 1")

    pairs = read_pairs(args.pairs)
    needed = sizes[-1] + args.test_size
    if needed > len(pairs):
        raise UsageError(
            f"sweep needs {needed} pairs ({sizes[-1]} train + {args.test_size} test) "
            f"but {args.pairs} has {len(pairs)}"
        )
    test = pairs[sizes[-1] : sizes[-1] + args.test_size]
    test_refs = [p.target for p in test]

    embedder = TrigramHashEmbedder()
    rows = []
    for size in sizes:
        model = train_lookup_restorer(pairs[:size])
        predictions = [restore_sentence(model, p.source) for p in test]
        report = evaluate_restorations(test_refs, predictions, embedder)
        rows.append(
            {
                "train_size": size,
                "bleu": report.bleu,
                "bert_precision": report.bert_precision,
                "bert_recall": report.bert_recall,
                "bert_f1": report.bert_f1,
                "cer": report.cer,
                "sentences": report.sentence_count,
            }
        )
        print(f"train_size={size}: bleu={report.bleu:.4f} f1={report.bert_f1:.4f}")

    lines = ["train_size,bleu,bert_precision,bert_recall,bert_f1,cer,sentences"]
    for row in rows:
        lines.append(
            f"{row['train_size']},{row['bleu']:.4f},{row['bert_precision']:.4f},"
            f"{row['bert_recall']:.4f},{row['bert_f1']:.4f},{row['cer']:.4f},"
            f"{row['sentences']}"
        )
    _writetext(args.report, "\n".join(lines) + "\n")
    print(f"wrote {len(rows)} sweep row(s) to {args.report}")
    if not args.no_figure:
        from .figures import render_sweep_figure

        figure_path = args.figure or str(Path(args.report).with_suffix(".png"))
        render_sweep_figure(rows, figure_path)
        print(f"wrote figure to {figure_path}")
    return 0


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except (ToolError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
