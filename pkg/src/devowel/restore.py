"""Frequency-lookup vowel restorer and the prediction interchange format.

The baseline maps each consonant skeleton to the original words that produced
it, ranked by training count (ties broken lexicographically). Restoration
replaces each source token with its top-ranked word; unseen skeletons pass
through unchanged. External restorers plug into the same evaluation path via
JSON-lines prediction files.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .corpus import SentencePair, remove_vowels
from .errors import IngestionError, PredictionFormatError

MODEL_VERSION = "lookup-v1"


@dataclass
class LookupRestorerModel:
    """Skeleton -> [(word, count), ...] with entries sorted by rank."""

    table: dict[str, list[tuple[str, int]]] = field(default_factory=dict)
    trained_pairs: int = 0
    version: str = MODEL_VERSION


@dataclass(frozen=True)
class RestorationRecord:
    id: int
    source: str
    prediction: str


def _rank_key(entry: tuple[str, int]) -> tuple[int, str]:
    word, count = entry
    return (-count, word)


def train_lookup_restorer(pairs: Sequence[SentencePair]) -> LookupRestorerModel:
    """Count (skeleton, word) occurrences over space-separated target tokens."""
    counts: dict[str, Counter] = defaultdict(Counter)
    for pair in pairs:
        for word in pair.target.split(" "):
            counts[remove_vowels(word)][word] += 1
    table = {
        key: sorted(counter.items(), key=_rank_key) for key, counter in counts.items()
    }
    return LookupRestorerModel(table=table, trained_pairs=len(pairs))


def restore_sentence(model: LookupRestorerModel, source: str) -> str:
    """Replace each token with its top-ranked word; unknown tokens pass through."""
    table = model.table
    out = []
    for token in source.split(" "):
        entries = table.get(token)
        out.append(entries[0][0] if entries else token)
    return " ".join(out)


def save_model(model: LookupRestorerModel, path: str | Path) -> None:
    """Persist as TSV: a version header, then key<TAB>word<TAB>count rows."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# {model.version} trained_pairs={model.trained_pairs}\n")
        for key in sorted(model.table):
            for word, count in model.table[key]:
                fh.write(f"{key}\t{word}\t{count}\n")


def load_model(path: str | Path) -> LookupRestorerModel:
    table: dict[str, list[tuple[str, int]]] = {}
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        prefix = f"# {MODEL_VERSION} trained_pairs="
        if not header.startswith(prefix):
            raise IngestionError(f"not a {MODEL_VERSION} model file: {header!r}")
        try:
            trained_pairs = int(header[len(prefix) :])
        except ValueError as exc:
            raise IngestionError(f"bad trained_pairs in model header: {header!r}") from exc
        for lineno, line in enumerate(fh, start=2):
            fields = line.rstrip("\n").split("\t")
            if len(fields) != 3:
                raise IngestionError(
                    f"line {lineno}: expected key<TAB>word<TAB>count, found "
                    f"{len(fields)} field(s)"
                )
            key, word, count_text = fields
            try:
                count = int(count_text)
            except ValueError as exc:
                raise IngestionError(f"line {lineno}: bad count {count_text!r}") from exc
            if count < 1:
                raise IngestionError(f"line {lineno}: count must be >= 1, got {count}")
            if remove_vowels(word) != key:
                raise IngestionError(
                    f"line {lineno}: word {word!r} does not devowel to key {key!r}"
                )
            table.setdefault(key, []).append((word, count))
    for key in table:
        table[key].sort(key=_rank_key)
    return LookupRestorerModel(table=table, trained_pairs=trained_pairs)


def write_predictions(records: Iterable[RestorationRecord], path: str | Path) -> None:
    """One JSON object per line: {"id", "source", "prediction"}."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            fh.write(
                json.dumps(
                    {"id": rec.id, "source": rec.source, "prediction": rec.prediction},
                    ensure_ascii=False,
                )
                + "\n"
            )


def read_predictions(path: str | Path) -> list[RestorationRecord]:
    """Read prediction records in file order; duplicate ids are rejected."""
    records: list[RestorationRecord] = []
    seen: set[int] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise PredictionFormatError(f"line {lineno}: not valid JSON ({exc.msg})") from exc
            if not isinstance(obj, dict):
                raise PredictionFormatError(f"line {lineno}: expected a JSON object")
            missing = {"id", "source", "prediction"} - obj.keys()
            if missing:
                raise PredictionFormatError(
                    f"line {lineno}: missing field(s) {sorted(missing)}"
                )
            rec_id = obj["id"]
            if not isinstance(rec_id, int) or isinstance(rec_id, bool):
                raise PredictionFormatError(f"line {lineno}: id must be an integer")
            if not isinstance(obj["source"], str) or not isinstance(obj["prediction"], str):
                raise PredictionFormatError(
                    f"line {lineno}: source and prediction must be strings"
                )
            if rec_id in seen:
                raise PredictionFormatError(f"line {lineno}: duplicate id {rec_id}")
            seen.add(rec_id)
            records.append(
                RestorationRecord(id=rec_id, source=obj["source"], prediction=obj["prediction"])
            )
    return records
