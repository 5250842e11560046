"""Corpus ingestion, vowel removal, and source-target pair construction.

The lossy transform deletes the ten ASCII vowel letters (both cases) and
nothing else: 'y' stays, accented vowels stay, punctuation and digits stay.
Datasets are built as (devowelled source, original target) pairs and stored
one pair per line as ``source<TAB>target``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import IngestionError

#: The exact ten characters removed by the lossy transform.
VOWELS = frozenset("aeiouAEIOU")

_DELETE_VOWELS = {ord(ch): None for ch in VOWELS}
_FLATTEN_WHITESPACE = {ord("\t"): " ", ord("\n"): " ", ord("\r"): " "}


def remove_vowels(text: str) -> str:
    """Delete every ASCII vowel; all other characters keep their order."""
    return text.translate(_DELETE_VOWELS)


def count_vowels(text: str) -> int:
    """Number of vowel occurrences, i.e. how many characters removal drops."""
    return sum(1 for ch in text if ch in VOWELS)


def sanitize_sentence(text: str) -> str:
    """Replace TAB/CR/LF with single spaces so pairs stay one per line."""
    return text.translate(_FLATTEN_WHITESPACE)


@dataclass(frozen=True)
class SentencePair:
    """A devowelled source sentence together with its original target."""

    id: int
    source: str
    target: str


@dataclass(frozen=True)
class SplitSpec:
    """Head-sequential train/val/test sizes."""

    train_size: int
    val_size: int
    test_size: int

    def total(self) -> int:
        return self.train_size + self.val_size + self.test_size


def extract_english_column(rows: Iterable[str], column: int) -> list[str]:
    """Select one TAB-delimited field per record, order preserved.

    Single-column inputs pass through when ``column`` is 0. A record with
    too few fields raises :class:`IngestionError` naming the line number.
    """
    out: list[str] = []
    for lineno, row in enumerate(rows, start=1):
        fields = row.split("\t")
        if column < 0 or column >= len(fields):
            raise IngestionError(
                f"line {lineno}: need field {column} but record has "
                f"{len(fields)} TAB-separated field(s)"
            )
        out.append(fields[column])
    return out


def build_pairs(sentences: Sequence[str]) -> list[SentencePair]:
    """Pair each sentence with its devowelled form; ids follow input order.

    Sentences whose source devowels to the empty string are kept; use
    :func:`count_empty_sources` to report them.
    """
    return [
        SentencePair(id=i, source=remove_vowels(s), target=s)
        for i, s in enumerate(sentences)
    ]


def count_empty_sources(pairs: Iterable[SentencePair]) -> int:
    return sum(1 for p in pairs if not p.source)


def split_corpus(
    pairs: Sequence[SentencePair], spec: SplitSpec
) -> tuple[list[SentencePair], list[SentencePair], list[SentencePair]]:
    """Slice head-sequential, disjoint train/val/test partitions."""
    needed = spec.total()
    if needed > len(pairs):
        raise IngestionError(
            f"split requests {needed} pairs ({spec.train_size}+{spec.val_size}"
            f"+{spec.test_size}) but only {len(pairs)} are available"
        )
    a = spec.train_size
    b = a + spec.val_size
    c = b + spec.test_size
    return list(pairs[:a]), list(pairs[a:b]), list(pairs[b:c])


def load_sentences(path: str | Path, column: int | None = None) -> list[str]:
    """Read one sentence per line; with ``column``, select that TSV field.

    Empty lines are skipped (an empty line is not a sentence). TAB and CR
    inside a sentence are flattened to single spaces.
    """
    text = Path(path).read_text(encoding="utf-8")
    lines = [ln for ln in text.splitlines() if ln]
    if column is not None:
        lines = extract_english_column(lines, column)
    return [sanitize_sentence(ln) for ln in lines]


def write_pairs(pairs: Iterable[SentencePair], path: str | Path) -> None:
    """Write ``source<TAB>target`` lines, UTF-8, LF, no header."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for p in pairs:
            fh.write(f"{p.source}\t{p.target}\n")


def read_pairs(path: str | Path) -> list[SentencePair]:
    """Read a pair file back; ids are assigned from line order."""
    pairs: list[SentencePair] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            fields = line.split("\t")
            if len(fields) != 2:
                raise IngestionError(
                    f"line {lineno}: expected source<TAB>target, found "
                    f"{len(fields)} field(s)"
                )
            pairs.append(SentencePair(id=lineno - 1, source=fields[0], target=fields[1]))
    return pairs
