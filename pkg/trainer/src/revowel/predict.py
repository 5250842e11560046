"""Greedy restoration of devowelled sources, written as prediction JSON-lines."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .model import Seq2SeqTransformer
from .tokenizer import BOS, EOS, BpeTokenizer
from .train import _pad_rows


@dataclass(frozen=True)
class Prediction:
    id: int
    source: str
    prediction: str


def predict(
    model: Seq2SeqTransformer,
    tokenizer: BpeTokenizer,
    sources: Sequence[str],
    max_len: int,
    batch_size: int = 32,
) -> tuple[list[Prediction], int]:
    """Restore each source; returns predictions and the unknown-character count.

    The empty source is a degenerate input and maps straight to the empty
    prediction without touching the model.
    """
    predictions: list[Prediction] = [None] * len(sources)  # type: ignore[list-item]
    unknown = 0
    live: list[tuple[int, str]] = []
    for i, source in enumerate(sources):
        if source == "":
            predictions[i] = Prediction(id=i, source="", prediction="")
        else:
            unknown += tokenizer.unknown_chars(source)
            live.append((i, source))

    model.eval()
    for start in range(0, len(live), batch_size):
        chunk = live[start : start + batch_size]
        rows = []
        for _, source in chunk:
            ids = tokenizer.encode(source)
            if len(ids) > max_len - 1:
                ids = ids[: max_len - 1]
            rows.append(ids + [EOS])
        src = _pad_rows(rows)
        outputs = model.greedy_generate(src, bos=BOS, eos=EOS, max_len=max_len)
        for (i, source), ids in zip(chunk, outputs):
            predictions[i] = Prediction(id=i, source=source, prediction=tokenizer.decode(ids))
    return predictions, unknown


def write_predictions(predictions: Sequence[Prediction], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for p in predictions:
            fh.write(
                json.dumps(
                    {"id": p.id, "source": p.source, "prediction": p.prediction},
                    ensure_ascii=False,
                )
                + "\n"
            )
