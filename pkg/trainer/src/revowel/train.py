"""Teacher-forced training over devowelled/original sentence pairs.

Pairs come from a TSV file (``source<TAB>target`` per line). The tokenizer is
learned from the training sources and targets; over-length sequences are
truncated and counted. Checkpoints are self-contained directories holding the
weights, the tokenizer, the config, the realized parameter count, and the
per-epoch loss record.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path

import torch
from torch import nn

from .config import ModelConfig
from .model import Seq2SeqTransformer
from .tokenizer import BOS, EOS, PAD, BpeTokenizer


@dataclass(frozen=True)
class Pair:
    id: int
    source: str
    target: str


@dataclass
class TrainResult:
    model: Seq2SeqTransformer
    tokenizer: BpeTokenizer
    history: list[dict]
    truncated_sequences: int


def load_pairs(path: str | Path) -> list[Pair]:
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            fields = line.rstrip("\n").split("\t")
            if len(fields) != 2:
                raise ValueError(
                    f"{path}: line {lineno}: expected source<TAB>target, found "
                    f"{len(fields)} field(s)"
                )
            pairs.append(Pair(id=lineno - 1, source=fields[0], target=fields[1]))
    return pairs


def _encode_pair(
    tokenizer: BpeTokenizer, pair: Pair, max_len: int
) -> tuple[list[int], list[int], int]:
    """Source ids (with end sentinel) and full target ids (BOS .. EOS)."""
    truncated = 0
    src = tokenizer.encode(pair.source)
    if len(src) > max_len - 1:
        src = src[: max_len - 1]
        truncated += 1
    tgt = tokenizer.encode(pair.target)
    if len(tgt) > max_len - 2:
        tgt = tgt[: max_len - 2]
        truncated += 1
    return src + [EOS], [BOS] + tgt + [EOS], truncated


def _pad_rows(rows: list[list[int]]) -> torch.Tensor:
    width = max(len(r) for r in rows)
    out = torch.full((len(rows), width), PAD, dtype=torch.long)
    for i, row in enumerate(rows):
        out[i, : len(row)] = torch.tensor(row, dtype=torch.long)
    return out


def token_accuracy(model: Seq2SeqTransformer, batches: list[tuple]) -> float:
    """Teacher-forced next-token accuracy over non-pad label positions."""
    model.eval()
    correct = 0
    total = 0
    with torch.no_grad():
        for src, tgt_in, labels in batches:
            predictions = model(src, tgt_in).argmax(dim=-1)
            live = labels != PAD
            correct += int((predictions[live] == labels[live]).sum())
            total += int(live.sum())
    return correct / total if total else 0.0


def make_batches(
    tokenizer: BpeTokenizer, pairs: list[Pair], cfg: ModelConfig
) -> tuple[list[tuple], int]:
    encoded = [_encode_pair(tokenizer, p, cfg.max_len) for p in pairs]
    truncated = sum(t for _, _, t in encoded)
    batches = []
    for start in range(0, len(encoded), cfg.batch_size):
        chunk = encoded[start : start + cfg.batch_size]
        src = _pad_rows([s for s, _, _ in chunk])
        tgt = _pad_rows([t for _, t, _ in chunk])
        batches.append((src, tgt[:, :-1], tgt[:, 1:].contiguous()))
    return batches, truncated


def train(cfg: ModelConfig, pairs: list[Pair], seed: int = 0) -> TrainResult:
    """Cross-entropy training with AdamW; deterministic for a fixed seed."""
    if not pairs:
        raise ValueError("training needs at least one pair")
    torch.manual_seed(seed)
    rng = random.Random(seed)

    tokenizer = BpeTokenizer.train(
        [p.source for p in pairs] + [p.target for p in pairs], cfg.vocab_size
    )
    model = Seq2SeqTransformer(cfg, tokenizer.vocab_size)
    batches, truncated = make_batches(tokenizer, pairs, cfg)

    optimizer = torch.optim.AdamW(model.parameters(), lr=cfg.learning_rate)
    loss_fn = nn.CrossEntropyLoss(ignore_index=PAD)
    history: list[dict] = []
    for epoch in range(cfg.epochs):
        model.train()
        order = list(range(len(batches)))
        rng.shuffle(order)
        epoch_loss = 0.0
        steps = 0
        for index in order:
            src, tgt_in, labels = batches[index]
            optimizer.zero_grad()
            logits = model(src, tgt_in)
            loss = loss_fn(logits.view(-1, logits.shape[-1]), labels.view(-1))
            loss.backward()
            optimizer.step()
            epoch_loss += loss.item()
            steps += 1
        history.append(
            {
                "epoch": epoch + 1,
                "loss": epoch_loss / steps,
                "token_accuracy": token_accuracy(model, batches),
            }
        )
    return TrainResult(
        model=model, tokenizer=tokenizer, history=history, truncated_sequences=truncated
    )


def save_checkpoint(directory: str | Path, cfg: ModelConfig, result: TrainResult) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    torch.save(result.model.state_dict(), directory / "weights.pt")
    result.tokenizer.save(directory / "tokenizer.json")
    manifest = {
        "config": cfg.to_dict(),
        "vocab_size": result.tokenizer.vocab_size,
        "parameter_count": sum(p.numel() for p in result.model.parameters()),
        "truncated_sequences": result.truncated_sequences,
        "history": result.history,
    }
    (directory / "config.json").write_text(
        json.dumps(manifest, indent=2), encoding="utf-8"
    )


def load_checkpoint(directory: str | Path) -> tuple[Seq2SeqTransformer, BpeTokenizer, dict]:
    directory = Path(directory)
    manifest = json.loads((directory / "config.json").read_text(encoding="utf-8"))
    cfg = ModelConfig.from_dict(manifest["config"])
    tokenizer = BpeTokenizer.load(directory / "tokenizer.json")
    model = Seq2SeqTransformer(cfg, tokenizer.vocab_size)
    state = torch.load(directory / "weights.pt", weights_only=True)
    model.load_state_dict(state)
    model.eval()
    return model, tokenizer, manifest
