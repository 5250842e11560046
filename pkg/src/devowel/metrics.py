"""Corpus-level restoration quality metrics.

BLEU pools clipped n-gram counts over the whole corpus (no smoothing: a zero
precision at any order zeroes the score) and applies the brevity penalty
exp(1 - r/c) when candidates are not longer than references in total.
The embedding-match score greedily aligns candidate and reference tokens by
cosine similarity and averages per-sentence precision/recall/F1 over the
corpus. Character error rate is summed edit distance over summed reference
length. Tokenization everywhere is whitespace splitting, case-sensitive.
"""

from __future__ import annotations

import math
import zlib
from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple, Protocol, Sequence

import numpy as np


@dataclass(frozen=True)
class BleuConfig:
    max_n: int = 4
    scale: float = 100.0

    def __post_init__(self) -> None:
        if self.max_n < 1:
            raise ValueError("max_n must be >= 1")

    @property
    def weights(self) -> list[float]:
        # Uniform weights summing to 1.
        return [1.0 / self.max_n] * self.max_n


class Embedder(Protocol):
    name: str

    def embed(self, tokens: Sequence[str]) -> np.ndarray: ...


class BertScore(NamedTuple):
    precision: float
    recall: float
    f1: float
    skipped: int


@dataclass(frozen=True)
class EvalReport:
    bleu: float
    bert_precision: float
    bert_recall: float
    bert_f1: float
    cer: float
    sentence_count: int


def _ngram_counts(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def bleu_corpus(
    references: Sequence[str],
    candidates: Sequence[str],
    config: BleuConfig = BleuConfig(),
) -> float:
    """Corpus BLEU on a 0..100 scale."""
    if len(references) != len(candidates):
        raise ValueError(
            f"reference/candidate counts differ: {len(references)} vs {len(candidates)}"
        )
    if not references:
        raise ValueError("need at least one sentence pair")

    max_n = config.max_n
    matches = [0] * max_n
    totals = [0] * max_n
    cand_len = 0
    ref_len = 0
    for ref, cand in zip(references, candidates):
        ref_tokens = ref.split()
        cand_tokens = cand.split()
        ref_len += len(ref_tokens)
        cand_len += len(cand_tokens)
        for n in range(1, max_n + 1):
            cand_grams = _ngram_counts(cand_tokens, n)
            if not cand_grams:
                continue
            ref_grams = _ngram_counts(ref_tokens, n)
            totals[n - 1] += sum(cand_grams.values())
            matches[n - 1] += sum(
                min(count, ref_grams[gram]) for gram, count in cand_grams.items()
            )

    if cand_len == 0 or any(m == 0 for m in matches):
        return 0.0
    log_precision = sum(
        w * math.log(m / t) for w, m, t in zip(config.weights, matches, totals)
    )
    brevity = 1.0 if cand_len > ref_len else math.exp(1.0 - ref_len / cand_len)
    return config.scale * brevity * math.exp(log_precision)


class TrigramHashEmbedder:
    """Hashed character-trigram buckets, L2-normalized per token.

    Deterministic across processes (CRC32, not the salted builtin hash).
    Enough structure to exercise greedy matching; no semantic claims.
    """

    def __init__(self, dim: int = 64) -> None:
        self.dim = dim
        self.name = f"trigram-hash-{dim}"

    def embed(self, tokens: Sequence[str]) -> np.ndarray:
        vecs = np.zeros((len(tokens), self.dim))
        for i, token in enumerate(tokens):
            grams = [token[j : j + 3] for j in range(len(token) - 2)] or [token]
            for gram in grams:
                vecs[i, zlib.crc32(gram.encode("utf-8")) % self.dim] += 1.0
        norms = np.linalg.norm(vecs, axis=1, keepdims=True)
        np.divide(vecs, norms, out=vecs, where=norms > 0)
        return vecs


def bertscore_corpus(
    references: Sequence[str],
    candidates: Sequence[str],
    embedder: Embedder,
) -> BertScore:
    """Greedy max-cosine matching; per-sentence P/R/F1 averaged over the corpus.

    Sentence pairs where either side tokenizes to nothing are skipped and
    counted in the returned ``skipped`` field.
    """
    if len(references) != len(candidates):
        raise ValueError(
            f"reference/candidate counts differ: {len(references)} vs {len(candidates)}"
        )
    if not references:
        raise ValueError("need at least one sentence pair")

    precisions: list[float] = []
    recalls: list[float] = []
    f1s: list[float] = []
    skipped = 0
    for ref, cand in zip(references, candidates):
        ref_tokens = ref.split()
        cand_tokens = cand.split()
        if not ref_tokens or not cand_tokens:
            skipped += 1
            continue
        ref_vecs = embedder.embed(ref_tokens)
        cand_vecs = embedder.embed(cand_tokens)
        sim = cand_vecs @ ref_vecs.T
        precision = float(sim.max(axis=1).mean())
        recall = float(sim.max(axis=0).mean())
        f1 = 2.0 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
        precisions.append(precision)
        recalls.append(recall)
        f1s.append(f1)

    if not precisions:
        return BertScore(0.0, 0.0, 0.0, skipped)
    n = float(len(precisions))
    return BertScore(sum(precisions) / n, sum(recalls) / n, sum(f1s) / n, skipped)


def levenshtein(a: str, b: str) -> int:
    """Character-level edit distance, two-row dynamic program."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        append = cur.append
        for j, cb in enumerate(b, start=1):
            append(
                min(
                    prev[j] + 1,
                    cur[j - 1] + 1,
                    prev[j - 1] + (ca != cb),
                )
            )
        prev = cur
    return prev[-1]


def char_error_rate(references: Sequence[str], candidates: Sequence[str]) -> float:
    """Summed edit distance over summed reference length."""
    if len(references) != len(candidates):
        raise ValueError(
            f"reference/candidate counts differ: {len(references)} vs {len(candidates)}"
        )
    total_distance = sum(levenshtein(r, c) for r, c in zip(references, candidates))
    total_length = sum(len(r) for r in references)
    if total_length == 0:
        return 0.0 if total_distance == 0 else math.inf
    return total_distance / total_length


def evaluate_restorations(
    references: Sequence[str],
    candidates: Sequence[str],
    embedder: Embedder | None = None,
) -> EvalReport:
    """Bundle BLEU, embedding-match P/R/F1, and CER into one report."""
    embedder = embedder if embedder is not None else TrigramHashEmbedder()
    bert = bertscore_corpus(references, candidates, embedder)
    return EvalReport(
        bleu=bleu_corpus(references, candidates),
        bert_precision=bert.precision,
        bert_recall=bert.recall,
        bert_f1=bert.f1,
        cer=char_error_rate(references, candidates),
        sentence_count=len(references),
    )


def render_eval_report(report: EvalReport) -> str:
    """metric,value CSV with 4-decimal fixed formatting for the real metrics."""
    lines = [
        "metric,value",
        f"bleu,{report.bleu:.4f}",
        f"bert_precision,{report.bert_precision:.4f}",
        f"bert_recall,{report.bert_recall:.4f}",
        f"bert_f1,{report.bert_f1:.4f}",
        f"cer,{report.cer:.4f}",
        f"sentence_count,{report.sentence_count}",
    ]
    return "\n".join(lines) + "\n"
