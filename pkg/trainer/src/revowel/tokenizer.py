"""Character-level pair-merge (BPE) tokenizer learned from the training corpus.

Symbols start as single characters; the most frequent adjacent pair is merged
repeatedly until the vocabulary target is reached or no pair repeats. Ties
break deterministically (higher count first, then lexicographic pair order).
Characters unseen at training time map to the unknown token.
"""

from __future__ import annotations

import json
from collections import Counter
from pathlib import Path
from typing import Iterable, Sequence

PAD, BOS, EOS, UNK = 0, 1, 2, 3
SPECIALS = ["<pad>", "<s>", "</s>", "<unk>"]


class BpeTokenizer:
    def __init__(self, merges: list[tuple[str, str]], base_chars: list[str]) -> None:
        self.merges = merges
        self.base_chars = base_chars
        self.symbols = SPECIALS + base_chars + [a + b for a, b in merges]
        self.symbol_to_id = {s: i for i, s in enumerate(self.symbols)}
        self._merge_rank = {pair: r for r, pair in enumerate(merges)}

    @property
    def vocab_size(self) -> int:
        return len(self.symbols)

    @classmethod
    def train(cls, texts: Iterable[str], vocab_size: int) -> "BpeTokenizer":
        sequences = [list(t) for t in texts if t]
        base_chars = sorted({ch for seq in sequences for ch in seq})
        merges: list[tuple[str, str]] = []
        current = len(SPECIALS) + len(base_chars)
        while current < vocab_size:
            pair_counts: Counter = Counter()
            for seq in sequences:
                for a, b in zip(seq, seq[1:]):
                    pair_counts[(a, b)] += 1
            if not pair_counts:
                break
            best_pair, best_count = min(
                pair_counts.items(), key=lambda kv: (-kv[1], kv[0])
            )
            if best_count < 2:
                break
            merges.append(best_pair)
            merged = best_pair[0] + best_pair[1]
            a, b = best_pair
            for seq in sequences:
                i = 0
                while i < len(seq) - 1:
                    if seq[i] == a and seq[i + 1] == b:
                        seq[i : i + 2] = [merged]
                    else:
                        i += 1
            current += 1
        return cls(merges=merges, base_chars=base_chars)

    def _segment(self, text: str) -> list[str]:
        seq = list(text)
        for a, b in self.merges:
            merged = a + b
            i = 0
            while i < len(seq) - 1:
                if seq[i] == a and seq[i + 1] == b:
                    seq[i : i + 2] = [merged]
                else:
                    i += 1
        return seq

    def encode(self, text: str) -> list[int]:
        lookup = self.symbol_to_id
        return [lookup.get(sym, UNK) for sym in self._segment(text)]

    def unknown_chars(self, text: str) -> int:
        known = set(self.base_chars)
        return sum(1 for ch in text if ch not in known)

    def decode(self, ids: Sequence[int]) -> str:
        parts = []
        for i in ids:
            if i in (PAD, BOS, EOS):
                continue
            parts.append(self.symbols[i] if 0 <= i < len(self.symbols) else "")
        return "".join(parts)

    def save(self, path: str | Path) -> None:
        payload = {"base_chars": self.base_chars, "merges": [list(m) for m in self.merges]}
        Path(path).write_text(
            json.dumps(payload, ensure_ascii=False), encoding="utf-8"
        )

    @classmethod
    def load(cls, path: str | Path) -> "BpeTokenizer":
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls(
            merges=[tuple(m) for m in payload["merges"]],
            base_chars=list(payload["base_chars"]),
        )
