"""Encoder-decoder transformer with scaled dot-product attention.

The attention primitive is written out explicitly (masked positions get
exactly zero weight) so its invariants are testable in isolation. Layers use
pre-norm residual blocks with ReLU feed-forward sublayers; decoder blocks
stack causal self-attention, cross-attention over the encoder output, and
the feed-forward network.
"""

from __future__ import annotations

import math

import torch
from torch import Tensor, nn

from .config import ModelConfig
from .tokenizer import PAD


def attention(
    q: Tensor, k: Tensor, v: Tensor, mask: Tensor | None = None
) -> tuple[Tensor, Tensor]:
    """Softmax(q kT / sqrt(d_k)) v.

    ``mask`` is boolean, broadcastable to (..., q_len, k_len), True where a
    key position is disallowed; those weights come out exactly 0.
    Returns (weighted values, weight matrix).
    """
    if q.shape[-1] != k.shape[-1]:
        raise ValueError(f"query dim {q.shape[-1]} != key dim {k.shape[-1]}")
    if k.shape[-2] != v.shape[-2]:
        raise ValueError(f"key count {k.shape[-2]} != value count {v.shape[-2]}")
    scores = q @ k.transpose(-2, -1) / math.sqrt(q.shape[-1])
    if mask is not None:
        scores = scores.masked_fill(mask, float("-inf"))
    weights = torch.softmax(scores, dim=-1)
    return weights @ v, weights


class MultiHeadAttention(nn.Module):
    def __init__(self, d_model: int, heads: int, dropout: float) -> None:
        super().__init__()
        self.heads = heads
        self.d_k = d_model // heads
        self.q_proj = nn.Linear(d_model, d_model)
        self.k_proj = nn.Linear(d_model, d_model)
        self.v_proj = nn.Linear(d_model, d_model)
        self.out_proj = nn.Linear(d_model, d_model)
        self.dropout = nn.Dropout(dropout)

    def _split(self, x: Tensor) -> Tensor:
        b, n, _ = x.shape
        return x.view(b, n, self.heads, self.d_k).transpose(1, 2)

    def forward(self, q: Tensor, k: Tensor, v: Tensor, mask: Tensor | None) -> Tensor:
        b, n, _ = q.shape
        out, _ = attention(
            self._split(self.q_proj(q)),
            self._split(self.k_proj(k)),
            self._split(self.v_proj(v)),
            mask,
        )
        out = self.dropout(out)
        out = out.transpose(1, 2).contiguous().view(b, n, -1)
        return self.out_proj(out)


class FeedForward(nn.Module):
    def __init__(self, d_model: int, ff_dim: int, dropout: float) -> None:
        super().__init__()
        self.net = nn.Sequential(
            nn.Linear(d_model, ff_dim),
            nn.ReLU(),
            nn.Dropout(dropout),
            nn.Linear(ff_dim, d_model),
        )

    def forward(self, x: Tensor) -> Tensor:
        return self.net(x)


class EncoderLayer(nn.Module):
    def __init__(self, cfg: ModelConfig) -> None:
        super().__init__()
        self.norm1 = nn.LayerNorm(cfg.d_model)
        self.attn = MultiHeadAttention(cfg.d_model, cfg.heads, cfg.dropout)
        self.norm2 = nn.LayerNorm(cfg.d_model)
        self.ff = FeedForward(cfg.d_model, cfg.ff_dim, cfg.dropout)
        self.dropout = nn.Dropout(cfg.dropout)

    def forward(self, x: Tensor, src_mask: Tensor | None) -> Tensor:
        h = self.norm1(x)
        x = x + self.dropout(self.attn(h, h, h, src_mask))
        x = x + self.dropout(self.ff(self.norm2(x)))
        return x


class DecoderLayer(nn.Module):
    def __init__(self, cfg: ModelConfig) -> None:
        super().__init__()
        self.norm1 = nn.LayerNorm(cfg.d_model)
        self.self_attn = MultiHeadAttention(cfg.d_model, cfg.heads, cfg.dropout)
        self.norm2 = nn.LayerNorm(cfg.d_model)
        self.cross_attn = MultiHeadAttention(cfg.d_model, cfg.heads, cfg.dropout)
        self.norm3 = nn.LayerNorm(cfg.d_model)
        self.ff = FeedForward(cfg.d_model, cfg.ff_dim, cfg.dropout)
        self.dropout = nn.Dropout(cfg.dropout)

    def forward(
        self, x: Tensor, memory: Tensor, tgt_mask: Tensor, memory_mask: Tensor | None
    ) -> Tensor:
        h = self.norm1(x)
        x = x + self.dropout(self.self_attn(h, h, h, tgt_mask))
        h = self.norm2(x)
        x = x + self.dropout(self.cross_attn(h, memory, memory, memory_mask))
        x = x + self.dropout(self.ff(self.norm3(x)))
        return x


def sinusoidal_positions(max_len: int, d_model: int) -> Tensor:
    position = torch.arange(max_len, dtype=torch.float64).unsqueeze(1)
    div = torch.exp(
        torch.arange(0, d_model, 2, dtype=torch.float64) * (-math.log(10000.0) / d_model)
    )
    pe = torch.zeros(max_len, d_model, dtype=torch.float64)
    pe[:, 0::2] = torch.sin(position * div)
    pe[:, 1::2] = torch.cos(position * div[: d_model // 2])
    return pe.to(torch.get_default_dtype())


def padding_mask(ids: Tensor) -> Tensor:
    """(B, 1, 1, S) boolean, True at pad key positions."""
    return (ids == PAD)[:, None, None, :]


def causal_mask(length: int, device=None) -> Tensor:
    """(length, length) boolean, True above the diagonal (future keys)."""
    return torch.triu(torch.ones(length, length, dtype=torch.bool, device=device), 1)


class Seq2SeqTransformer(nn.Module):
    """Token ids in, next-token logits out; greedy generation for inference."""

    def __init__(self, cfg: ModelConfig, vocab_size: int) -> None:
        super().__init__()
        self.cfg = cfg
        self.vocab_size = vocab_size
        self.src_embed = nn.Embedding(vocab_size, cfg.d_model, padding_idx=PAD)
        self.tgt_embed = nn.Embedding(vocab_size, cfg.d_model, padding_idx=PAD)
        self.register_buffer(
            "positions", sinusoidal_positions(cfg.max_len + 2, cfg.d_model), persistent=False
        )
        self.embed_dropout = nn.Dropout(cfg.dropout)
        self.encoder = nn.ModuleList(EncoderLayer(cfg) for _ in range(cfg.encoder_layers))
        self.encoder_norm = nn.LayerNorm(cfg.d_model)
        self.decoder = nn.ModuleList(DecoderLayer(cfg) for _ in range(cfg.decoder_layers))
        self.decoder_norm = nn.LayerNorm(cfg.d_model)
        self.generator = nn.Linear(cfg.d_model, vocab_size)
        self.scale = math.sqrt(cfg.d_model)

    def _embed(self, embedding: nn.Embedding, ids: Tensor) -> Tensor:
        x = embedding(ids) * self.scale + self.positions[: ids.shape[1]]
        return self.embed_dropout(x)

    def encode(self, src_ids: Tensor, src_mask: Tensor | None) -> Tensor:
        x = self._embed(self.src_embed, src_ids)
        for layer in self.encoder:
            x = layer(x, src_mask)
        return self.encoder_norm(x)

    def decode(
        self, tgt_ids: Tensor, memory: Tensor, tgt_mask: Tensor, memory_mask: Tensor | None
    ) -> Tensor:
        x = self._embed(self.tgt_embed, tgt_ids)
        for layer in self.decoder:
            x = layer(x, memory, tgt_mask, memory_mask)
        return self.decoder_norm(x)

    def forward(self, src_ids: Tensor, tgt_in_ids: Tensor) -> Tensor:
        src_mask = padding_mask(src_ids)
        tgt_mask = causal_mask(tgt_in_ids.shape[1], tgt_in_ids.device) | padding_mask(tgt_in_ids)
        memory = self.encode(src_ids, src_mask)
        out = self.decode(tgt_in_ids, memory, tgt_mask, src_mask)
        return self.generator(out)

    @torch.no_grad()
    def greedy_generate(self, src_ids: Tensor, bos: int, eos: int, max_len: int) -> list[list[int]]:
        """Argmax decoding per step until the end sentinel or the length budget."""
        self.eval()
        batch = src_ids.shape[0]
        src_mask = padding_mask(src_ids)
        memory = self.encode(src_ids, src_mask)
        ys = torch.full((batch, 1), bos, dtype=torch.long, device=src_ids.device)
        finished = torch.zeros(batch, dtype=torch.bool)
        for _ in range(max_len):
            tgt_mask = causal_mask(ys.shape[1], ys.device)
            out = self.decode(ys, memory, tgt_mask, src_mask)
            logits = self.generator(out[:, -1])
            next_ids = logits.argmax(dim=-1)
            next_ids = torch.where(finished, torch.full_like(next_ids, eos), next_ids)
            ys = torch.cat([ys, next_ids[:, None]], dim=1)
            finished |= next_ids == eos
            if bool(finished.all()):
                break
        results = []
        for row in ys[:, 1:].tolist():
            out_row = []
            for token in row:
                if token == eos:
                    break
                out_row.append(token)
            results.append(out_row)
        return results
