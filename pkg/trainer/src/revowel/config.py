"""Model and training hyperparameters, with full-scale and test presets."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field


@dataclass(frozen=True)
class ModelConfig:
    d_model: int = 512
    ff_dim: int = 2048
    encoder_layers: int = 6
    decoder_layers: int = 6
    heads: int = 8
    dropout: float = 0.1
    learning_rate: float = 5e-5
    epochs: int = 50
    batch_size: int = 32
    vocab_size: int = 8000
    max_len: int = 128

    def __post_init__(self) -> None:
        if self.d_model % self.heads != 0:
            raise ValueError(f"d_model {self.d_model} not divisible by heads {self.heads}")
        if not 0.0 <= self.dropout < 1.0:
            raise ValueError(f"dropout must be in [0, 1), got {self.dropout}")
        for name in ("d_model", "ff_dim", "encoder_layers", "decoder_layers", "heads",
                     "batch_size", "vocab_size", "max_len"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.epochs < 0:
            raise ValueError("epochs must be >= 0")

    @property
    def d_k(self) -> int:
        return self.d_model // self.heads

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "ModelConfig":
        return cls(**data)


def full_config(**overrides) -> ModelConfig:
    """Paper-scale defaults; gate behind an explicit flag, not CI."""
    return ModelConfig(**overrides)


def toy_config(**overrides) -> ModelConfig:
    """Small preset that can memorize a 64-pair corpus in 30 epochs."""
    base = dict(
        d_model=128,
        ff_dim=256,
        encoder_layers=2,
        decoder_layers=2,
        heads=4,
        dropout=0.1,
        learning_rate=1e-3,
        epochs=30,
        batch_size=4,
        vocab_size=512,
        max_len=64,
    )
    base.update(overrides)
    return ModelConfig(**base)
