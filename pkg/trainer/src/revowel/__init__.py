"""Toy encoder-decoder transformer that restores vowels in devowelled text.

Consumes pair TSV files (``source<TAB>target``) and emits prediction
JSON-lines ({"id", "source", "prediction"}), the interchange formats shared
with the compression toolkit's evaluation harness.
"""

__version__ = "0.1.0"

from .config import ModelConfig, full_config, toy_config
from .model import Seq2SeqTransformer, attention, causal_mask, padding_mask
from .predict import Prediction, predict, write_predictions
from .tokenizer import BOS, EOS, PAD, UNK, BpeTokenizer
from .train import TrainResult, load_checkpoint, load_pairs, save_checkpoint, train

__all__ = [
    "__version__",
    "ModelConfig",
    "full_config",
    "toy_config",
    "attention",
    "causal_mask",
    "padding_mask",
    "Seq2SeqTransformer",
    "BpeTokenizer",
    "PAD",
    "BOS",
    "EOS",
    "UNK",
    "train",
    "TrainResult",
    "load_pairs",
    "save_checkpoint",
    "load_checkpoint",
    "predict",
    "Prediction",
    "write_predictions",
]
