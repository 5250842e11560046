"""Vowel-removal text compression toolkit.

Strip the ten ASCII vowels from English text, compress the residue with
from-scratch LZW or adaptive arithmetic coding (or any external command),
measure compression ratios in byte and symbol units, restore vowels with a
trainable frequency-lookup baseline, and score restorations with corpus
BLEU, greedy embedding matching, and character error rate.
"""

__version__ = "0.1.0"

from .arith import ac_compress, ac_decompress
from .bench import CompressionReport, CompressorSpec, compression_ratio, measure, render_report
from .corpus import (
    SentencePair,
    SplitSpec,
    VOWELS,
    build_pairs,
    extract_english_column,
    remove_vowels,
    split_corpus,
)
from .lzw import lzw_compress, lzw_decompress, pack_container, unpack_container
from .metrics import (
    BleuConfig,
    EvalReport,
    TrigramHashEmbedder,
    bertscore_corpus,
    bleu_corpus,
    char_error_rate,
)
from .restore import (
    LookupRestorerModel,
    RestorationRecord,
    read_predictions,
    restore_sentence,
    train_lookup_restorer,
)

__all__ = [
    "__version__",
    "VOWELS",
    "SentencePair",
    "SplitSpec",
    "remove_vowels",
    "extract_english_column",
    "build_pairs",
    "split_corpus",
    "lzw_compress",
    "lzw_decompress",
    "pack_container",
    "unpack_container",
    "ac_compress",
    "ac_decompress",
    "CompressorSpec",
    "CompressionReport",
    "compression_ratio",
    "measure",
    "render_report",
    "LookupRestorerModel",
    "RestorationRecord",
    "train_lookup_restorer",
    "restore_sentence",
    "read_predictions",
    "BleuConfig",
    "EvalReport",
    "TrigramHashEmbedder",
    "bleu_corpus",
    "bertscore_corpus",
    "char_error_rate",
]
