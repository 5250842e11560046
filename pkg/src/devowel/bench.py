"""Compressor registry and ratio measurement harness.

A measurement compresses one corpus byte stream with one codec in one mode
(``raw`` or ``devowel``) and records sizes in both byte and symbol units.
Ratios divide the ORIGINAL (pre-transform) length by the compressed length,
so devowel-mode ratios credit the lossy transform. Built-in codecs are
verified lossless on the exact payload before any ratio is reported.
"""

from __future__ import annotations

import csv
import io
import os
import shlex
import subprocess
import tempfile
from dataclasses import dataclass

from . import arith, lzw
from .corpus import remove_vowels
from .errors import MeasurementError

KINDS = ("builtin-lzw", "builtin-ac", "external")
MODES = ("raw", "devowel")

CSV_COLUMNS = [
    "corpus",
    "compressor",
    "mode",
    "original_bytes",
    "original_chars",
    "compressed_bytes",
    "compressed_symbols",
    "ratio_bytes",
    "ratio_symbols",
]


@dataclass(frozen=True)
class CompressorSpec:
    name: str
    kind: str
    external_command: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown compressor kind {self.kind!r}")
        if self.kind == "external" and not self.external_command:
            raise ValueError("external compressors need a command template")
        if self.kind != "external" and self.external_command:
            raise ValueError("builtin compressors must not carry a command template")


@dataclass(frozen=True)
class CompressionReport:
    corpus_id: str
    compressor: str
    mode: str
    original_bytes: int
    original_chars: int
    transformed_bytes: int
    compressed_bytes: int
    compressed_symbols: int | None
    ratio_bytes: float
    ratio_symbols: float | None


def compression_ratio(original_length: int, compressed_length: int) -> float:
    """Original length divided by compressed length."""
    if compressed_length <= 0:
        raise ValueError(f"compressed_length must be positive, got {compressed_length}")
    return original_length / compressed_length


def _compress_lzw(payload: bytes, unbounded_table: bool) -> tuple[int, int]:
    """Container size and code count; roundtrip-checked before returning."""
    codes = lzw.lzw_compress(payload)
    if lzw.lzw_decompress(codes) != payload:
        raise MeasurementError("builtin-lzw failed its losslessness check")
    container_len = len(lzw.pack_container(codes, len(payload)))
    if unbounded_table:
        codes = lzw.lzw_compress(payload, max_table_size=None)
        if lzw.lzw_decompress(codes, max_table_size=None) != payload:
            raise MeasurementError("builtin-lzw (unbounded table) failed its losslessness check")
    return container_len, len(codes)


def _compress_ac(payload: bytes) -> int:
    blob = arith.ac_compress(payload)
    if arith.ac_decompress(blob) != payload:
        raise MeasurementError("builtin-ac failed its losslessness check")
    return len(blob)


def _compress_external(command_template: str, payload: bytes) -> int:
    """Run an external compressor via {in}/{out} file substitution.

    Templates without ``{out}`` have their stdout captured instead.
    """
    with tempfile.TemporaryDirectory(prefix="devowel-bench-") as tmp:
        in_path = os.path.join(tmp, "input.bin")
        out_path = os.path.join(tmp, "output.bin")
        with open(in_path, "wb") as fh:
            fh.write(payload)
        captures_stdout = "{out}" not in command_template
        cmd = command_template.format(**{"in": in_path, "out": out_path})
        argv = shlex.split(cmd)
        try:
            proc = subprocess.run(argv, capture_output=True, timeout=600)
        except FileNotFoundError as exc:
            raise MeasurementError(f"external compressor not found: {argv[0]}") from exc
        except subprocess.TimeoutExpired as exc:
            raise MeasurementError(f"external compressor timed out: {cmd}") from exc
        if proc.returncode != 0:
            detail = proc.stderr.decode("utf-8", "replace").strip()
            raise MeasurementError(
                f"external compressor exited {proc.returncode}: {cmd}"
                + (f" ({detail})" if detail else "")
            )
        if captures_stdout:
            output = proc.stdout
        else:
            try:
                with open(out_path, "rb") as fh:
                    output = fh.read()
            except FileNotFoundError as exc:
                raise MeasurementError(f"external compressor wrote no output file: {cmd}") from exc
        if not output:
            raise MeasurementError(f"external compressor produced empty output: {cmd}")
        return len(output)


def measure(
    spec: CompressorSpec,
    corpus_text: bytes,
    mode: str,
    *,
    unbounded_table: bool = False,
    per_sentence: bool = False,
    corpus_id: str = "corpus",
) -> CompressionReport:
    """Compress one corpus with one codec in one mode and report every length.

    ``per_sentence`` compresses each LF-separated line independently and sums
    the sizes; the default treats the corpus as a single stream.
    """
    if not corpus_text:
        raise ValueError("corpus_text must be non-empty")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    try:
        text = corpus_text.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MeasurementError(f"corpus is not valid UTF-8: {exc}") from exc

    original_bytes = len(corpus_text)
    original_chars = len(text)
    if mode == "devowel":
        payload = remove_vowels(text).encode("utf-8")
    else:
        payload = corpus_text

    chunks = payload.split(b"\n") if per_sentence else [payload]

    compressed_bytes = 0
    compressed_symbols: int | None = None
    if spec.kind == "builtin-lzw":
        compressed_symbols = 0
        for chunk in chunks:
            nbytes, nsymbols = _compress_lzw(chunk, unbounded_table)
            compressed_bytes += nbytes
            compressed_symbols += nsymbols
    elif spec.kind == "builtin-ac":
        for chunk in chunks:
            compressed_bytes += _compress_ac(chunk)
    else:
        for chunk in chunks:
            compressed_bytes += _compress_external(spec.external_command, chunk)

    if compressed_symbols == 0:
        # Only empty chunks; there is no symbol stream to rate.
        compressed_symbols = None

    return CompressionReport(
        corpus_id=corpus_id,
        compressor=spec.name,
        mode=mode,
        original_bytes=original_bytes,
        original_chars=original_chars,
        transformed_bytes=len(payload),
        compressed_bytes=compressed_bytes,
        compressed_symbols=compressed_symbols,
        ratio_bytes=compression_ratio(original_bytes, compressed_bytes),
        ratio_symbols=(
            compression_ratio(original_chars, compressed_symbols)
            if compressed_symbols
            else None
        ),
    )


def _sort_key(report: CompressionReport) -> tuple:
    return (report.corpus_id, report.compressor, MODES.index(report.mode))


def _row(report: CompressionReport) -> list[str]:
    return [
        report.corpus_id,
        report.compressor,
        report.mode,
        str(report.original_bytes),
        str(report.original_chars),
        str(report.compressed_bytes),
        "" if report.compressed_symbols is None else str(report.compressed_symbols),
        f"{report.ratio_bytes:.3f}",
        "" if report.ratio_symbols is None else f"{report.ratio_symbols:.3f}",
    ]


def render_report(reports: list[CompressionReport], format: str = "csv") -> str:
    """Render one row per (corpus, compressor, mode), deterministically ordered."""
    rows = [_row(r) for r in sorted(reports, key=_sort_key)]
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        writer.writerows(rows)
        return buf.getvalue()
    if format == "markdown":
        lines = [
            "| " + " | ".join(CSV_COLUMNS) + " |",
            "|" + "|".join(" --- " for _ in CSV_COLUMNS) + "|",
        ]
        for row in rows:
            lines.append("| " + " | ".join(cell or "-" for cell in row) + " |")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {format!r}")
