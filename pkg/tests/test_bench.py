import pytest

from devowel.bench import (
    CompressionReport,
    CompressorSpec,
    compression_ratio,
    measure,
    render_report,
)
from devowel.errors import MeasurementError

LZW = CompressorSpec("lzw", "builtin-lzw")
AC = CompressorSpec("ac", "builtin-ac")


class TestCompressorSpec:
    def test_external_requires_command(self):
        with pytest.raises(ValueError):
            CompressorSpec("gzip", "external")

    def test_builtin_forbids_command(self):
        with pytest.raises(ValueError):
            CompressorSpec("lzw", "builtin-lzw", external_command="gzip {in}")

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            CompressorSpec("x", "zstd")


class TestCompressionRatio:
    def test_arithmetic(self):
        assert compression_ratio(100, 25) == 4.0

    def test_identity(self):
        assert compression_ratio(13, 13) == 1.0

    def test_zero_compressed_length(self):
        with pytest.raises(ValueError):
            compression_ratio(100, 0)


class TestMeasure:
    def test_lzw_raw_symbol_accounting(self):
        report = measure(LZW, b"AAA", "raw")
        assert report.original_bytes == 3
        assert report.compressed_symbols == 2
        assert report.ratio_symbols == pytest.approx(1.5)

    def test_devowel_bookkeeping(self):
        # "Hello" devowels to "Hll": original lengths stay pre-transform.
        report = measure(LZW, b"Hello", "devowel")
        assert report.original_bytes == 5
        assert report.original_chars == 5
        assert report.transformed_bytes == 3
        assert report.ratio_bytes == pytest.approx(5 / report.compressed_bytes)

    def test_raw_mode_keeps_payload(self):
        report = measure(LZW, b"Hello", "raw")
        assert report.transformed_bytes == 5

    def test_failing_external_command(self):
        spec = CompressorSpec("broken", "external", external_command="nonexistent-cmd {in}")
        with pytest.raises(MeasurementError):
            measure(spec, b"anything", "raw")

    def test_external_nonzero_exit(self):
        spec = CompressorSpec("false", "external", external_command="false {in}")
        with pytest.raises(MeasurementError, match="exited"):
            measure(spec, b"anything", "raw")

    def test_external_gzip_stdout_capture(self):
        spec = CompressorSpec("gzip", "external", external_command="gzip -c {in}")
        data = b"the cat sat on the mat\n" * 200
        report = measure(spec, data, "raw")
        assert 0 < report.compressed_bytes < len(data)
        assert report.compressed_symbols is None
        assert report.ratio_symbols is None

    def test_external_out_placeholder(self):
        # cp exercises the write-to-{out} adapter path (ratio 1.0).
        spec = CompressorSpec("copy", "external", external_command="cp {in} {out}")
        data = b"the cat sat on the mat\n" * 200
        report = measure(spec, data, "raw")
        assert report.compressed_bytes == len(data)
        assert report.ratio_bytes == pytest.approx(1.0)

    def test_empty_corpus_rejected(self):
        with pytest.raises(ValueError):
            measure(LZW, b"", "raw")

    def test_bad_mode_rejected(self):
        with pytest.raises(ValueError):
            measure(LZW, b"abc", "shuffle")

    def test_non_utf8_corpus_rejected(self):
        with pytest.raises(MeasurementError, match="UTF-8"):
            measure(LZW, b"\xff\xfe", "raw")

    def test_ac_roundtrip_gate(self):
        report = measure(AC, b"banana banana banana", "raw")
        assert report.compressed_bytes > 0
        assert report.compressed_symbols is None

    def test_per_sentence_sums_lines(self):
        data = b"aaa\nbbb"
        whole = measure(LZW, data, "raw")
        split = measure(LZW, data, "raw", per_sentence=True)
        # Two 12-byte headers instead of one.
        assert split.compressed_bytes > whole.compressed_bytes
        assert split.original_bytes == whole.original_bytes == 7

    def test_unbounded_table_flag_reduces_symbol_count(self, english_1mib):
        data = english_1mib.encode("utf-8")[: 1 << 18]
        bounded = measure(LZW, data, "raw")
        unbounded = measure(LZW, data, "raw", unbounded_table=True)
        assert unbounded.compressed_symbols <= bounded.compressed_symbols
        assert unbounded.compressed_bytes == bounded.compressed_bytes


def _report(**overrides) -> CompressionReport:
    base = dict(
        corpus_id="c",
        compressor="lzw",
        mode="raw",
        original_bytes=100,
        original_chars=100,
        transformed_bytes=100,
        compressed_bytes=25,
        compressed_symbols=None,
        ratio_bytes=4.0,
        ratio_symbols=None,
    )
    base.update(overrides)
    return CompressionReport(**base)


class TestRenderReport:
    def test_empty_is_header_only(self):
        assert render_report([]) == (
            "corpus,compressor,mode,original_bytes,original_chars,"
            "compressed_bytes,compressed_symbols,ratio_bytes,ratio_symbols\n"
        )

    def test_ratio_formatting(self):
        out = render_report([_report()])
        assert "4.000" in out

    def test_raw_sorts_before_devowel(self):
        rows = [_report(mode="devowel", ratio_bytes=5.0), _report(mode="raw")]
        lines = render_report(rows).splitlines()
        assert lines[1].split(",")[2] == "raw"
        assert lines[2].split(",")[2] == "devowel"

    def test_sorted_by_corpus_then_compressor(self):
        rows = [
            _report(corpus_id="b", compressor="ac"),
            _report(corpus_id="a", compressor="lzw"),
            _report(corpus_id="a", compressor="ac"),
        ]
        lines = render_report(rows).splitlines()[1:]
        keys = [tuple(line.split(",")[:2]) for line in lines]
        assert keys == [("a", "ac"), ("a", "lzw"), ("b", "ac")]

    def test_markdown_table(self):
        out = render_report([_report()], format="markdown")
        assert out.startswith("| corpus |")
        assert "| 4.000 |" in out

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            render_report([], format="yaml")


class TestDevowelDominance:
    def test_dominance_on_64kib_fixture(self, english_1mib):
        data = english_1mib.encode("utf-8")[: 1 << 16]
        for spec in (LZW, AC):
            raw = measure(spec, data, "raw")
            dev = measure(spec, data, "devowel")
            assert dev.ratio_bytes > raw.ratio_bytes, spec.name
