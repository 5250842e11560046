import pytest
from hypothesis import given
from hypothesis import strategies as st

from devowel.corpus import (
    SentencePair,
    SplitSpec,
    VOWELS,
    build_pairs,
    count_empty_sources,
    count_vowels,
    extract_english_column,
    read_pairs,
    remove_vowels,
    sanitize_sentence,
    split_corpus,
    write_pairs,
)
from devowel.errors import IngestionError


class TestVowelSet:
    def test_exactly_ten_ascii_vowels(self):
        assert VOWELS == frozenset("aeiouAEIOU")
        assert len(VOWELS) == 10

    def test_y_not_included(self):
        assert "y" not in VOWELS and "Y" not in VOWELS


class TestRemoveVowels:
    def test_hello_world(self):
        assert remove_vowels("Hello World") == "Hll Wrld"

    def test_all_vowel_input(self):
        assert remove_vowels("AEIOUaeiou") == ""

    def test_no_vowels_y_retained(self):
        assert remove_vowels("rhythm, 42!") == "rhythm, 42!"

    def test_accented_vowels_kept(self):
        assert remove_vowels("café naïve über") == "cfé nïv übr"

    @given(st.text())
    def test_idempotent(self, text):
        once = remove_vowels(text)
        assert remove_vowels(once) == once

    @given(st.text())
    def test_output_has_no_vowels(self, text):
        assert not set(remove_vowels(text)) & VOWELS

    @given(st.text())
    def test_length_accounting(self, text):
        assert len(text) == len(remove_vowels(text)) + count_vowels(text)


class TestExtractEnglishColumn:
    def test_first_column(self):
        assert extract_english_column(["Hello\tHallo", "Good\tGut"], 0) == ["Hello", "Good"]

    def test_single_column_passthrough(self):
        assert extract_english_column(["only-english"], 0) == ["only-english"]

    def test_too_few_fields_names_line(self):
        with pytest.raises(IngestionError, match="line 1"):
            extract_english_column(["a\tb"], 5)

    def test_error_line_number_mid_file(self):
        rows = ["a\tb", "a\tb", "solo"]
        with pytest.raises(IngestionError, match="line 3"):
            extract_english_column(rows, 1)


class TestBuildPairs:
    def test_definition(self):
        assert build_pairs(["Go on"]) == [SentencePair(id=0, source="G n", target="Go on")]

    def test_empty_corpus(self):
        assert build_pairs([]) == []

    def test_all_vowel_sentence_kept_and_counted(self):
        pairs = build_pairs(["aei"])
        assert pairs == [SentencePair(id=0, source="", target="aei")]
        assert count_empty_sources(pairs) == 1

    @given(st.lists(st.text()))
    def test_preserves_count_and_order(self, sentences):
        pairs = build_pairs(sentences)
        assert len(pairs) == len(sentences)
        for i, p in enumerate(pairs):
            assert p.id == i
            assert p.target == sentences[i]
            assert p.source == remove_vowels(sentences[i])


class TestSplitCorpus:
    def test_large_newstest_style_sizes(self):
        pairs = build_pairs(["x"] * 106006)
        train, val, test = split_corpus(pairs, SplitSpec(100000, 3000, 3003))
        assert (len(train), len(val), len(test)) == (100000, 3000, 3003)

    def test_exact_partition(self):
        pairs = build_pairs([str(i) for i in range(10)])
        train, val, test = split_corpus(pairs, SplitSpec(8, 1, 1))
        assert (len(train), len(val), len(test)) == (8, 1, 1)
        assert train + val + test == pairs

    def test_oversubscription(self):
        pairs = build_pairs(["x"] * 5)
        with pytest.raises(IngestionError, match="10 pairs .*5"):
            split_corpus(pairs, SplitSpec(8, 1, 1))

    @given(
        st.lists(st.text(max_size=8), max_size=30),
        st.integers(0, 10),
        st.integers(0, 10),
        st.integers(0, 10),
    )
    def test_partitions_are_head_sequential_and_disjoint(self, sentences, a, b, c):
        pairs = build_pairs(sentences)
        spec = SplitSpec(a, b, c)
        if spec.total() > len(pairs):
            with pytest.raises(IngestionError):
                split_corpus(pairs, spec)
            return
        train, val, test = split_corpus(pairs, spec)
        assert train + val + test == pairs[: spec.total()]
        ids = [p.id for p in train + val + test]
        assert len(ids) == len(set(ids))


class TestPairFiles:
    def test_roundtrip(self, tmp_path):
        pairs = build_pairs(["Hello there", "rhythm", "aei"])
        path = tmp_path / "pairs.tsv"
        write_pairs(pairs, path)
        assert read_pairs(path) == pairs

    def test_format_is_tab_separated_lf(self, tmp_path):
        path = tmp_path / "pairs.tsv"
        write_pairs(build_pairs(["Go on"]), path)
        assert path.read_bytes() == b"G n\tGo on\n"

    def test_bad_field_count_names_line(self, tmp_path):
        path = tmp_path / "pairs.tsv"
        path.write_text("a\tb\nc\n", encoding="utf-8")
        with pytest.raises(IngestionError, match="line 2"):
            read_pairs(path)


def test_sanitize_flattens_tabs_and_newlines():
    assert sanitize_sentence("a\tb\nc\rd") == "a b c d"
