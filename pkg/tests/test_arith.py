import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from devowel.arith import (
    EOS,
    INCREMENT,
    NUM_SYMBOLS,
    Decoder,
    Encoder,
    FrequencyModel,
    ac_compress,
    ac_decompress,
)
from devowel.errors import TruncatedStreamError

BANANA_GOLDEN = bytes.fromhex("61f473369830")


class TestContract:
    def test_empty_payload_is_tiny(self):
        blob = ac_compress(b"")
        assert len(blob) <= 8
        assert ac_decompress(blob) == b""

    def test_banana_roundtrip_and_golden_bytes(self):
        blob = ac_compress(b"banana")
        assert ac_decompress(blob) == b"banana"
        assert blob == BANANA_GOLDEN

    def test_adaptive_model_squeezes_runs(self):
        blob = ac_compress(b"a" * 1000)
        assert len(blob) < 200
        assert ac_decompress(blob) == b"a" * 1000

    def test_truncated_stream_raises(self):
        blob = ac_compress(b"a" * 1000)
        with pytest.raises(TruncatedStreamError):
            ac_decompress(blob[:1])

    def test_empty_input_raises_truncation(self):
        with pytest.raises(TruncatedStreamError):
            ac_decompress(b"")


class TestRoundtripProperties:
    def test_all_single_bytes(self):
        for i in range(256):
            data = bytes([i])
            assert ac_decompress(ac_compress(data)) == data

    @given(st.binary(max_size=1024))
    def test_roundtrip_random(self, data):
        assert ac_decompress(ac_compress(data)) == data

    @given(st.binary(min_size=1, max_size=48))
    def test_roundtrip_repetitive(self, chunk):
        data = chunk * 30
        assert ac_decompress(ac_compress(data)) == data

    def test_incompressibility_bound(self):
        data = random.Random(0).randbytes(4096)
        assert len(ac_compress(data)) >= 4096 - 64


class TestModel:
    def test_counts_start_at_one(self):
        model = FrequencyModel()
        assert model.counts() == [1] * NUM_SYMBOLS
        assert model.total == NUM_SYMBOLS

    def test_update_adds_increment(self):
        model = FrequencyModel()
        model.update(97)
        counts = model.counts()
        assert counts[97] == 1 + INCREMENT
        assert model.total == NUM_SYMBOLS + INCREMENT

    def test_intervals_partition_total(self):
        model = FrequencyModel()
        for s in (0, 97, 255, EOS):
            model.update(s)
        edges = [model.interval(s)[0] for s in range(NUM_SYMBOLS)]
        edges.append(model.total)
        counts = model.counts()
        for s in range(NUM_SYMBOLS):
            assert edges[s + 1] - edges[s] == counts[s]

    def test_find_inverts_interval(self):
        model = FrequencyModel()
        for s in (5, 5, 5, 200):
            model.update(s)
        for s in (0, 5, 6, 200, 256):
            clow, chigh, _ = model.interval(s)
            assert model.find(clow) == s
            assert model.find(chigh - 1) == s

    def test_rescale_keeps_counts_positive(self):
        model = FrequencyModel()
        model._counts = [1] + [((1 << 30) // NUM_SYMBOLS)] * (NUM_SYMBOLS - 1)
        model._total = sum(model._counts)
        model._tree = model._build(model._counts)
        model.update(0)
        assert model.total < (1 << 30)
        assert min(model.counts()) >= 1

    def test_update_matches_inlined_coder_update(self):
        # The coders inline the model update; both paths must agree.
        data = b"mississippi banana"
        enc = Encoder()
        for b in data:
            enc.encode_symbol(b)
        reference = FrequencyModel()
        for b in data:
            reference.update(b)
        assert enc.model.counts() == reference.counts()
        assert enc.model.total == reference.total


class TestLockstep:
    @given(st.binary(max_size=160))
    @settings(max_examples=40)
    def test_encoder_decoder_models_identical_after_each_symbol(self, data):
        enc = Encoder()
        enc_snapshots = []
        for b in data:
            enc.encode_symbol(b)
            enc_snapshots.append((enc.model.total, tuple(enc.model.counts())))
        enc.encode_symbol(EOS)
        blob = enc.finish()

        dec = Decoder(blob)
        dec_snapshots = []
        while True:
            s = dec.decode_symbol()
            if s == EOS:
                break
            dec_snapshots.append((dec.model.total, tuple(dec.model.counts())))
        assert dec_snapshots == enc_snapshots
