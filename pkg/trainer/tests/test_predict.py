import json

import pytest
import torch

from helpers import overfit_pairs
from revowel.config import toy_config
from revowel.predict import predict, write_predictions
from revowel.tokenizer import BpeTokenizer
from revowel.model import Seq2SeqTransformer


@pytest.fixture(scope="module")
def setup():
    torch.manual_seed(0)
    pairs = overfit_pairs()
    tok = BpeTokenizer.train([p.source for p in pairs] + [p.target for p in pairs], 128)
    cfg = toy_config(d_model=32, ff_dim=64, vocab_size=128, dropout=0.0)
    model = Seq2SeqTransformer(cfg, tok.vocab_size)
    return cfg, tok, model


class TestPredict:
    def test_output_count_matches_input_count(self, setup):
        cfg, tok, model = setup
        sources = [p.source for p in overfit_pairs()[:10]]
        predictions, _ = predict(model, tok, sources, max_len=cfg.max_len)
        assert len(predictions) == 10
        assert [p.id for p in predictions] == list(range(10))

    def test_empty_source_maps_to_empty_prediction(self, setup):
        cfg, tok, model = setup
        predictions, _ = predict(model, tok, ["", "Th ct"], max_len=cfg.max_len)
        assert predictions[0].prediction == ""
        assert predictions[0].source == ""

    def test_unknown_characters_counted(self, setup):
        cfg, tok, model = setup
        _, unknown = predict(model, tok, ["Th ct ###"], max_len=cfg.max_len)
        assert unknown == 3

    def test_written_file_is_json_lines(self, setup, tmp_path):
        cfg, tok, model = setup
        predictions, _ = predict(model, tok, ["Th ct", ""], max_len=cfg.max_len)
        path = tmp_path / "preds.jsonl"
        write_predictions(predictions, path)
        lines = path.read_text(encoding="utf-8").splitlines()
        assert len(lines) == 2
        for i, line in enumerate(lines):
            obj = json.loads(line)
            assert set(obj) == {"id", "source", "prediction"}
            assert obj["id"] == i
