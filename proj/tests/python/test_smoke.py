import json
import os
import pathlib

import pytest

import adeval

DATA = pathlib.Path(os.environ.get("ADEVAL_TEST_DATA",
                                   pathlib.Path(__file__).resolve().parents[1] / "data"))


def test_golden_counts_and_scores():
    gold = [(16, 34), (39, 45)]
    pred = [(23, 34), (39, 45)]
    result = adeval.score(gold, pred)
    assert result["counts"] == {"cor": 1, "par": 1, "inc": 0, "mis": 0, "spu": 0}
    assert result["relaxed"]["f1"] == pytest.approx(0.75, abs=1e-12)
    assert result["strict"]["precision"] == pytest.approx(0.5, abs=1e-12)


def test_disambiguate_and_bio_round_trip():
    text = "My legs felt weak and heavy"
    spans = adeval.disambiguate([[(3, 7), (13, 17)], [(22, 27)]])
    assert spans == [(3, 7), (13, 17), (22, 27)]
    labels = adeval.spans_to_bio(text, spans)
    assert labels == ["O", "B", "O", "B", "O", "B"]
    assert adeval.bio_to_spans(text, labels) == (spans, 0)
    assert adeval.bio_to_spans(text, ["O", "I", "O", "O", "O", "O"]) == ([(3, 7)], 1)


def test_align_example():
    text = "I had a stomach ache and a strong, lasting headache."
    out = adeval.align(text, "stomach ache; strong headache; dizzy")
    assert out["items"] == ["stomach ache", "strong headache", "dizzy"]
    assert [text[a:b] for a, b in out["spans"]] == ["stomach ache", "strong", "headache"]
    assert out["discarded"] == [(2, "dizzy")]


def test_text_stats_counts_code_points():
    stats = adeval.text_stats("Café visits stopped. Never again!")
    assert stats["character_count"] == 33
    assert stats["lexicon_count"] == 5
    assert stats["sentence_count"] == 2


def test_standoff_import_and_errors():
    doc = adeval.import_standoff("p1", "legs felt weak", "T1\tADE 0 4;10 14\tlegs weak\n")
    assert doc["mentions"] == [{"label": "ADE", "fragments": [(0, 4), (10, 14)]}]
    with pytest.raises(adeval.ParseError):
        adeval.import_standoff("p1", "legs", "T1\tADE 0\tlegs\n")
    with pytest.raises(adeval.RangeError):
        adeval.import_standoff("p1", "legs", "T1\tADE 0 9\tlegs\n")


def test_registry_and_analysis():
    assert len(adeval.registry_models()) == 19
    assert adeval.encode_features("EnDR-BERT") == [0, 0, 1, 1, 0, 2]
    rows = [([i % 3, 1, 0, i % 2, 0, 1], 0.5 + 0.2 * (i % 2)) for i in range(40)]
    result = adeval.analyze(rows, seed=3, n_trees=20)
    assert result["ranking"][0][0] == "social"
    assert result["max_efficiency_residual"] < 1e-9
    assert len(result["shap"]) == 40
    perm = adeval.permutation_check(rows, seed=3, n_trees=10)
    assert len(perm["rankings"]) == 6
    assert adeval.mean_std([1.0, 2.0, 3.0]) == (2.0, 1.0)


def test_run_score_on_golden_fixture(tmp_path):
    out = adeval.run("score", config=str(DATA / "golden" / "job.ini"), out=str(tmp_path))
    report = tmp_path / "scores" / "golden" / "seed-1.json"
    assert str(report) in out["artifacts"]
    assert report.read_bytes() == (DATA / "golden" / "expected_report.json").read_bytes()
    agg = adeval.run("aggregate", config=str(DATA / "golden" / "job.ini"), out=str(tmp_path))
    rows = json.loads((tmp_path / "aggregate.json").read_text())
    assert rows[0]["relaxed"]["f1"]["mean"] == pytest.approx(2 / 3, abs=1e-12)
    assert agg["artifacts"]
    with pytest.raises(adeval.ContractError):
        adeval.run("frobnicate")
