import json
import math
import pathlib

import pytest

import phrasecom

FIXTURES = pathlib.Path(__file__).resolve().parents[2] / "fixtures"


@pytest.fixture(scope="module")
def bridge():
    docs = [json.loads(line) for line in (FIXTURES / "bridge.jsonl").read_text().splitlines() if line.strip()]
    return phrasecom.Index.build([(d["id"], d["text"]) for d in docs], {"min_support": 2})


def test_measures():
    assert phrasecom.commonality(0.5, 0.5) == pytest.approx(math.log(1.25))
    assert phrasecom.distinction(1.0, 0.0) == pytest.approx(math.log(2.0))
    assert phrasecom.distinction(0.2, 0.7) == pytest.approx(-phrasecom.distinction(0.7, 0.2))
    assert phrasecom.lambda_bound() == pytest.approx(10 / 101)
    assert phrasecom.prf({"a", "b", "c"}, {"a", "b"}) == pytest.approx((2 / 3, 1.0, 0.8))


def test_index_basics(bridge):
    assert bridge.num_documents == 3
    assert set(bridge.document_ids()) == {"doc_a", "doc_b", "doc_x"}
    assert "web graph" in bridge.phrases()
    salient = bridge.salient("doc_a", {"k": 3})
    assert 0 < len(salient) <= 3
    assert all(0 < score < 1 for _, score in salient)


def test_compare_finds_bridge_phrase(bridge):
    result = bridge.compare("doc_a", "doc_b")
    assert "web graph" in {text for text, _ in result["common"]}
    assert result["distinct_a"]
    trace = result["trace"]["objective_common"]
    assert all(b <= a + 1e-9 * max(1.0, abs(a)) for a, b in zip(trace, trace[1:]))
    nograph = bridge.compare("doc_a", "doc_b", {"method": "nograph"})
    assert "web graph" not in {text for text, _ in nograph["common"]}


def test_sets_and_json(bridge):
    single = bridge.compare("doc_a", "doc_b")
    sets = bridge.compare_sets(["doc_a"], ["doc_b"])
    assert single == sets
    parsed = json.loads(bridge.compare_json("doc_a", "doc_b", {"trace": True}))
    assert parsed["pair"] == ["doc_a", "doc_b"]
    assert "objective_common" in parsed["trace"]


def test_roundtrip(bridge, tmp_path):
    path = tmp_path / "bridge.idx"
    bridge.save(path)
    loaded = phrasecom.Index.load(path)
    assert loaded.to_bytes() == bridge.to_bytes()
    assert phrasecom.Index.from_bytes(bridge.to_bytes()).phrases() == bridge.phrases()


def test_errors(bridge, tmp_path):
    with pytest.raises(phrasecom.LookupError):
        bridge.compare("doc_a", "missing")
    with pytest.raises(phrasecom.ParameterError):
        bridge.compare("doc_a", "doc_b", {"method": "topiclabel"})
    with pytest.raises(phrasecom.ParameterError):
        bridge.compare("doc_a", "doc_b", {"lambda": 0.1})
    with pytest.raises(phrasecom.ParameterError):
        bridge.compare_sets(["doc_a"], ["doc_a"])
    with pytest.raises(phrasecom.InputError):
        phrasecom.Index.build([])
    bad = tmp_path / "bad.idx"
    bad.write_bytes(b"not an index")
    with pytest.raises(phrasecom.InputError):
        phrasecom.Index.load(bad)
    assert issubclass(phrasecom.ParameterError, phrasecom.Error)
