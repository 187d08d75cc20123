import copy
import json

import pytest
from hypothesis import given, settings

from raagpl.certificate import (
    FORMAT,
    certificate_to_json,
    check_certificate,
    check_document,
    dumps,
    seal,
    separation_to_json,
)
from raagpl.errors import VerificationError
from raagpl.graph import Graph
from raagpl.witness import build_witness, separate_set, verify_witness
from raagpl.words import reduce, word

from conftest import graph_and_word


def cert_json(g, w):
    return certificate_to_json(verify_witness(build_witness(g, w)))


@pytest.fixture
def sample(path3):
    return cert_json(path3, word("a", "c", ("b", -1), "a", "b", "c"))


def test_layout(free2):
    obj = cert_json(free2, word("a", "b"))
    assert obj["format"] == FORMAT
    assert obj["k"] == 2
    assert obj["image"] == "13/4"
    assert obj["target_interval"] == ["13/4", "7/2"]
    assert obj["test_point"] == "5/4"
    assert obj["spine"] == [{"v": "b", "sign": 1, "n": 1}, {"v": "a", "sign": 1, "n": 1}]
    assert obj["decomposition"]["blocks"] == [{"a": 1}, {"b": 1}]
    assert obj["images"]["b"] == {"bp": ["1", "5/4", "5/2"], "val": ["1", "9/4", "5/2"]}
    assert obj["verified"] is True
    assert len(obj["digest"]) == 64


def test_round_trip_through_text(sample):
    text = dumps(sample)
    assert text.endswith("\n")
    again = json.loads(text)
    assert again == sample
    assert dumps(again) == text
    check_certificate(again)


def test_deterministic(path3):
    w = word("a", "c", "b")
    assert dumps(cert_json(path3, w)) == dumps(cert_json(path3, w))


def _set(path, value):
    def mutate(obj):
        target = obj
        for key in path[:-1]:
            target = target[key]
        target[path[-1]] = value

    return mutate


MUTATIONS = {
    "image": _set(["image"], "7/1"),
    "k": lambda o: o.__setitem__("k", o["k"] + 1),
    "test_point": _set(["test_point"], "1"),
    "target": _set(["target_interval"], ["0", "100"]),
    "spine_sign": lambda o: o["spine"][0].__setitem__("sign", -o["spine"][0]["sign"]),
    "spine_vertex": lambda o: o["spine"][-1].__setitem__("v", "b" if o["spine"][-1]["v"] != "b" else "a"),
    "image_map": lambda o: o["images"]["a"].__setitem__("val", o["images"]["a"]["bp"]),
    "block_exponent": lambda o: o["decomposition"]["blocks"][0].update(
        {v: 2 * e for v, e in o["decomposition"]["blocks"][0].items()}
    ),
    "slides": _set(["decomposition", "slides"], 10**6),
    "complexity": lambda o: o["decomposition"]["complexity"].reverse() or o["decomposition"]["complexity"].append(1),
    "trace": lambda o: o["stage_trace"][0].__setitem__("out", "2"),
    "word_unreduced": lambda o: o["word"].extend([{"v": "a", "s": 1}, {"v": "a", "s": -1}]),
    "word_letter": lambda o: o["word"][0].__setitem__("s", -o["word"][0]["s"]),
    "graph_edge": lambda o: o["graph"]["edges"].append(["a", "c"]),
    "format": _set(["format"], "other/1"),
}


@pytest.mark.parametrize("name", sorted(MUTATIONS))
def test_resealed_semantic_tampering_detected(sample, name):
    bad = copy.deepcopy(sample)
    MUTATIONS[name](bad)
    assert bad != sample
    seal(bad)
    with pytest.raises(VerificationError):
        check_certificate(bad)


def test_digest_detects_unsealed_edit(sample):
    bad = copy.deepcopy(sample)
    bad["verified"] = False
    with pytest.raises(VerificationError, match="verified"):
        check_certificate(bad)
    bad = copy.deepcopy(sample)
    bad["image"] = "9/4"
    with pytest.raises(VerificationError, match="digest"):
        check_certificate(bad)


def test_non_greedy_blocks_rejected():
    # same element, legal blocks, but b could still slide into a's block
    g = Graph.from_edges("abc", [("a", "b")])
    obj = cert_json(g, word("a", "b", "c"))
    assert obj["decomposition"]["blocks"] == [{"a": 1, "b": 1}, {"c": 1}]
    bad = copy.deepcopy(obj)
    bad["decomposition"]["blocks"] = [{"a": 1}, {"b": 1}, {"c": 1}]
    bad["decomposition"]["complexity"] = [1, 1, 1]
    bad["k"] = 3
    seal(bad)
    with pytest.raises(VerificationError):
        check_certificate(bad)


def test_not_an_object():
    with pytest.raises(VerificationError):
        check_certificate([1, 2])
    with pytest.raises(VerificationError):
        check_document("x")


def test_separation_bundle(free2):
    certs = [verify_witness(w) for w in separate_set(free2, [word("a"), word("b", "a")])]
    bundle = separation_to_json(certs)
    assert [str(x) for x in check_document(bundle)] == ["9/4", "13/4"]
    bad = copy.deepcopy(bundle)
    bad["certificates"][1]["image"] = "1"
    with pytest.raises(VerificationError):
        check_document(bad)
    seal(bad)
    with pytest.raises(VerificationError):
        check_document(bad)
    empty = seal({"format": bundle["format"], "certificates": [], "verified": True})
    with pytest.raises(VerificationError):
        check_document(empty)


@settings(max_examples=80, deadline=None)
@given(graph_and_word(max_vertices=5, max_size=10, min_size=1))
def test_independent_check_agrees(gw):
    g, w = gw
    if not reduce(g, w):
        return
    cert = verify_witness(build_witness(g, w))
    assert check_certificate(certificate_to_json(cert)) == cert.image
