import copy
import json

import pytest

from kfib_narayana.errors import DomainError, VerificationError
from kfib_narayana.pipeline import (
    PipelineConfig,
    certificate_bytes,
    emit_certificate,
    load_certificate,
    run_pipeline,
    run_power_of_two_stage,
    verify_certificate,
)


def test_config_json_round_trip(tmp_path):
    cfg = PipelineConfig(start_prec=512, workers=3, out="x.json")
    data = cfg.to_json()
    assert "out" not in data
    back = PipelineConfig.from_json(json.dumps(data))
    assert back.to_json() == data
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps({"small_k_max": 220, "cf_terms": 500}))
    assert PipelineConfig.load(p).cf_terms == 500


@pytest.mark.parametrize("bad", [{"small_k_min": 3}, {"start_prec": 32}, {"start_prec": 1024, "max_prec": 512},
                                 {"workers": 0}, {"surprise": 1}])
def test_config_rejects(bad):
    with pytest.raises(DomainError):
        PipelineConfig.from_json(bad)


def test_full_run_passes(certificate_body):
    st = certificate_body["stages"]
    assert certificate_body["verdict"] == "pass"
    assert st["small_k"]["m_cap"] <= 300 and st["small_k"]["n_cap"] <= 220 and st["small_k"]["k_cap"] <= 218
    assert st["large_k"]["pass1"]["k_cap"] <= 620
    assert st["large_k"]["final_k_cap"] < 220
    assert st["powers_of_two"]["found"] == [[4, 1], [6, 2]]
    assert st["search"]["claims"]["corrected"]["passed"]
    assert st["search"]["claims"]["published"]["extras"] == [[2, 7, 9]]


def test_search_box_dominates_caps(certificate_body):
    st = certificate_body["stages"]
    box = st["search"]["box"]
    assert box["k"][1] >= st["small_k"]["k_cap"]
    assert box["n"][1] >= st["small_k"]["n_cap"]
    assert box["m"][1] >= max(st["small_k"]["m_cap"], st["powers_of_two"]["m_cap"])


def test_trivial_list(certificate_body):
    pairs = {(t["n"], t["m"]) for t in certificate_body["trivial_solutions"]}
    assert pairs == {(0, 0), (1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (3, 4)}


def test_emit_and_verify(certificate_file):
    assert verify_certificate(certificate_file) == "pass"
    assert verify_certificate(load_certificate(certificate_file)) == "pass"


def test_bytes_are_deterministic(certificate_body, tmp_path):
    again = run_pipeline(PipelineConfig())
    assert certificate_bytes(again) == certificate_bytes(certificate_body)
    a = emit_certificate(again, tmp_path / "a.json").read_bytes()
    assert a == certificate_bytes(certificate_body)


def test_stage_order_independent(certificate_body):
    rev = run_pipeline(PipelineConfig(), stages=("large_k", "small_k"))
    assert certificate_bytes(rev) == certificate_bytes(certificate_body)


def test_higher_start_precision_still_passes(certificate_body):
    body = run_pipeline(PipelineConfig(start_prec=512))
    assert body["verdict"] == "pass"
    for key in ("m_cap", "n_cap", "k_cap"):
        assert body["stages"]["small_k"][key] <= certificate_body["stages"]["small_k"][key] + 1
    assert body["stages"]["large_k"]["final_k_cap"] < 220
    assert verify_certificate(json.loads(certificate_bytes(body))) == "pass"


def test_partial_run(tmp_path):
    body = run_pipeline(PipelineConfig(), stages=("large_k",))
    assert body["verdict"] == "partial"
    path = emit_certificate(body, tmp_path / "partial.json")
    assert verify_certificate(path) == "partial"
    with pytest.raises(DomainError):
        run_pipeline(PipelineConfig(), stages=("medium_k",))


def test_power_of_two_stage_alone():
    st = run_power_of_two_stage(PipelineConfig())
    assert st["passed"] and st["l_cap"] == 61 and st["m_cap"] == 113


# tampering ----------------------------------------------------------------


def _doc(certificate_body):
    return json.loads(certificate_bytes(certificate_body))


def _redigest(doc):
    return json.loads(certificate_bytes(doc))


def _set(doc, path, value):
    cur = doc
    for key in path[:-1]:
        cur = cur[key]
    cur[path[-1]] = value(cur[path[-1]]) if callable(value) else value


TAMPERS = [
    (("stages", "small_k", "records", 7, "reduction", "q"), lambda q: str(int(q) + 1), "stages.small_k.records[k=9].reduction.q"),
    (("stages", "small_k", "records", 0, "reduction", "u_bound"), lambda u: u - 1, "stages.small_k.records[k=2].reduction.u_bound"),
    (("stages", "small_k", "m_cap"), 150, "stages.small_k.m_cap"),
    (("stages", "small_k", "k_cap"), 60, "stages.small_k"),
    (("stages", "large_k", "pass1", "k_cap"), 500, "stages.large_k.pass1"),
    (("stages", "large_k", "pass2", "reduction", "q"), "6", "stages.large_k.pass2"),
    (("stages", "large_k", "final_k_cap"), 100, "stages.large_k"),
    (("stages", "powers_of_two", "found"), [[4, 1]], "stages.powers_of_two"),
    (("stages", "powers_of_two", "l_cap"), 20, "stages.powers_of_two"),
    (("stages", "search", "nontrivial"), lambda xs: [x for x in xs if x != [2, 7, 9]], "stages.search"),
    (("stages", "search", "box", "m"), [0, 100], "stages.search"),
    (("stages", "search", "claims", "published", "passed"), True, "stages.search.claims"),
    (("trivial_solutions",), lambda xs: xs[:-1], "trivial_solutions"),
    (("verdict",), "fail", "verdict"),
]


@pytest.mark.parametrize("path,value,record", TAMPERS, ids=[".".join(map(str, t[0])) for t in TAMPERS])
@pytest.mark.parametrize("redigest", [False, True], ids=["raw", "redigested"])
def test_tampering_is_detected(certificate_body, path, value, record, redigest):
    doc = _doc(certificate_body)
    _set(doc, path, value)
    if redigest:
        doc = _redigest(doc)
    with pytest.raises(VerificationError) as info:
        verify_certificate(doc)
    assert info.value.record.startswith(record) or info.value.record == "digest"
    if redigest:
        # the semantic recheck, not the digest, must be what fails
        assert info.value.record != "digest"


@pytest.mark.parametrize("path,value", [
    (("environment", "python"), "2.7"),
    (("config", "workers"), 7),
    (("stages", "large_k", "zeta_empirical", "221", "max_abs_zeta"), 1.0),
])
def test_unchecked_fields_caught_by_digest(certificate_body, path, value):
    doc = _doc(certificate_body)
    _set(doc, path, value)
    with pytest.raises(VerificationError) as info:
        verify_certificate(doc)
    assert info.value.record == "digest"


def test_malformed_documents(tmp_path, certificate_body):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(VerificationError):
        verify_certificate(bad)
    doc = _doc(certificate_body)
    doc["version"] = 99
    with pytest.raises(VerificationError) as info:
        verify_certificate(tmp_path / "missing.json")
    assert info.value.record == "<file>"
    p = tmp_path / "v99.json"
    p.write_text(json.dumps(doc))
    with pytest.raises(VerificationError) as info:
        verify_certificate(p)
    assert info.value.record == "version"
    doc = _doc(certificate_body)
    del doc["stages"]["large_k"]["pass2"]
    with pytest.raises(VerificationError):
        verify_certificate(_redigest(doc))
    doc = _doc(certificate_body)
    doc["stages"]["extra"] = {"passed": True}
    with pytest.raises(VerificationError):
        verify_certificate(_redigest(doc))


def test_deepcopy_body_unchanged(certificate_body):
    snapshot = copy.deepcopy(certificate_body)
    verify_certificate(_doc(certificate_body))
    assert snapshot == certificate_body
