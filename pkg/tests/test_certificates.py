import copy
import json

import pytest

from ncpencil.certificates import (
    emit_certificate,
    import_certificate,
    make_certificate,
    verify_certificate,
)
from ncpencil.findim import from_quotient, frobenius_check, classify_frob4
from ncpencil.normality import normal_check
from ncpencil.parsing import parse_element, parse_presentation
from ncpencil.tables import load_golden


def alg(text):
    return parse_presentation(text)


def el(A, text):
    return parse_element(text, A.alphabet, A.field)


def test_round_trip_is_byte_identical():
    cert = make_certificate(
        "gb",
        {"presentation": "field Q\ngens x y\nrel x*y - 2*y*x\n"},
        "complete",
        {"generators": ["x*y - 2*y*x"], "complete": True},
    )
    blob = emit_certificate(cert)
    back = import_certificate(blob)
    assert back == cert
    assert emit_certificate(back) == blob
    # text rendering exists and mentions the verdict
    text = emit_certificate(cert, fmt="text").decode()
    assert "complete" in text
    with pytest.raises(ValueError, match="unknown format"):
        emit_certificate(cert, fmt="yaml")


def test_make_and_import_reject_garbage():
    with pytest.raises(ValueError, match="unknown certificate kind"):
        make_certificate("nonsense", {}, "", {})
    with pytest.raises(ValueError, match="JSON object"):
        import_certificate(b"[1, 2]")
    with pytest.raises(ValueError, match="missing field"):
        import_certificate(json.dumps({"kind": "gb", "inputs": {}}))
    with pytest.raises(ValueError, match="unknown certificate kind"):
        import_certificate(
            json.dumps({"kind": "zz", "inputs": {}, "verdict": "", "evidence": {}})
        )


def _gb_cert(pres):
    A = alg(pres)
    return make_certificate(
        "gb",
        {"presentation": pres},
        "complete" if A.gb.complete else "incomplete",
        {
            "generators": [str(g) for g in A.gb.generators],
            "leading_words": [str(w) for w in A.gb.leading_words],
            "complete": A.gb.complete,
        },
    )


def test_verify_gb_and_tamper():
    cert = _gb_cert("field Q\ngens x y\nrel x*y - y*x\nrel x^2 - y^2\n")
    ok, msg = verify_certificate(cert)
    assert ok, msg
    bad = copy.deepcopy(cert)
    bad["evidence"]["generators"][0] = "x*y + y*x"
    assert not verify_certificate(bad)[0]
    bad2 = copy.deepcopy(cert)
    bad2["evidence"]["complete"] = False
    assert not verify_certificate(bad2)[0]


def test_verify_hilbert_and_tamper():
    pres = "field Q\ngens x y\nrel x*y - y*x - y^2\n"
    A = alg(pres)
    h = A.hilbert()
    cert = make_certificate(
        "hilbert",
        {"presentation": pres},
        "computed",
        {
            "coefficients": [int(c) for c in h.coeffs],
            "rational": str(h.rational) if h.rational is not None else None,
        },
    )
    ok, msg = verify_certificate(cert)
    assert ok, msg
    bad = copy.deepcopy(cert)
    bad["evidence"]["coefficients"][3] += 1
    assert not verify_certificate(bad)[0]
    bad2 = copy.deepcopy(cert)
    bad2["evidence"]["rational"] = "1/(1-t)"
    assert not verify_certificate(bad2)[0]


def test_verify_normality_replay_without_search():
    pres = "field Q\ngens x y\nrel x*y + y*x\nrel x^2\n"
    A = alg(pres)
    out = normal_check(A, el(A, "3*y*x + y^2"))
    assert out.normal
    cert = make_certificate(
        "normality",
        {"presentation": pres, "element": "3*y*x + y^2"},
        "normal",
        {"nu": {n: str(out.nu.image_of(n)) for n in A.alphabet.names}},
    )
    ok, msg = verify_certificate(cert)
    assert ok, msg

    bad = copy.deepcopy(cert)
    bad["evidence"]["nu"]["y"] = "y"  # drop the 6*x cofactor term
    assert not verify_certificate(bad)[0]

    refusal = make_certificate(
        "normality",
        {"presentation": pres, "element": "y^2 + y"},
        "not normal",
        {"reason": "stored refusal"},
    )
    assert verify_certificate(refusal)[0]
    wrong = copy.deepcopy(refusal)
    wrong["inputs"]["element"] = "y^2"  # actually normal, refusal should not replay
    assert not verify_certificate(wrong)[0]


def test_verify_normal_search_order_sensitive():
    pres = "field F(7)\ngens x y\nrel x*y - y*x - y^2\n"
    cert = make_certificate(
        "normal-search",
        {"presentation": pres, "degree": 1, "include_inhomogeneous": False},
        "1 found",
        {"elements": ["y"]},
    )
    assert verify_certificate(cert)[0]
    bad = copy.deepcopy(cert)
    bad["evidence"]["elements"] = ["x"]
    assert not verify_certificate(bad)[0]


def test_verify_srns_and_tamper():
    pres = "field Q\ngens x y\nrel x*y - 2*y*x\n"
    cert = make_certificate(
        "srns",
        {"presentation": pres, "first": "x^2", "second": "y^2"},
        "pass",
        {"stage": None},
    )
    assert verify_certificate(cert)[0]
    bad = copy.deepcopy(cert)
    bad["verdict"] = "fail"
    assert not verify_certificate(bad)[0]


def test_verify_st_equivalence_from_golden_chain():
    data = load_golden("chains")
    chain = data["chains"][0]
    cert = make_certificate(
        "st-equivalence",
        {
            "presentation": f"field {chain['field']}\ngens {data['alphabet']}\n",
            "source": chain["source"],
            "target": chain["target"],
            "relations": [],
        },
        "equivalent",
        {"chain": chain["steps"]},
    )
    ok, msg = verify_certificate(cert)
    assert ok, (chain["name"], msg)
    bad = copy.deepcopy(cert)
    bad["inputs"]["target"] = ["x^2", "y^2", "x*y"]
    assert not verify_certificate(bad)[0]


def test_verify_st_obstruction():
    cert = make_certificate(
        "st-obstruction",
        {
            "presentation": "field Q\ngens x y\n",
            "source": ["x^2 - 1", "y^2 - 1"],
            "target": ["x^2 - y", "y^2 - 1"],
            "relations": [],
        },
        "inequivalent",
        {"mechanism": "degree-support profile"},
    )
    ok, msg = verify_certificate(cert)
    assert ok, msg
    bad = copy.deepcopy(cert)
    bad["evidence"]["mechanism"] = "quotient classification"
    assert not verify_certificate(bad)[0]


def test_verify_frobenius_and_classification():
    R = from_quotient(alg("field Q\ngens x y\nrel x*y - 2*y*x\nrel x^2\nrel y^2\n"))
    out = frobenius_check(R)
    assert out
    cert = make_certificate(
        "frobenius",
        {"algebra": R.to_dict()},
        "frobenius",
        {"functional": [str(s) for s in out.functional]},
    )
    ok, msg = verify_certificate(cert)
    assert ok, msg
    bad = copy.deepcopy(cert)
    bad["evidence"]["functional"] = ["0"] * R.dim
    assert not verify_certificate(bad)[0]

    ccert = make_certificate(
        "classification", {"algebra": R.to_dict()}, classify_frob4(R).label, {}
    )
    assert verify_certificate(ccert)[0]
    cbad = copy.deepcopy(ccert)
    cbad["verdict"] = "k^4"
    assert not verify_certificate(cbad)[0]


def test_verify_unknown_kind_and_replay_errors():
    assert not verify_certificate({"kind": "mystery"})[0]
    # missing evidence key surfaces as a failed replay, not a crash
    cert = make_certificate(
        "gb", {"presentation": "field Q\ngens x\nrel x^2\n"}, "complete", {}
    )
    ok, msg = verify_certificate(cert)
    assert not ok and "replay failed" in msg
