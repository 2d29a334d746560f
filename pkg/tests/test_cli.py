import json

import pytest

from ncpencil.cli import main

K2 = "field Q\ngens x y\nrel x*y - 2*y*x\n"
K2_FULL = "field Q\ngens x y\nrel x*y - 2*y*x\nrel x^2\nrel y^2\n"
KJ7 = "field F(7)\ngens x y\nrel x*y - y*x - y^2\n"


@pytest.fixture
def pres(tmp_path):
    def write(text, name="alg.pres"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_text_and_json(pres, capsys):
    f = pres(K2)
    code, out, _ = run(capsys, "parse", f)
    assert code == 0
    assert "field Q" in out and "rel x*y - 2*y*x" in out

    code, out, _ = run(capsys, "parse", "--format", "json", f)
    assert code == 0
    data = json.loads(out)
    assert data["field"] == "Q" and data["graded"] is True


def test_parse_usage_errors(pres, capsys):
    code, _, err = run(capsys, "parse", "/nonexistent/path.pres")
    assert code == 2 and "error" in err
    f = pres("field Q\ngens x y\nrel x*y -\n")
    code, _, err = run(capsys, "parse", f)
    assert code == 2 and "line 3" in err


def test_field_flag_default(pres, capsys):
    f = pres("gens x y\nrel x*y - y*x\n")
    code, out, _ = run(capsys, "parse", "--field", "F(5)", f)
    assert code == 0 and "field F(5)" in out


def test_gb_and_hilbert(pres, capsys):
    f = pres(KJ7)
    code, out, _ = run(capsys, "gb", "--format", "json", f)
    assert code == 0
    cert = json.loads(out)
    assert cert["kind"] == "gb" and cert["evidence"]["complete"] is True

    code, out, _ = run(capsys, "hilbert", "--format", "json", f)
    assert code == 0
    cert = json.loads(out)
    assert cert["evidence"]["coefficients"][:4] == [1, 2, 3, 4]
    assert cert["evidence"]["rational"] == "1/(1 - 2*t + t^2)"


def test_gb_incomplete_is_inconclusive(pres, capsys):
    f = pres("field Q\ngens x y\nrel x*y*x - y^3\n")
    code, _, _ = run(capsys, "gb", "--degree-bound", "3", f)
    assert code == 3


def test_classify_rel(pres, capsys):
    f = pres(K2)
    code, out, _ = run(capsys, "classify-rel", f)
    assert code == 0
    assert "KLAMBDA" in out and "scale: 2" in out

    g = pres("field Q\ngens x y\nrel x^2\nrel y^2\n")
    code, _, err = run(capsys, "classify-rel", g)
    assert code == 2  # needs exactly one relation


def test_dual_and_clifford(pres, capsys):
    f = pres("field Q\ngens x y\nrel x*y + y*x\n")
    code, out, _ = run(capsys, "dual", f)
    assert code == 0 and "rel" in out

    dualfile = pres(out, "dual.pres")
    three = pres(
        "field Q\ngens x y z\n"
        "rel x*y - y*x\nrel x*z - z*x\nrel y*z - z*y\n"
        "rel x^2 - z^2\nrel y^2 - z^2\n",
        "b.pres",
    )
    code, out, _ = run(capsys, "dual", three)
    assert code == 0
    dual3 = pres(out, "dual3.pres")
    code, out, _ = run(capsys, "clifford", "--format", "json", dual3)
    assert code == 0
    data = json.loads(out)
    assert len(data["labels"]) == 4


def test_normal_check_exit_codes(pres, capsys):
    f = pres("field Q\ngens x y\nrel x*y + y*x\nrel x^2\n")
    code, out, _ = run(capsys, "normal-check", f, "-e", "y^2")
    assert code == 0 and "normal" in out

    code, out, _ = run(capsys, "normal-check", f, "-e", "y^2 + y")
    assert code == 1

    code, _, err = run(capsys, "normal-check", f, "-e", "x^2")  # zero in quotient
    assert code == 2

    code, out, _ = run(capsys, "nu", f, "-e", "y^2")
    assert code == 0 and "x -> " in out


def test_normal_check_json_certificate_replays(pres, capsys, tmp_path):
    f = pres("field Q\ngens x y\nrel x*y + y*x\nrel x^2\n")
    code, out, _ = run(capsys, "normal-check", "--format", "json", f, "-e", "y^2")
    assert code == 0
    certfile = tmp_path / "cert.json"
    certfile.write_text(out)
    code, out2, _ = run(capsys, "verify-cert", str(certfile))
    assert code == 0

    cert = json.loads(out)
    cert["verdict"] = "not normal"
    certfile.write_text(json.dumps(cert))
    code, _, _ = run(capsys, "verify-cert", str(certfile))
    assert code == 1


def test_normal_search(pres, capsys):
    f = pres(KJ7)
    code, out, _ = run(capsys, "normal-search", "--format", "json", f, "-d", "1")
    assert code == 0
    cert = json.loads(out)
    assert cert["evidence"]["elements"] == ["y"]

    q = pres(K2)
    code, _, _ = run(capsys, "normal-search", q, "-d", "1")
    assert code == 2  # rational base field is not sweepable


def test_srns_check(pres, capsys):
    f = pres(K2)
    code, out, _ = run(capsys, "srns-check", f, "-f", "x^2", "-g", "y^2")
    assert code == 0 and "pass" in out
    g = pres("field Q\ngens x y\nrel x*y + y*x\n", "anti.pres")
    code, out, _ = run(capsys, "srns-check", g, "-f", "x^2", "-g", "y^2 + y")
    assert code == 1 and "g-normality" in out


def test_st_verify_golden_chains(capsys, tmp_path):
    from ncpencil.tables import load_golden

    chains = load_golden("chains")
    f = tmp_path / "chains.json"
    f.write_text(json.dumps(chains))
    code, out, _ = run(capsys, "st-verify", str(f))
    assert code == 0
    assert out.count("[ok ]") == len(chains["chains"])


def test_homogenize_dehomogenize_pipeline(pres, capsys):
    f = pres("field Q\ngens x y\nrel x*y - y*x\nrel x^2 - 1\nrel y^2 - 1\n")
    code, out, _ = run(capsys, "homogenize", f)
    assert code == 0 and "z" in out
    homog = pres(out, "homog.pres")
    code, out, err = run(capsys, "dehomogenize", homog)
    assert code == 0
    assert "setting" in err  # narration goes to stderr
    assert "rel" in out


def test_findim_frobenius_classify_pipeline(pres, capsys, tmp_path):
    f = pres(K2_FULL)
    code, out, _ = run(capsys, "findim", "--format", "json", f)
    assert code == 0
    sc = tmp_path / "alg.json"
    sc.write_text(out)

    code, out, _ = run(capsys, "frobenius", str(sc))
    assert code == 0 and "frobenius: yes" in out

    code, out, _ = run(capsys, "classify4", str(sc))
    assert code == 0 and "lambda-type(5/2)" in out

    # infinite-dimensional input is a refusal
    inf = pres("field Q\ngens x y\nrel x^2\n", "inf.pres")
    code, _, _ = run(capsys, "findim", inf)
    assert code == 1


def test_classify4_needs_extension(pres, capsys):
    f = pres("field Q\ngens x y\nrel x*y + y*x\nrel x^2 + 1\nrel y^2 + 1\n")
    code, _, err = run(capsys, "classify4", f)
    assert code == 3 and "does not split over this field" in err


def test_frobenius_refusal(pres, capsys):
    f = pres("field Q\ngens x y\nrel x^2\nrel y*x\nrel y^2\n")
    code, out, _ = run(capsys, "frobenius", f)
    assert code == 1


def test_iso_verify(pres, capsys, tmp_path):
    from ncpencil.fields import Q
    from ncpencil.findim import quiver_algebra

    quiv = quiver_algebra(
        Q, 2, (("x", 1, 2), ("y", 2, 1)), relations=(("x", "y"), ("y", "x"))
    )
    src = tmp_path / "quiv.json"
    src.write_text(json.dumps(quiv.to_dict()))
    tgt = pres("field Q\ngens x y\nrel x*y + y*x\nrel x^2\nrel y^2 - 1\n")
    images = tmp_path / "images.json"
    images.write_text(
        json.dumps(
            {
                "e1": ["1/2", "0", "1/2", "0"],
                "x": ["0", "1", "0", "1"],
                "y": ["0", "1", "0", "-1"],
            }
        )
    )
    code, out, _ = run(capsys, "iso-verify", str(src), tgt, "--images", str(images))
    assert code == 0

    images.write_text(json.dumps({"e1": ["1/2", "0", "1/2", "0"]}))
    code, _, _ = run(capsys, "iso-verify", str(src), tgt, "--images", str(images))
    assert code == 1


def test_reproduce_table(capsys):
    code, out, _ = run(capsys, "reproduce", "--table", "1")
    assert code == 0
    assert out.startswith("table 1: ok")


def test_json_output_is_deterministic(pres, capsys):
    f = pres(KJ7)
    _, out1, _ = run(capsys, "hilbert", "--format", "json", f)
    _, out2, _ = run(capsys, "hilbert", "--format", "json", f)
    assert out1 == out2


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2
    capsys.readouterr()
