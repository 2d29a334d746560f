import random
from fractions import Fraction

import pytest

from ncpencil.fields import Fp, Q
from ncpencil.freealg import FreePoly, GeneratorMap, substitute
from ncpencil.normality import (
    InconclusiveError,
    central_check,
    compatible_lower_terms,
    derive_st_step,
    exhaustive_normal_search,
    normal_check,
    regular_check_filtered,
    regular_check_homog,
    srns_check,
    st_obstruction,
    st_transform,
    st_witness_verify,
)
from ncpencil.parsing import parse_element, parse_presentation


def alg(text, bound=12):
    return parse_presentation(text, bound=bound)


def el(A, text):
    return parse_element(text, A.alphabet, A.field)


SM1 = alg("field Q\ngens x y\nrel x*y + y*x\n")
A1 = SM1.quotient([el(SM1, "x^2")])
K2 = alg("field Q\ngens x y\nrel x*y - 2*y*x\n")


def test_cofactor_map_family():
    # gamma*yx + y^2 normal in the skew quotient; the cofactor of y picks
    # up 2*gamma*x
    for gamma in (0, 1, 3, -2):
        f = el(A1, f"{gamma}*y*x + y^2")
        cert = normal_check(A1, f)
        assert cert.normal, (gamma, cert.reason)
        assert cert.nu.image_of("x") == el(A1, "x")
        assert cert.nu.image_of("y") == el(A1, f"{2 * gamma}*x + y")
        assert cert.verify()
        assert central_check(A1, f) == (gamma == 0)


def test_scale_quotient_cofactors():
    cert = normal_check(K2, el(K2, "x^2"))
    assert cert.normal
    assert cert.nu.image_of("x") == el(K2, "x")
    assert cert.nu.image_of("y") == el(K2, "1/4*y")


def test_cofactor_maps_pairwise_distinct():
    maps = {}
    for text in ("x", "y", "x^2", "y^2", "x*y"):
        cert = normal_check(K2, el(K2, text))
        assert cert.normal, text
        maps[text] = cert.nu
    vals = list(maps.values())
    assert GeneratorMap.identity(K2.alphabet, K2.field) not in vals
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            assert vals[i] != vals[j]


def test_refusal_with_witness_generator():
    cert = normal_check(A1, el(A1, "y^2 + y"))
    assert not cert.normal
    assert cert.witness_generator == "x"
    assert "regular normal" in cert.precondition


def test_certificate_verify_rejects_tampering():
    cert = normal_check(A1, el(A1, "y^2"))
    assert cert.normal and cert.verify()
    bad = GeneratorMap(
        A1.alphabet, A1.field, [el(A1, "x + y"), el(A1, "y")]
    )
    cert.nu = bad
    assert not cert.verify()


def test_random_residues_vanish():
    rng = random.Random(0)
    f = el(A1, "3*y*x + y^2")
    cert = normal_check(A1, f)
    assert cert.normal
    words = [()] + [(i,) for i in range(2)] + [
        (i, j) for i in range(2) for j in range(2)
    ]
    for _ in range(100):
        g = FreePoly(
            A1.alphabet,
            Q,
            {w: Q.from_int(rng.randint(-4, 4)) for w in rng.sample(words, 3)},
        )
        assert A1.reduce(g * f - f * substitute(g, cert.nu)).is_zero()


def test_compatible_lower_terms():
    f0 = el(A1, "y^2")
    c0 = normal_check(A1, f0)
    assert compatible_lower_terms(A1, f0, c0.nu, 1) == []
    consts = compatible_lower_terms(A1, f0, c0.nu, 0)
    assert len(consts) == 1 and consts[0] == el(A1, "1")
    fg = el(A1, "y^2 + 2*y*x")
    cg = normal_check(A1, fg)
    assert compatible_lower_terms(A1, fg, cg.nu, 1) == []
    assert compatible_lower_terms(A1, fg, cg.nu, 0) == []


def test_regular_checks():
    ok, cert = regular_check_homog(A1, el(A1, "y^2"))
    assert ok and cert["exact"]
    ok, _ = regular_check_homog(K2, el(K2, "x^2"))
    assert ok
    ok, _ = regular_check_filtered(SM1, el(SM1, "x^2"), el(SM1, "y^2 + 1"))
    assert ok
    ok, _ = regular_check_filtered(SM1, el(SM1, "x^2 + 1"), el(SM1, "y^2"))
    assert ok


def test_srns_stages():
    out = srns_check(K2, el(K2, "x^2"), el(K2, "y^2"))
    assert out.ok, (out.stage, out.evidence.get(out.stage))
    assert out.evidence["dimension"]["counts"][:3] == [1, 2, 1]

    out = srns_check(SM1, el(SM1, "x^2"), el(SM1, "y^2 + y"))
    assert not out.ok and out.stage == "g-normality"
    assert "top-g" in out.evidence  # earlier stages were reached and passed

    out = srns_check(SM1, el(SM1, "y^2 + y*x"), el(SM1, "x^2"))
    assert not out.ok
    out = srns_check(SM1, el(SM1, "x^2"), el(SM1, "y^2 + y*x"))
    assert out.ok


def test_srns_rejects_non_qpa_ambient():
    A = alg("field Q\ngens x y\nrel x^2\n")
    out = srns_check(A, el(A, "y^2"), el(A, "x*y"))
    assert not out.ok and out.stage == "ambient"


def _gm(A, texts):
    return GeneratorMap(A.alphabet, A.field, [el(A, t) for t in texts])


def _alpha(A, rows):
    return [[A.field.from_int(c) for c in row] for row in rows]


def test_st_transform_swap():
    swap = _gm(SM1, ["y", "x"])
    F6 = [el(SM1, t) for t in ("x^2", "y^2 + 1", "x*y + y*x")]
    F7 = [el(SM1, t) for t in ("x^2 + 1", "y^2", "x*y + y*x")]
    alpha = _alpha(SM1, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    got, _ = st_transform(F6, [], swap, alpha)
    assert got == F7
    ok, msg = st_witness_verify(F6, F7, [], [(swap, alpha, None)])
    assert ok, msg
    ok, _ = st_witness_verify(
        F6, F7, [], [(GeneratorMap.identity(SM1.alphabet, Q), alpha, None)]
    )
    assert not ok


def test_st_transform_validates_shapes():
    F = [el(SM1, "x^2"), el(SM1, "y^2")]
    singular = _gm(SM1, ["x + y", "x + y"])
    with pytest.raises(ValueError):
        st_transform(F, [], singular, _alpha(SM1, [[1, 0], [0, 1]]))
    with pytest.raises(ValueError):
        st_transform(
            F, [], _gm(SM1, ["x", "y"]), _alpha(SM1, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        )
    with pytest.raises(ValueError):
        st_transform(F, [], _gm(SM1, ["x", "y"]), _alpha(SM1, [[0, 0], [0, 0]]))


def test_derive_st_step_recovers_mixing():
    swap = _gm(SM1, ["y", "x"])
    F6 = [el(SM1, t) for t in ("x^2", "y^2 + 1", "x*y + y*x")]
    F7 = [el(SM1, t) for t in ("x^2 + 1", "y^2", "x*y + y*x")]
    step = derive_st_step(F6, [], swap, F7)
    assert step is not None
    alpha, gamma = step
    got, _ = st_transform(F6, [], swap, alpha, gamma)
    assert got == F7


def test_st_obstruction_degree_support():
    Fa = [el(SM1, t) for t in ("x^2 - 1", "y^2 - 1", "x*y - y*x")]
    Fb = [el(SM1, t) for t in ("x^2 - y", "y^2 - 1", "x*y - y*x")]
    proof = st_obstruction(Fa, Fb, [])
    assert proof is not None
    assert proof["mechanism"] == "degree-support profile"
    assert st_obstruction(Fa, Fa, []) is None


def test_exhaustive_search_f7():
    F7 = Fp(7)
    kj = alg("field F(7)\ngens x y\nrel x*y - y*x - y^2\n")
    assert [str(p) for p in exhaustive_normal_search(kj, 1)] == ["y"]
    got2 = exhaustive_normal_search(kj, 2)
    assert [str(p) for p in got2] == ["y^2"]

    k3 = alg("field F(7)\ngens x y\nrel x*y - 3*y*x\n")
    assert sorted(str(p) for p in exhaustive_normal_search(k3, 2)) == [
        "x^2",
        "y*x",
        "y^2",
    ]

    km1 = alg("field F(7)\ngens x y\nrel x*y + y*x\n")
    got = {str(p) for p in exhaustive_normal_search(km1, 2)}
    want = {"y*x"}
    for b in range(7):
        want.add(str(el(km1, f"x^2 + {b}*y^2")))
    want.add("y^2")
    assert got == want

    with_low = exhaustive_normal_search(km1, 2, include_inhomogeneous=True)
    # the x^2 + b*y^2 family extends by any constant; y*x does not extend
    assert len(with_low) == 8 * 7 + 1
    assert F7.characteristic == 7  # guard: the search ran over F_7


def test_search_requires_prime_field():
    with pytest.raises(ValueError):
        exhaustive_normal_search(SM1, 1)


def test_inconclusive_is_not_refusal():
    dead = alg("field Q\ngens x y\nrel x^2\nrel x*y\nrel y*x\n")
    with pytest.raises(InconclusiveError):
        normal_check(dead, el(dead, "x"))


def test_normal_check_rejects_units_and_zero():
    with pytest.raises(ValueError):
        normal_check(A1, el(A1, "1"))
    with pytest.raises(ValueError):
        normal_check(A1, el(A1, "x^2"))  # zero in the quotient
