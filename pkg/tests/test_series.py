from fractions import Fraction

import pytest

from ncpencil.series import Poly, RationalFunction, parse_ratfun


def test_poly_arithmetic():
    p = Poly([1, 1])  # 1 + t
    q = Poly([1, -1])  # 1 - t
    assert (p * q).coeffs == (1, 0, -1)
    assert (p + q).coeffs == (2,)
    assert (p - p).coeffs == ()


def test_rational_reduction():
    # (1 - t^2)/(1 - t) reduces to 1 + t
    r = RationalFunction(Poly([1, 0, -1]), Poly([1, -1]))
    assert r == RationalFunction.from_poly(Poly([1, 1]))
    assert str(r) == "1 + t"


def test_equality_cross_multiplied():
    a = parse_ratfun("(1+t)/(1-t-t^2)")
    b = parse_ratfun("(1+t)*(1+t)/((1-t-t^2)*(1+t))")
    assert a == b
    assert a != parse_ratfun("1/(1-t-t^2)")


def test_expansion_fibonacci():
    # 1/(1-t-t^2) expands to the Fibonacci numbers
    r = parse_ratfun("1/(1-t-t^2)")
    assert r.expansion(8) == [1, 1, 2, 3, 5, 8, 13, 21, 34]


def test_expansion_geometric_square():
    r = parse_ratfun("1/(1-t)^2")
    assert r.expansion(5) == [1, 2, 3, 4, 5, 6]


def test_denominator_normalized_to_constant_one():
    r = parse_ratfun("(2+2*t)/(2-2*t)")
    assert r.den[0] == 1
    assert r == parse_ratfun("(1+t)/(1-t)")


def test_substitute_neg_t():
    r = parse_ratfun("(1+t)/(1-t-t^2)")
    flipped = r.substitute_neg_t()
    assert flipped == parse_ratfun("(1-t)/(1+t-t^2)")
    # koszul duality identity shape: H(t) * Hdual(-t) = 1
    h = parse_ratfun("1/(1-t)^2")
    hdual = parse_ratfun("(1+t)^2")
    assert h * hdual.substitute_neg_t() == RationalFunction.const(1)


def test_arithmetic_with_fractions():
    r = parse_ratfun("1/(1-t)")
    half = RationalFunction.const(Fraction(1, 2))
    assert (r * half).expansion(3) == [
        Fraction(1, 2),
        Fraction(1, 2),
        Fraction(1, 2),
        Fraction(1, 2),
    ]


def test_parse_ratfun_forms():
    for text in (
        "1",
        "1/(1-t)",
        "(1+t)^2",
        "(1+t)/(1-t-t^2)",
        "(1-t^2)^2*(1-t)/(1-t)^3",
        "1 - 2*t + t^2",
    ):
        r = parse_ratfun(text)
        assert parse_ratfun(str(r)) == r


def test_parse_ratfun_rejects_garbage():
    for bad in ("", "t/", "1/(", "q+1", "1//2"):
        with pytest.raises(ValueError):
            parse_ratfun(bad)


def test_expansion_needs_unit_constant():
    r = RationalFunction(Poly([1]), Poly([0, 1]))  # 1/t
    with pytest.raises(ValueError):
        r.expansion(3)
