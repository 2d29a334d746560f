import pytest

from ncpencil.fields import Fp, Q, Qsqrt
from ncpencil.freealg import Alphabet
from ncpencil.parsing import ParseError, parse_element, parse_presentation, presentation_text

AB = Alphabet([("x", 1), ("y", 1)])


def test_basic_presentation():
    A = parse_presentation(
        "# skew plane\n"
        "field Q\n"
        "gens x y\n"
        "graded\n"
        "rel x*y - 2*y*x\n"
    )
    assert str(A.field) == "Q"
    assert A.alphabet.names == ("x", "y")
    assert A.alphabet.weights == (1, 1)
    assert len(A.relations) == 1
    assert A.graded


def test_weighted_generators_and_fields():
    A = parse_presentation("field F(7)\ngens x:1 y:2\nrel x^2 - y\n")
    assert A.field.characteristic == 7
    assert A.alphabet.weights == (1, 2)
    assert A.graded  # x^2 and y both have weight 2

    B = parse_presentation("field Q(sqrt(2))\ngens x y\nrel x*y - sqrt(2)*y*x\n")
    assert B.field == Qsqrt(2)


def test_graded_derived_not_declared():
    A = parse_presentation("field Q\ngens x y\nfiltered\nrel x^2 - 1\n")
    assert not A.graded
    B = parse_presentation("field Q\ngens x y\nfiltered\nrel x^2\n")
    assert B.graded  # mode line is a validation hint, gradedness comes from rels


def test_default_field():
    A = parse_presentation("gens x y\nrel x*y - y*x\n", default_field=Fp(5))
    assert A.field.characteristic == 5
    with pytest.raises(ParseError, match="rel before field line"):
        parse_presentation("gens x y\nrel x*y\n")
    with pytest.raises(ParseError, match="missing field line"):
        parse_presentation("gens x y\n")


def test_error_positions():
    cases = [
        ("field Q\nfield Q\ngens x\nrel x^2\n", "duplicate field line", 2),
        ("field Q\ngens x\ngens y\nrel x^2\n", "duplicate gens line", 3),
        ("field Q\nrel x^2\ngens x\n", "rel before gens", 2),
        ("field Q\ngens x\nfoo bar\n", "unknown directive", 3),
        ("field Q\ngens 2x\n", "bad generator name", 2),
        ("field Q\ngens sqrt\n", "reserved", 2),
        ("field Q\ngens x x\n", "repeated generator", 2),
        ("field Q\ngens x\nrel x - x\n", "zero relation", 3),
        ("field Q\ngens x:0\n", "bad weight", 2),
        ("field Q\ngens x y\ngraded\nrel x*y\nrel x^2 - 1\n", "inhomogeneous", 5),
    ]
    for text, frag, lineno in cases:
        with pytest.raises(ParseError, match=frag) as exc:
            parse_presentation(text)
        assert exc.value.line == lineno, text


def test_element_expressions():
    f = parse_element("(x + y)^2", AB, Q)
    assert str(f) == "x^2 + x*y + y*x + y^2"
    g = parse_element("x/2 - 1/2*x", AB, Q)
    assert g.is_zero()
    h = parse_element("-x*-y", AB, Q)
    assert str(h) == "x*y"
    s = parse_element("sqrt(-1)*x", AB, Qsqrt(-1))
    assert str(s) == "(sqrt(-1))*x"  # composite coefficients are parenthesized
    assert parse_element(str(s), AB, Qsqrt(-1)) == s


def test_element_errors():
    with pytest.raises(ParseError, match="empty expression"):
        parse_element("  ", AB, Q)
    with pytest.raises(ParseError, match="unknown generator"):
        parse_element("x + z", AB, Q)
    with pytest.raises(ParseError, match="division by zero"):
        parse_element("x/0", AB, Q)
    with pytest.raises(ParseError, match="division only by a constant"):
        parse_element("x/y", AB, Q)
    with pytest.raises(ParseError, match="exponent"):
        parse_element("x^y", AB, Q)
    with pytest.raises(ParseError, match="not available"):
        parse_element("sqrt(2)*x", AB, Q)
    with pytest.raises(ParseError, match="unexpected"):
        parse_element("x +", AB, Q)
    err = None
    try:
        parse_element("x * $", AB, Q, line=4)
    except ParseError as e:
        err = e
    assert err is not None and err.line == 4 and err.col == 5


def test_presentation_text_round_trip():
    texts = [
        "field Q\ngens x y\ngraded\nrel x*y - 2*y*x\nrel x^2\nrel y^2\n",
        "field F(7)\ngens x:1 y:2\ngraded\nrel x^2 - y\n",
        "field Q(sqrt(2))\ngens x y\nfiltered\nrel x^2 - sqrt(2)\n",
    ]
    for text in texts:
        A = parse_presentation(text)
        rendered = presentation_text(A)
        B = parse_presentation(rendered)
        assert B.field == A.field
        assert B.alphabet.names == A.alphabet.names
        assert B.alphabet.weights == A.alphabet.weights
        assert B.relations == A.relations
        assert presentation_text(B) == rendered


def test_element_str_round_trip():
    exprs = [
        "x*y - y*x",
        "x^2 + 2*x*y + 3*y*x + y^2",
        "1/2*x^2 - y + 3",
        "x*y*x - 1",
    ]
    for e in exprs:
        f = parse_element(e, AB, Q)
        assert parse_element(str(f), AB, Q) == f
