import random
from fractions import Fraction

import pytest

from ncpencil.fields import (
    Fp,
    NeedsFieldExtensionError,
    Q,
    Qsqrt,
    parse_field,
    parse_scalar,
    sqrt_in_field,
)


def test_descriptor_identity():
    assert parse_field("Q") is Q
    assert Qsqrt(2) == Qsqrt(2)
    assert Qsqrt(2) != Qsqrt(3)
    assert Fp(7) == Fp(7)
    assert Fp(7) != Fp(11)


def test_parse_field_round_trip():
    for text in ("Q", "Q(sqrt(2))", "Q(sqrt(-1))", "F(7)", "F(11)"):
        assert str(parse_field(text)) == text


def test_parse_field_rejects_garbage():
    for bad in ("R", "F(6)", "F(1)", "Q(sqrt(4))", "Q(sqrt(0))", ""):
        with pytest.raises(ValueError):
            parse_field(bad)


def test_characteristic():
    assert Q.characteristic == 0
    assert Qsqrt(5).characteristic == 0
    assert Fp(7).characteristic == 7


def test_rational_arithmetic():
    a = Q.from_fraction(Fraction(3, 4))
    b = Q.from_int(-2)
    assert str(a + b) == "-5/4"
    assert str(a * b) == "-3/2"
    assert (a / a) == Q.one()
    assert (a - a).is_zero()


def test_sqrt_extension_arithmetic():
    K = Qsqrt(2)
    r = K.sqrt_generator()
    assert (r * r) == K.from_int(2)
    # (1 + sqrt2)(1 - sqrt2) = -1
    one = K.one()
    assert (one + r) * (one - r) == -one
    inv = (one + r).inverse()
    assert (one + r) * inv == one


def test_gaussian_field():
    K = Qsqrt(-1)
    i = K.sqrt_generator()
    assert i * i == -K.one()
    assert (K.one() + i) * (K.one() - i) == K.from_int(2)


def test_prime_field_inverses():
    F = Fp(11)
    for v in range(1, 11):
        s = F.from_int(v)
        assert s * s.inverse() == F.one()
    with pytest.raises(ZeroDivisionError):
        F.zero().inverse()


def test_fraction_embedding_mod_p():
    F = Fp(7)
    # 1/2 = 4 mod 7
    assert F.from_fraction(Fraction(1, 2)) == F.from_int(4)
    with pytest.raises(ZeroDivisionError):
        Fp(7).from_fraction(Fraction(1, 7))


def test_sqrt_availability():
    K = Qsqrt(2)
    two = K.from_int(2)
    s = sqrt_in_field(two)
    assert s is not None and s * s == two
    assert sqrt_in_field(Q.from_int(4)) == Q.from_int(2)
    assert sqrt_in_field(Q.from_int(2)) is None
    # squares mod 7: 1,2,4
    F = Fp(7)
    assert sqrt_in_field(F.from_int(2)) is not None
    assert sqrt_in_field(F.from_int(3)) is None


def test_needs_field_extension_error_carries_witness():
    err = NeedsFieldExtensionError("cannot split", witness="t^2 - 2")
    assert err.witness == "t^2 - 2"
    assert "cannot split" in str(err)


def test_scalar_str_round_trip():
    cases = [
        (Q, ["0", "1", "-3/7", "5"]),
        (Qsqrt(2), ["1 + sqrt(2)", "-1/2*sqrt(2)", "3"]),
        (Qsqrt(-1), ["sqrt(-1)", "2 - 3*sqrt(-1)"]),
        (Fp(7), ["0", "3", "6"]),
    ]
    for field, texts in cases:
        for text in texts:
            s = parse_scalar(text, field)
            assert parse_scalar(str(s), field) == s


def test_field_axioms_random():
    rng = random.Random(0)
    fields = [Q, Qsqrt(2), Qsqrt(-1), Fp(7), Fp(11)]

    def rand(field):
        if field.kind == "Fp":
            return field.from_int(rng.randrange(field.param))
        a = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        if field.kind != "Qsqrt":
            return field.from_fraction(a)
        b = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        return field.from_pair(a, b)

    for field in fields:
        for _ in range(60):
            a, b, c = rand(field), rand(field), rand(field)
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a + b == b + a
            assert a * b == b * a
            if not a.is_zero():
                assert a * a.inverse() == field.one()
