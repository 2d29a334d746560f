import random

import pytest

from ncpencil.fields import Fp, Q
from ncpencil.freealg import (
    Alphabet,
    FreePoly,
    GeneratorMap,
    dehomogenize,
    homogenize,
    substitute,
)

AB = Alphabet([("x", 1), ("y", 1)])
X, Y = (0,), (1,)
XX, XY, YX, YY = (0, 0), (0, 1), (1, 0), (1, 1)


def P(terms, field=Q):
    return FreePoly(AB, field, {w: field.from_int(c) for w, c in terms.items() if c})


def _m(rows, field=Q):
    return [[field.from_int(c) for c in row] for row in rows]


def test_alphabet_basics():
    assert AB.names == ("x", "y")
    assert AB.weights == (1, 1)
    assert AB.index("y") == 1
    assert AB.weight((0, 1, 1)) == 3
    with pytest.raises(ValueError):
        Alphabet([("x", 1), ("x", 2)])


def test_word_key_deglex_first_letter_largest():
    # within a weight, words ordered with the first-listed letter largest
    words = [(), X, Y, XX, XY, YX, YY]
    ranked = sorted(words, key=AB.word_key)
    assert ranked == [(), Y, X, YY, YX, XY, XX]


def test_degree_and_homogeneity():
    f = P({XY: 1, (): 2})
    assert f.degree() == 2
    assert not f.is_homogeneous()
    assert P({XY: 1, YX: -1}).is_homogeneous()
    with pytest.raises(ValueError):
        P({}).degree()


def test_arithmetic_and_coefficient():
    f = P({XY: 2, X: 1})
    g = P({XY: -2, Y: 3})
    s = f + g
    assert s.coefficient(XY).is_zero()
    assert s.coefficient(X) == Q.one()
    prod = P({X: 1}) * P({Y: 1})
    assert prod == P({XY: 1})
    assert (f - f).is_zero()
    assert (P({X: 1}) ** 3) == P({(0, 0, 0): 1})


def test_leading_and_monic():
    f = P({XY: 3, YX: 1})
    w, c = f.leading()
    assert w == XY and c == Q.from_int(3)
    assert f.monic().coefficient(XY) == Q.one()


def test_components():
    f = P({XY: 1, X: 2, (): -1})
    assert f.homogeneous_component(1) == P({X: 2})
    assert f.top_part() == P({XY: 1})
    assert f.constant_part() == Q.from_int(-1)
    assert sorted(f.components()) == [0, 1, 2]


def test_str_ordering_is_stable():
    f = P({YX: -1, XY: 1})
    assert str(f) == "x*y - y*x"
    assert str(P({(): 1, YY: 1})) == "y^2 + 1"


def test_generator_map_compose_inverse():
    swap = GeneratorMap.from_matrix(AB, Q, _m([[0, 1], [1, 0]]))
    assert swap.is_graded()
    assert swap.is_invertible()
    assert swap.compose(swap) == GeneratorMap.identity(AB, Q)
    shear = GeneratorMap.from_matrix(AB, Q, _m([[1, 1], [0, 1]]))
    inv = shear.inverse()
    assert shear.compose(inv) == GeneratorMap.identity(AB, Q)
    f = P({XY: 1, YX: 1})
    assert substitute(substitute(f, shear), inv) == f


def test_generator_map_singular_detected():
    squash = GeneratorMap.from_matrix(AB, Q, _m([[1, 1], [1, 1]]))
    assert not squash.is_invertible()
    with pytest.raises(ValueError):
        squash.inverse()


def test_substitute_is_ring_map():
    phi = GeneratorMap(
        AB, Q, [P({X: 1, Y: 2}), P({Y: 1, (): 1})]
    )  # x -> x+2y, y -> y+1 (not graded)
    assert not phi.is_graded()
    f, g = P({XY: 1}), P({YX: 1, X: 3})
    assert substitute(f * g, phi) == substitute(f, phi) * substitute(g, phi)
    assert substitute(f + g, phi) == substitute(f, phi) + substitute(g, phi)


def test_homogenize_dehomogenize_round_trip():
    rng = random.Random(1)
    words = [(), X, Y, XX, XY, YX, YY, (0, 1, 0), (1, 1, 0)]
    for _ in range(100):
        terms = {w: rng.randint(-3, 3) for w in rng.sample(words, 4)}
        f = P(terms)
        if f.is_zero():
            continue
        lifted = homogenize(f, "z")
        assert lifted.is_homogeneous()
        assert dehomogenize(lifted, "z") == f


def test_homogenize_over_prime_field():
    F = Fp(7)
    f = P({YY: 1, (): 3}, field=F)
    lifted = homogenize(f, "z")
    assert lifted.is_homogeneous() and lifted.degree() == 2
    assert dehomogenize(lifted, "z") == f
