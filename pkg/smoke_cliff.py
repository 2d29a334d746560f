"""Scratch checks for the localized-dual construction (delete before final)."""

from fractions import Fraction

from ncpencil.fields import Q
from ncpencil.freealg import Alphabet, FreePoly
from ncpencil.algebra import (
    PresentedAlgebra,
    clifford_C,
    dehomogenized_algebra,
    quadratic_dual,
)
from ncpencil.findim import Frob4Label, classify_frob4, from_quotient

abz = Alphabet([("x", 1), ("y", 1), ("z", 1)])
x, y, z = 0, 1, 2


def P3(terms):
    out = {}
    for w, c in terms.items():
        s = Q.from_fraction(Fraction(c))
        if not s.is_zero():
            out[w] = s
    return FreePoly(abz, Q, out)


def comm3():
    return [
        P3({(x, y): 1, (y, x): -1}),
        P3({(x, z): 1, (z, x): -1}),
        P3({(y, z): 1, (z, y): -1}),
    ]


cases = [
    ("k[x,y]/(x^2,y^2)",
     [P3({(x, x): 1}), P3({(y, y): 1})]),
    ("k^4",
     [P3({(x, x): 1, (z, z): -1}), P3({(y, y): 1, (z, z): -1})]),
    ("k[x]/(x^4)",
     [P3({(x, x): 1}), P3({(y, y): 1, (x, z): -1})]),
]

zletter = FreePoly.letter(abz, Q, "z")

for expect, quadrics in cases:
    B = PresentedAlgebra(abz, Q, comm3() + quadrics)
    Bsh = quadratic_dual(B)
    C = clifford_C(Bsh, check_label=Frob4Label(expect))
    labC = classify_frob4(C)
    D = from_quotient(dehomogenized_algebra(B, zletter))
    labD = classify_frob4(D)
    assert labC == labD == Frob4Label(expect), (expect, labC.label, labD.label)
    print(f"  ok: localized dual and dehomogenization both give {labC.label}")

print("\nALL LOCALIZED-DUAL SMOKE CHECKS PASSED")
